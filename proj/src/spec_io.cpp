#include "pimsner/spec_io.hpp"

#include <charconv>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#include "pimsner/fock.hpp"
#include "pimsner/sweeps.hpp"

namespace pimsner {

namespace {

// ---------------------------------------------------------------------------
// parsing

[[noreturn]] void fail(int line, const std::string& message, const char* code) {
    std::ostringstream msg;
    msg << "line " << line << ": " << message << " [" << code << "]";
    throw input_error(msg.str());
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

long parse_int(const std::string& token, int line) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        fail(line, "expected an integer, got '" + token + "'", "malformed-number");
    return value;
}

double parse_real(const std::string& token, int line) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size())
            throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + token + "'", "malformed-number");
    }
}

// ---------------------------------------------------------------------------
// formatting

std::string fmt_sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

std::string fmt_bool(bool b) {
    return b ? "true" : "false";
}

std::string fmt_support(const Ideal& ideal) {
    std::string out = "{";
    bool first = true;
    for (int i : ideal.support()) {
        if (!first)
            out += ",";
        out += std::to_string(i + 1);
        first = false;
    }
    return out + "}";
}

std::string fmt_dims(const BlockAlgebra& algebra) {
    if (algebra.is_zero())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < algebra.block_dims().size(); ++i) {
        if (i)
            out += " ";
        out += std::to_string(algebra.block_dims()[i]);
    }
    return out;
}

std::string fmt_mult(const IntMatrix& m) {
    if (m.rows() == 0)
        return "-";
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i)
            out += " ; ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j)
                out += " ";
            out += std::to_string(m(i, j));
        }
    }
    return out;
}

class Report {
public:
    explicit Report(const std::string& title) {
        human_ << title << "\n";
    }

    void line(const std::string& key, const std::string& value) {
        machine_ << key << " = " << value << "\n";
        human_ << "  " << std::left << std::setw(34) << key << " : " << value << "\n";
    }

    void note(const std::string& text) {
        human_ << "  " << text << "\n";
    }

    std::string human() const { return human_.str(); }
    std::string machine() const { return machine_.str(); }

private:
    std::ostringstream human_;
    std::ostringstream machine_;
};

void prologue(Report& report, std::string_view command, const SystemSpec& spec,
              const DynSystem& system) {
    report.line("command", std::string(command));
    report.line("name", spec.name);
    report.line("blocks", fmt_dims(system.algebra));
    report.line("mult", fmt_mult(system.endo.mult()));
    report.line("ideal", fmt_support(system.ideal));
    report.line("tol", fmt_sci(spec.tol));
    report.line("levels", std::to_string(spec.levels));
    report.line("amp", std::to_string(spec.amp));
    report.line("seed", std::to_string(spec.seed));
}

// ---------------------------------------------------------------------------
// pipelines

void do_reduce(Report& report, const DynSystem& system) {
    const auto result = reduce_system(system);
    report.line("reduce.chain.length", std::to_string(result.chain.size()));
    for (std::size_t n = 0; n < result.chain.size(); ++n)
        report.line("reduce.chain." + std::to_string(n), fmt_support(result.chain[n]));
    report.line("reduce.j_infinity", fmt_support(result.j_infinity));
    report.line("reduce.stabilized_at", std::to_string(result.stabilized_at));
    report.line("reduce.degenerate", fmt_bool(result.degenerate));
    report.line("reduce.reduced_blocks", fmt_dims(result.reduced_algebra));
    report.line("reduce.reduced_mult", fmt_mult(result.reduced_endo.mult()));
    report.line("reduce.reduced_ideal", fmt_support(result.reduced_ideal));
    report.line("reduce.certificates", "ok");
}

void do_canonical(Report& report, const DynSystem& system) {
    const auto ext = canonical_system(system);
    report.line("canonical.degenerate", fmt_bool(ext.degenerate));
    report.line("canonical.ext_blocks", fmt_dims(ext.ext_algebra));
    report.line("canonical.ext_mult", fmt_mult(ext.ext_endo.mult()));
    report.line("canonical.kernel", fmt_support(ext.ext_endo.kernel()));
    report.line("canonical.second_summand", fmt_support(ext.second_summand()));
    if (ext.degenerate) {
        report.line("canonical.embed_injective", "n/a");
        report.line("canonical.intertwine_residual", "n/a");
        return;
    }

    const auto& source = ext.system.algebra;
    double min_norm = std::numeric_limits<double>::infinity();
    for (const auto& u : matrix_units(source))
        min_norm = std::min(min_norm, ext.embed(AlgebraElement::matrix_unit(source, u)).norm());
    std::mt19937_64 rng(0x63616e6fULL);
    double residual = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        auto a = AlgebraElement::random(source, rng);
        auto lhs = ext.ext_endo.apply(ext.embed(a));
        auto rhs = ext.embed(ext.system.endo.apply(a));
        residual = std::max(residual, (lhs - rhs).norm() / std::max(1.0, a.norm()));
    }
    report.line("canonical.embed_injective", fmt_bool(min_norm > 0.5));
    report.line("canonical.intertwine_residual", fmt_sci(residual));
}

void do_classify(Report& report, const DynSystem& system) {
    const auto c = classify(system);
    report.line("classify.suggested_ideal",
                fmt_support(suggested_ideal(shape_from_dynamics(system.endo))));
    report.line("classify.is_automorphism", fmt_bool(c.is_automorphism));
    report.line("classify.is_monomorphism", fmt_bool(c.is_monomorphism));
    report.line("classify.kernel_unital", fmt_bool(c.kernel_unital));
    report.line("classify.range_hereditary", fmt_bool(c.range_hereditary));
    report.line("classify.is_commutative", fmt_bool(c.is_commutative));
    report.line("classify.j_is_ortho_kernel", fmt_bool(c.j_is_ortho_kernel));
    report.line("classify.j_is_zero", fmt_bool(c.j_is_zero));
    report.line("classify.j_is_full", fmt_bool(c.j_is_full));
    std::string rows;
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        if (i)
            rows += " ";
        rows += std::to_string(c.rows[i]);
    }
    report.line("classify.rows", rows.empty() ? "-" : rows);
}

bool do_verify(Report& report, const SystemSpec& spec, const DynSystem& system) {
    bool ok = true;
    const double tol = spec.tol;

    const auto rep = fock_rep(system.endo, spec.levels);
    std::string level_dims;
    for (std::size_t n = 0; n < rep.levels.size(); ++n) {
        if (n)
            level_dims += " ";
        level_dims += std::to_string(rep.levels[n].dim);
    }
    report.line("verify.fock.dim", std::to_string(rep.total_dim));
    report.line("verify.fock.level_dims", level_dims);

    const auto pair = fock_pair(rep);
    const auto toeplitz = toeplitz_check(pair);
    report.line("verify.toeplitz.rep1", fmt_sci(toeplitz.rep1));
    report.line("verify.toeplitz.rep2", fmt_sci(toeplitz.rep2));
    report.line("verify.toeplitz.rep3", fmt_sci(toeplitz.rep3));
    // residuals are evaluated below the truncation level, where the
    // truncated operators agree with the untruncated ones
    report.line("verify.toeplitz.compressed", fmt_bool(toeplitz.compressed));
    ok = ok && toeplitz.pass(tol);

    std::mt19937_64 rng(spec.seed);
    double isometry = 0.0;
    for (const auto& x : rep.bimodule.basis)
        isometry = std::max(isometry, std::abs(operator_norm(pair.psi(x)) - x.norm()));
    for (int trial = 0; trial < 5 && rep.bimodule.dim() > 0; ++trial) {
        auto x = rep.bimodule.random_vector(rng);
        isometry = std::max(isometry, std::abs(operator_norm(pair.psi(x)) - x.norm()));
    }
    report.line("verify.isometry.max_deviation", fmt_sci(isometry));
    ok = ok && isometry <= 1e-8;

    // annihilation: T(x)* on level-1 vectors x1 ⊗ ξ gives ρ(⟨x,x1⟩)ξ
    double annihilation = 0.0;
    if (spec.levels >= 1 && rep.levels[1].dim > 0) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int d = system.algebra.total_dim();
        for (int s = 0; s < rep.bimodule.dim(); ++s)
            for (int s1 = 0; s1 < rep.bimodule.dim(); ++s1) {
                Vector xi(d);
                for (int i = 0; i < d; ++i)
                    xi(i) = Complex(gauss(rng), gauss(rng));
                const Vector lifted =
                    rep.embed(1, rep.levels[1].creation[static_cast<std::size_t>(s1)] * xi);
                const Vector lowered = (pair.psi_basis[static_cast<std::size_t>(s)].adjoint() * lifted)
                                           .head(d);
                const auto inner = rep.bimodule.inner(rep.bimodule.basis[static_cast<std::size_t>(s)],
                                                      rep.bimodule.basis[static_cast<std::size_t>(s1)]);
                annihilation = std::max(annihilation,
                                        (lowered - inner.identity_rep() * xi).norm());
            }
    }
    report.line("verify.annihilation.residual", fmt_sci(annihilation));
    ok = ok && annihilation <= tol;

    const double coiso_zero = coisometric_check(pair, Ideal::zero(system.algebra));
    const double coiso_j = coisometric_check(pair, system.ideal);
    report.line("verify.coisometric.zero_ideal", fmt_sci(coiso_zero));
    report.line("verify.coisometric.j_residual", fmt_sci(coiso_j));
    if (!system.ideal.is_zero())
        report.note("(the Fock pair is coisometric only on the zero ideal; a large"
                    " J-residual is expected and not a failure)");
    ok = ok && coiso_zero <= tol;

    const auto cov = covariant_from_toeplitz(pair, 1e-6);
    const auto back = toeplitz_from_covariant(cov, 1e-6);
    double roundtrip_psi = 0.0;
    for (std::size_t s = 0; s < pair.psi_basis.size(); ++s)
        roundtrip_psi = std::max(roundtrip_psi,
                                 operator_norm(back.psi_basis[s] - pair.psi_basis[s]));
    const auto cov_again = covariant_from_toeplitz(back, 1e-6);
    const double roundtrip_u = operator_norm(cov_again.u - cov.u);
    report.line("verify.roundtrip.psi", fmt_sci(roundtrip_psi));
    report.line("verify.roundtrip.u", fmt_sci(roundtrip_u));
    ok = ok && roundtrip_psi <= tol && roundtrip_u <= tol;

    const double defect = partial_isometry_defect(cov.u);
    report.line("verify.partial_isometry.defect", fmt_sci(defect));
    ok = ok && defect <= tol;

    const auto covariance = covariance_check(cov);
    report.line("verify.covariance.rel1", fmt_sci(covariance.rel1));
    report.line("verify.covariance.rel2", fmt_sci(covariance.rel2));
    ok = ok && covariance.pass(tol);

    const auto assoc = associated_ideal(cov, 1e-6);
    report.line("verify.associated_ideal", fmt_support(assoc));
    ok = ok && assoc.is_zero();

    const int star_n = std::min(2, spec.amp);
    double min_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<AlgebraElement>> coeffs;
        for (int m = 0; m <= star_n; ++m) {
            std::vector<AlgebraElement> row;
            for (int n = 0; n <= star_n; ++n)
                row.push_back(AlgebraElement::random(system.algebra, rng));
            coeffs.push_back(std::move(row));
        }
        min_margin = std::min(min_margin, star_property_check(cov, coeffs, spec.amp).margin());
    }
    report.line("verify.star.trials", "20");
    report.line("verify.star.min_margin", fmt_sci(min_margin));
    ok = ok && min_margin >= -1e-8;

    double gauge_drift = 0.0;
    for (int kk = 1; kk <= 7; kk += 2) {
        const double angle = 2.0 * M_PI * kk / 8.0;
        const auto rotated = gauge_rotate(pair, Complex(std::cos(angle), std::sin(angle)));
        const auto rt = toeplitz_check(rotated);
        gauge_drift = std::max({gauge_drift, std::abs(rt.rep1 - toeplitz.rep1),
                                std::abs(rt.rep2 - toeplitz.rep2),
                                std::abs(rt.rep3 - toeplitz.rep3)});
        gauge_drift = std::max(gauge_drift,
                               std::abs(coisometric_check(rotated, Ideal::zero(system.algebra)) -
                                        coiso_zero));
    }
    report.line("verify.gauge.max_drift", fmt_sci(gauge_drift));
    ok = ok && gauge_drift <= 1e-12;

    report.line("verify.pass", fmt_bool(ok));
    return ok;
}

bool do_oracle(Report& report, const SystemSpec& spec, const DynSystem& system) {
    const bool system_ok = j_infinity_routes_agree(system);
    report.line("oracle.system.agree", fmt_bool(system_ok));
    report.line("oracle.system.j_infinity",
                fmt_support(j_infinity_closed_form(system.endo, system.ideal)));

    long comm_cases = 0;
    long comm_bad = 0;
    for (int points = 1; points <= 4; ++points)
        for_each_commutative_system(points, [&](const DynSystem& sys) {
            ++comm_cases;
            if (!j_infinity_routes_agree(sys))
                ++comm_bad;
        });
    report.line("oracle.commutative.cases", std::to_string(comm_cases));
    report.line("oracle.commutative.disagreements", std::to_string(comm_bad));

    std::mt19937_64 rng(spec.seed);
    long random_bad = 0;
    const int random_cases = 200;
    for (int i = 0; i < random_cases; ++i)
        if (!j_infinity_routes_agree(random_block_system(rng)))
            ++random_bad;
    report.line("oracle.random.cases", std::to_string(random_cases));
    report.line("oracle.random.disagreements", std::to_string(random_bad));

    const bool ok = system_ok && comm_bad == 0 && random_bad == 0;
    report.line("oracle.pass", fmt_bool(ok));
    return ok;
}

} // namespace

DynSystem SystemSpec::build() const {
    const auto algebra = make_algebra(block_dims);
    const int k = algebra.block_count();
    if (static_cast<int>(mult.size()) != k)
        throw input_error("multiplicity matrix must have one row per block");
    IntMatrix m(k, k);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(mult[static_cast<std::size_t>(i)].size()) != k)
            throw input_error("multiplicity matrix must be square");
        for (int j = 0; j < k; ++j)
            m(i, j) = mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return DynSystem{algebra, make_endomorphism(algebra, m), Ideal::from_indices(algebra, ideal_support)};
}

SystemSpec parse_spec(const std::string& text) {
    SystemSpec spec;
    bool have_blocks = false, have_mult = false;
    int blocks_line = 0, mult_line = 0, ideal_line = 0;
    std::vector<int> raw_ideal;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const auto tokens = tokenize(raw);
        if (tokens.empty())
            continue;
        const auto& key = tokens[0];

        if (key == "name") {
            if (tokens.size() != 2)
                fail(line_no, "name takes exactly one word", "bad-option");
            spec.name = tokens[1];
        } else if (key == "blocks") {
            spec.block_dims.clear();
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                const long v = parse_int(tokens[i], line_no);
                if (v < 1)
                    fail(line_no, "block dimensions must be positive", "dimension-mismatch");
                spec.block_dims.push_back(static_cast<int>(v));
            }
            if (spec.block_dims.empty())
                fail(line_no, "blocks needs at least one dimension", "dimension-mismatch");
            if (spec.block_dims.size() > 32)
                fail(line_no, "at most 32 blocks are supported", "dimension-mismatch");
            have_blocks = true;
            blocks_line = line_no;
        } else if (key == "mult") {
            spec.mult.clear();
            std::vector<int> row;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (tokens[i] == ";") {
                    spec.mult.push_back(row);
                    row.clear();
                    continue;
                }
                const long v = parse_int(tokens[i], line_no);
                if (v < 0)
                    fail(line_no, "multiplicities must be non-negative", "row-fit");
                row.push_back(static_cast<int>(v));
            }
            spec.mult.push_back(row);
            have_mult = true;
            mult_line = line_no;
        } else if (key == "ideal") {
            raw_ideal.clear();
            for (std::size_t i = 1; i < tokens.size(); ++i)
                raw_ideal.push_back(static_cast<int>(parse_int(tokens[i], line_no)));
            ideal_line = line_no;
        } else if (key == "opt") {
            if (tokens.size() != 3)
                fail(line_no, "opt takes a key and a value", "bad-option");
            const auto& opt = tokens[1];
            if (opt == "tol") {
                spec.tol = parse_real(tokens[2], line_no);
                if (!(spec.tol > 0))
                    fail(line_no, "tol must be positive", "bad-option");
            } else if (opt == "levels") {
                spec.levels = static_cast<int>(parse_int(tokens[2], line_no));
                if (spec.levels < 1)
                    fail(line_no, "levels must be at least 1", "bad-option");
            } else if (opt == "amp") {
                spec.amp = static_cast<int>(parse_int(tokens[2], line_no));
                if (spec.amp < 0)
                    fail(line_no, "amp must be non-negative", "bad-option");
            } else if (opt == "seed") {
                spec.seed = static_cast<std::uint64_t>(parse_int(tokens[2], line_no));
            } else {
                fail(line_no, "unknown option '" + opt + "'", "bad-option");
            }
        } else {
            fail(line_no, "unknown key '" + key + "'", "unknown-key");
        }
    }

    if (!have_blocks)
        fail(line_no, "missing 'blocks' line", "missing-field");
    if (!have_mult)
        fail(line_no, "missing 'mult' line", "missing-field");

    const int k = static_cast<int>(spec.block_dims.size());
    if (static_cast<int>(spec.mult.size()) != k)
        fail(mult_line, "multiplicity matrix needs one row per block", "dimension-mismatch");
    for (const auto& row : spec.mult)
        if (static_cast<int>(row.size()) != k)
            fail(mult_line, "multiplicity rows need one entry per block", "dimension-mismatch");

    for (int idx : raw_ideal) {
        if (idx < 1 || idx > k)
            fail(ideal_line, "ideal index " + std::to_string(idx) + " out of range", "index-range");
        spec.ideal_support.push_back(idx - 1);
    }

    // Row fit is validated here so the diagnostic carries the mult line.
    try {
        spec.build();
    } catch (const input_error& err) {
        fail(mult_line ? mult_line : blocks_line, err.what(), "row-fit");
    }
    return spec;
}

RunReport run_command(std::string_view command, const SystemSpec& spec) {
    RunReport out;
    Report report("pimsner-lab " + std::string(command) + ": " + spec.name);
    try {
        const auto system = spec.build();
        prologue(report, command, spec, system);
        bool ok = true;
        if (command == "reduce") {
            do_reduce(report, system);
        } else if (command == "canonical") {
            do_canonical(report, system);
        } else if (command == "classify") {
            do_classify(report, system);
        } else if (command == "verify") {
            ok = do_verify(report, spec, system);
        } else if (command == "oracle-check") {
            ok = do_oracle(report, spec, system);
        } else {
            throw input_error("unknown command '" + std::string(command) + "'");
        }
        out.exit_code = ok ? kExitOk : kExitVerifyFailure;
    } catch (const resource_error& err) {
        report.line("error", err.what());
        out.exit_code = kExitResourceGuard;
    } catch (const input_error& err) {
        report.line("error", err.what());
        out.exit_code = kExitMalformedInput;
    } catch (const verification_error& err) {
        report.line("error", err.what());
        out.exit_code = kExitVerifyFailure;
    } catch (const numerical_error& err) {
        report.line("error", err.what());
        out.exit_code = kExitVerifyFailure;
    } catch (const std::exception& err) {
        report.line("error", err.what());
        out.exit_code = kExitVerifyFailure;
    }
    report.line("exit_code", std::to_string(out.exit_code));
    out.human = report.human();
    out.machine = report.machine();
    return out;
}

} // namespace pimsner
