// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pimsner/fock.hpp"
#include "pimsner/spec_io.hpp"
#include "pimsner/sweeps.hpp"

using namespace pimsner;

namespace {

struct Line {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool pattern_nilpotent(const IntMatrix& m) {
    const int k = static_cast<int>(m.rows());
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(k), 0u);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (m(i, j) != 0)
                rows[static_cast<std::size_t>(i)] |= (1u << j);
    auto power = rows;
    for (int step = 1; step < k; ++step) {
        std::vector<std::uint32_t> next(static_cast<std::size_t>(k), 0u);
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l)
                if ((power[static_cast<std::size_t>(i)] >> l) & 1u)
                    next[static_cast<std::size_t>(i)] |= rows[static_cast<std::size_t>(l)];
        power = next;
    }
    for (auto r : power)
        if (r != 0u)
            return false;
    return true;
}

Endomorphism fixture(std::vector<int> dims, const std::vector<std::vector<int>>& rows) {
    const int k = static_cast<int>(dims.size());
    IntMatrix m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return make_endomorphism(make_algebra(dims), m);
}

// d ≤ 6 systems exercising automorphisms, proper kernels, nilpotency,
// non-unital images, multiplicities and three blocks.
std::vector<std::pair<std::string, Endomorphism>> fock_fixtures() {
    std::vector<std::pair<std::string, Endomorphism>> out;
    out.emplace_back("swap", fixture({1, 1}, {{0, 1}, {1, 0}}));
    out.emplace_back("copy-first", fixture({1, 1}, {{1, 0}, {1, 0}}));
    out.emplace_back("shift-kill", fixture({1, 1}, {{0, 1}, {0, 0}}));
    out.emplace_back("zero", fixture({1, 1}, {{0, 0}, {0, 0}}));
    out.emplace_back("tower-12", fixture({1, 2}, {{1, 0}, {2, 0}}));
    out.emplace_back("corner-12", fixture({1, 2}, {{0, 0}, {2, 0}}));
    out.emplace_back("corner-22", fixture({2, 2}, {{1, 0}, {0, 0}}));
    out.emplace_back("cross-21", fixture({2, 1}, {{0, 1}, {0, 1}}));
    out.emplace_back("cycle-3", fixture({1, 1, 1}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    out.emplace_back("tower-123", fixture({1, 2, 3}, {{1, 0, 0}, {2, 0, 0}, {1, 1, 0}}));
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

} // namespace

int main() {
    std::vector<std::pair<std::string, Line>> report(11);
    for (std::size_t i = 0; i < report.size(); ++i)
        report[i].first = "criterion " + std::to_string(i + 1);

    report[0].first += " (J_inf oracle agreement, commutative sweep)";
    report[1].first += " (J_inf oracle agreement, 200 random systems)";
    report[2].first += " (reduction certificates)";
    report[3].first += " (degeneracy iff nilpotent pattern)";
    report[4].first += " (canonical system kernel and embedding)";
    report[5].first += " (Fock: Toeplitz axioms, isometry, annihilation)";
    report[6].first += " (correspondence round-trip, partial isometry)";
    report[7].first += " (star inequality)";
    report[8].first += " (gauge invariance)";
    report[9].first += " (classifier fixtures)";
    report[10].first += " (CLI determinism and exit codes)";

    // ------------------------------------------------------------------
    // criteria 1, 3, 4, 5: the commutative sweep
    try {
        const auto start = std::chrono::steady_clock::now();
        long cases = 0, disagreements = 0, cert_failures = 0, law_failures = 0;
        long canonical_cases = 0, canonical_failures = 0;
        double worst_intertwine = 0.0;

        for (int points = 1; points <= 4; ++points)
            for_each_commutative_system(points, [&](const DynSystem& system) {
                ++cases;
                if (!j_infinity_routes_agree(system))
                    ++disagreements;

                const auto result = reduce_system(system);
                const auto shape = shape_from_dynamics(system.endo);
                bool certs = result.stabilized_at <= system.algebra.block_count();
                for (std::size_t n = 0; n < result.chain.size(); ++n) {
                    certs = certs && is_invariant(shape, result.chain[n]);
                    if (n > 0)
                        certs = certs && result.chain[n].contains(result.chain[n - 1]);
                }
                certs = certs &&
                        result.reduced_endo.kernel().intersect(result.reduced_ideal).is_zero();
                if (!certs)
                    ++cert_failures;

                if (system.ideal.is_full() &&
                    result.degenerate != pattern_nilpotent(system.endo.mult()))
                    ++law_failures;

                const auto ext = canonical_system(system);
                if (!ext.degenerate) {
                    ++canonical_cases;
                    bool good = ext.ext_endo.kernel() == ext.second_summand();
                    const auto& reduced = ext.system;
                    for (const auto& u : matrix_units(reduced.algebra))
                        good = good &&
                               ext.embed(AlgebraElement::matrix_unit(reduced.algebra, u)).norm() > 0.5;
                    std::mt19937_64 rng(0xACC40000ULL + static_cast<std::uint64_t>(cases));
                    for (int trial = 0; trial < 3; ++trial) {
                        auto a = AlgebraElement::random(reduced.algebra, rng);
                        const double residual =
                            (ext.ext_endo.apply(ext.embed(a)) - ext.embed(reduced.endo.apply(a)))
                                .norm() /
                            std::max(1.0, a.norm());
                        worst_intertwine = std::max(worst_intertwine, residual);
                        good = good && residual < 1e-12;
                    }
                    if (!good)
                        ++canonical_failures;
                }
            });

        const double elapsed = seconds_since(start);
        std::ostringstream d1;
        d1 << cases << " cases, " << disagreements << " disagreements, " << fmt(elapsed) << " s";
        report[0].second = {disagreements == 0 && cases == 10552 && elapsed < 60.0, d1.str()};

        std::ostringstream d3;
        d3 << cert_failures << " certificate failures over " << cases << " commutative cases";
        report[2].second.pass = cert_failures == 0;
        report[2].second.detail = d3.str();

        std::ostringstream d4;
        d4 << law_failures << " violations of (J_inf = A iff nilpotent) over the J = A cases";
        report[3].second = {law_failures == 0, d4.str()};

        std::ostringstream d5;
        d5 << canonical_failures << " failures over " << canonical_cases
           << " non-degenerate cases, worst intertwine " << fmt(worst_intertwine);
        report[4].second = {canonical_failures == 0, d5.str()};
    } catch (const std::exception& err) {
        for (int i : {0, 2, 3, 4})
            report[static_cast<std::size_t>(i)].second = {false, err.what()};
    }

    // ------------------------------------------------------------------
    // criterion 2 (+ certificates folded into criterion 3's verdict)
    try {
        const auto start = std::chrono::steady_clock::now();
        std::mt19937_64 rng(0xACCE5501ULL);
        long disagreements = 0, cert_failures = 0;
        const int cases = 200;
        for (int i = 0; i < cases; ++i) {
            const auto system = random_block_system(rng);
            if (!j_infinity_routes_agree(system))
                ++disagreements;
            const auto result = reduce_system(system);
            const auto shape = shape_from_dynamics(system.endo);
            bool certs = result.stabilized_at <= system.algebra.block_count();
            for (std::size_t n = 0; n < result.chain.size(); ++n)
                certs = certs && is_invariant(shape, result.chain[n]);
            certs = certs &&
                    result.reduced_endo.kernel().intersect(result.reduced_ideal).is_zero();
            if (!certs)
                ++cert_failures;
        }
        const double elapsed = seconds_since(start);
        std::ostringstream d2;
        d2 << cases << " seeded systems, " << disagreements << " disagreements, "
           << fmt(elapsed) << " s";
        report[1].second = {disagreements == 0 && elapsed < 30.0, d2.str()};
        if (cert_failures > 0) {
            report[2].second.pass = false;
            report[2].second.detail += "; " + std::to_string(cert_failures) + " on random systems";
        } else {
            report[2].second.detail += "; 0 on 200 random systems";
        }
    } catch (const std::exception& err) {
        report[1].second = {false, err.what()};
    }

    // ------------------------------------------------------------------
    // criteria 6..9: Fock verification on the d ≤ 6 fixtures at N = 4
    try {
        const auto start = std::chrono::steady_clock::now();
        double worst_toeplitz = 0, worst_isometry = 0, worst_annihilation = 0;
        double worst_roundtrip = 0, worst_defect = 0;
        double worst_margin = std::numeric_limits<double>::infinity();
        double worst_gauge = 0;
        long star_trials = 0;

        for (const auto& [name, endo] : fock_fixtures()) {
            const auto rep = fock_rep(endo, 4);
            const auto pair = fock_pair(rep);

            const auto base = toeplitz_check(pair);
            worst_toeplitz = std::max({worst_toeplitz, base.rep1, base.rep2, base.rep3});

            std::mt19937_64 rng(0xF0C50000ULL);
            double isometry = 0;
            for (const auto& x : rep.bimodule.basis)
                isometry = std::max(isometry, std::abs(operator_norm(pair.psi(x)) - x.norm()));
            for (int trial = 0; trial < 5 && rep.bimodule.dim() > 0; ++trial) {
                auto x = rep.bimodule.random_vector(rng);
                isometry = std::max(isometry, std::abs(operator_norm(pair.psi(x)) - x.norm()));
            }
            worst_isometry = std::max(worst_isometry, isometry);

            double annihilation = 0;
            const int d = endo.owner().total_dim();
            std::normal_distribution<double> gauss(0.0, 1.0);
            if (rep.levels[1].dim > 0)
                for (int s = 0; s < rep.bimodule.dim(); ++s)
                    for (int s1 = 0; s1 < rep.bimodule.dim(); ++s1) {
                        Vector xi(d);
                        for (int i = 0; i < d; ++i)
                            xi(i) = Complex(gauss(rng), gauss(rng));
                        const auto& x = rep.bimodule.basis[static_cast<std::size_t>(s)];
                        const auto& x1 = rep.bimodule.basis[static_cast<std::size_t>(s1)];
                        const Vector lifted = rep.embed(
                            1, rep.levels[1].creation[static_cast<std::size_t>(s1)] * xi);
                        const Vector lowered =
                            (pair.psi(x).adjoint() * lifted).head(d);
                        annihilation =
                            std::max(annihilation,
                                     (lowered - rep.bimodule.inner(x, x1).identity_rep() * xi).norm());
                    }
            worst_annihilation = std::max(worst_annihilation, annihilation);

            // criterion 7
            const auto cov = covariant_from_toeplitz(pair, 1e-8);
            const auto back = toeplitz_from_covariant(cov, 1e-8);
            for (std::size_t s = 0; s < pair.psi_basis.size(); ++s)
                worst_roundtrip = std::max(
                    worst_roundtrip, operator_norm(back.psi_basis[s] - pair.psi_basis[s]));
            const auto cov_again = covariant_from_toeplitz(back, 1e-8);
            worst_roundtrip = std::max(worst_roundtrip, operator_norm(cov_again.u - cov.u));
            worst_defect = std::max(worst_defect, partial_isometry_defect(cov.u));

            // criterion 8: 100 seeded coefficient families, N = 2, L = 2
            std::mt19937_64 star_rng(0x57A80000ULL);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<std::vector<AlgebraElement>> coeffs;
                for (int m = 0; m <= 2; ++m) {
                    std::vector<AlgebraElement> row;
                    for (int n = 0; n <= 2; ++n)
                        row.push_back(AlgebraElement::random(endo.owner(), star_rng));
                    coeffs.push_back(std::move(row));
                }
                worst_margin = std::min(worst_margin,
                                        star_property_check(cov, coeffs, 2).margin());
                ++star_trials;
            }

            // criterion 9: eight sampled unimodular scalars
            const double coiso0 = coisometric_check(pair, Ideal::zero(endo.owner()));
            double iso_basis = 0;
            for (const auto& x : rep.bimodule.basis)
                iso_basis = std::max(iso_basis, std::abs(operator_norm(pair.psi(x)) - x.norm()));
            for (int kk = 0; kk < 8; ++kk) {
                const double angle = 2.0 * M_PI * kk / 8.0;
                const auto rotated =
                    gauge_rotate(pair, Complex(std::cos(angle), std::sin(angle)));
                const auto rot = toeplitz_check(rotated);
                worst_gauge = std::max({worst_gauge, std::abs(rot.rep1 - base.rep1),
                                        std::abs(rot.rep2 - base.rep2),
                                        std::abs(rot.rep3 - base.rep3)});
                double rot_iso = 0;
                for (const auto& x : rep.bimodule.basis)
                    rot_iso = std::max(rot_iso,
                                       std::abs(operator_norm(rotated.psi(x)) - x.norm()));
                worst_gauge = std::max(worst_gauge, std::abs(rot_iso - iso_basis));
                worst_gauge = std::max(
                    worst_gauge,
                    std::abs(coisometric_check(rotated, Ideal::zero(endo.owner())) - coiso0));
            }
        }

        const double elapsed = seconds_since(start);
        std::ostringstream d6;
        d6 << "toeplitz " << fmt(worst_toeplitz) << ", isometry " << fmt(worst_isometry)
           << ", annihilation " << fmt(worst_annihilation) << ", " << fmt(elapsed) << " s";
        report[5].second = {worst_toeplitz <= 1e-10 && worst_isometry <= 1e-8 &&
                                worst_annihilation <= 1e-10 && elapsed < 60.0,
                            d6.str()};
        report[6].second = {worst_roundtrip <= 1e-10 && worst_defect <= 1e-10,
                            "roundtrip " + fmt(worst_roundtrip) + ", defect " + fmt(worst_defect)};
        report[7].second = {worst_margin >= -1e-8,
                            std::to_string(star_trials) + " trials, min margin " + fmt(worst_margin)};
        report[8].second = {worst_gauge <= 1e-12, "max drift " + fmt(worst_gauge)};
    } catch (const std::exception& err) {
        for (int i : {5, 6, 7, 8})
            report[static_cast<std::size_t>(i)].second = {false, err.what()};
    }

    // ------------------------------------------------------------------
    // criterion 10: classifier fixtures
    try {
        const auto swap = fixture({1, 1}, {{0, 1}, {1, 0}});
        const auto copy = fixture({1, 1}, {{1, 0}, {1, 0}});
        const auto tower = fixture({1, 2}, {{1, 0}, {2, 0}});
        const auto& a2 = swap.owner();

        const std::vector<std::pair<DynSystem, std::vector<int>>> expectations = {
            {{a2, swap, Ideal::full(a2)}, {1, 2, 3, 4, 5, 6}},
            {{a2, copy, ortho_complement(copy.kernel())}, {4, 5}},
            {{tower.owner(), tower, Ideal::from_indices(tower.owner(), {0})}, {5}},
            {{a2, swap, Ideal::zero(a2)}, {5, 7}},
            {{a2, copy, Ideal::full(a2)}, {6}},
        };
        int mismatches = 0;
        for (const auto& [system, rows] : expectations)
            if (classify(system).rows != rows)
                ++mismatches;
        report[9].second = {mismatches == 0,
                            std::to_string(mismatches) + " mismatches over 5 fixtures"};
    } catch (const std::exception& err) {
        report[9].second = {false, err.what()};
    }

    // ------------------------------------------------------------------
    // criterion 11: CLI determinism and the exit-code contract
    try {
        bool ok = true;
        std::string detail;

        const auto swap_spec = parse_spec("name swap\nblocks 1 1\nmult 0 1 ; 1 0\nideal 1 2\n");
        const auto tower_spec = parse_spec("name tower\nblocks 1 2\nmult 1 0 ; 2 0\nideal 1\n");
        for (const char* command : {"reduce", "canonical", "classify", "verify", "oracle-check"})
            for (const auto& spec : {swap_spec, tower_spec}) {
                const auto first = run_command(command, spec);
                const auto second = run_command(command, spec);
                ok = ok && first.machine == second.machine && first.exit_code == kExitOk;
            }
        detail += "golden reports stable";

        auto strict = tower_spec;
        strict.tol = 1e-30;
        ok = ok && run_command("verify", strict).exit_code == kExitVerifyFailure;

        auto broken = swap_spec;
        broken.mult = {{0, 1}};
        ok = ok && run_command("reduce", broken).exit_code == kExitMalformedInput;

        bool parse_rejects = false;
        try {
            parse_spec("blocks 1 1\nmult 0 -1 ; 0 0\nideal 1\n");
        } catch (const input_error&) {
            parse_rejects = true;
        }
        ok = ok && parse_rejects;

        SystemSpec big;
        big.block_dims.assign(13, 1);
        big.mult.assign(13, std::vector<int>(13, 0));
        ok = ok && run_command("oracle-check", big).exit_code == kExitResourceGuard;

        detail += "; exit codes 1/2/3 honored";
        report[10].second = {ok, detail};
    } catch (const std::exception& err) {
        report[10].second = {false, err.what()};
    }

    // ------------------------------------------------------------------
    bool all = true;
    for (const auto& [name, line] : report) {
        std::printf("[%s] %s — %s\n", line.pass ? "PASS" : "FAIL", name.c_str(),
                    line.detail.c_str());
        all = all && line.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES PRESENT");
    return all ? 0 : 1;
}
