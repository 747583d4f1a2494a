#include "pimsner/fock.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <sstream>

namespace pimsner {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix identity_like(int dim) {
    return Matrix::Identity(dim, dim);
}

bool is_identity(const Matrix& m) {
    if (m.rows() != m.cols())
        return false;
    return (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() == 0.0;
}

} // namespace

namespace detail {

GramOnb onb_from_gram(const Matrix& gram) {
    const Eigen::Index n = gram.rows();
    if (n == 0)
        return {0, Matrix(0, 0), Matrix(0, 0)};
    Matrix herm = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    const auto& values = es.eigenvalues();
    const double top = std::max(0.0, values(n - 1));
    if (values(0) < -1e-9) {
        std::ostringstream msg;
        msg << "Gram matrix has negative eigenvalue " << values(0);
        throw numerical_error(msg.str());
    }
    const double cutoff = 1e-10 * top;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index m = 0; m < n; ++m)
        if (values(m) > cutoff)
            kept.push_back(m);
    GramOnb onb;
    onb.dim = static_cast<int>(kept.size());
    onb.p = Matrix(onb.dim, n);
    onb.q = Matrix(n, onb.dim);
    for (int m = 0; m < onb.dim; ++m) {
        const double lambda = values(kept[static_cast<std::size_t>(m)]);
        const Vector vec = es.eigenvectors().col(kept[static_cast<std::size_t>(m)]);
        onb.p.row(m) = std::sqrt(lambda) * vec.adjoint();
        onb.q.col(m) = vec / std::sqrt(lambda);
    }
    return onb;
}

} // namespace detail

AlgebraElement ConcreteBimodule::inner(const AlgebraElement& x, const AlgebraElement& y) const {
    return x.adjoint() * y;
}

AlgebraElement ConcreteBimodule::left(const AlgebraElement& a, const AlgebraElement& x) const {
    return endo.apply(a) * x;
}

AlgebraElement ConcreteBimodule::right(const AlgebraElement& x, const AlgebraElement& a) const {
    return x * a;
}

Vector ConcreteBimodule::coords(const AlgebraElement& x) const {
    if (x.owner() != algebra)
        throw input_error("bimodule coordinates of a foreign element");
    // Entries outside the rows clipped by δ(1) must vanish.
    auto residue = x - unit_projection * x;
    if (residue.max_abs() > 1e-9)
        throw input_error("element does not lie in the bimodule E = δ(1)A");
    Vector v(dim());
    for (int s = 0; s < dim(); ++s) {
        const auto& u = basis_units[static_cast<std::size_t>(s)];
        v(s) = x.block(u.block)(u.row, u.col);
    }
    return v;
}

AlgebraElement ConcreteBimodule::from_coords(const Vector& coords) const {
    if (coords.size() != dim())
        throw input_error("bimodule coordinate vector has wrong length");
    auto x = AlgebraElement::zero(algebra);
    for (int s = 0; s < dim(); ++s)
        x += coords(s) * basis[static_cast<std::size_t>(s)];
    return x;
}

AlgebraElement ConcreteBimodule::random_vector(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim());
    for (int s = 0; s < dim(); ++s)
        v(s) = Complex(gauss(rng), gauss(rng));
    return from_coords(v);
}

ConcreteBimodule concrete_bimodule(const Endomorphism& endo) {
    const auto& algebra = endo.owner();
    std::vector<AlgebraElement> basis;
    std::vector<UnitIndex> basis_units;
    for (int t = 0; t < algebra.block_count(); ++t) {
        const int occupied = endo.occupied_rows(t);
        for (int p = 0; p < occupied; ++p)
            for (int q = 0; q < algebra.block_dim(t); ++q) {
                basis.push_back(AlgebraElement::matrix_unit(algebra, t, p, q));
                basis_units.push_back({t, p, q});
            }
    }
    return ConcreteBimodule{algebra, endo, endo.unit_image(), std::move(basis), std::move(basis_units)};
}

Matrix LevelSpace::pi(const AlgebraElement& a) const {
    if (a.owner() != algebra)
        throw input_error("level action of a foreign element");
    Matrix out = Matrix::Zero(dim, dim);
    const Vector c = a.coords();
    for (Eigen::Index u = 0; u < c.size(); ++u)
        if (c(u) != Complex(0, 0))
            out += c(u) * pi_units[static_cast<std::size_t>(u)];
    return out;
}

LevelSpace vacuum_level(const BlockAlgebra& algebra) {
    LevelSpace level;
    level.algebra = algebra;
    level.level = 0;
    level.dim = algebra.total_dim();
    for (const auto& u : matrix_units(algebra))
        level.pi_units.push_back(AlgebraElement::matrix_unit(algebra, u).identity_rep());
    return level;
}

LevelSpace internal_tensor(const ConcreteBimodule& bimodule, const LevelSpace& level) {
    if (bimodule.algebra != level.algebra)
        throw input_error("tensor level over a different algebra");
    const int d_e = bimodule.dim();
    const int d_n = level.dim;
    const int ambient = d_e * d_n;
    if (ambient > 2048)
        throw resource_error("tensor level spanning family exceeds 2048 vectors");

    LevelSpace next;
    next.algebra = bimodule.algebra;
    next.level = level.level + 1;

    if (ambient == 0) {
        next.dim = 0;
        for (int u = 0; u < matrix_unit_count(bimodule.algebra); ++u)
            next.pi_units.emplace_back(Matrix::Zero(0, 0));
        for (int s = 0; s < d_e; ++s)
            next.creation.emplace_back(Matrix::Zero(0, d_n));
        return next;
    }

    // Gram matrix of the spanning family {x_s ⊗ e_i}: the inner product of
    // x_s ⊗ v and x_t ⊗ w is ⟨v, π_n(⟨x_s,x_t⟩_A) w⟩.
    Matrix gram = Matrix::Zero(ambient, ambient);
    for (int s = 0; s < d_e; ++s)
        for (int t = 0; t < d_e; ++t) {
            const auto prod = bimodule.inner(bimodule.basis[static_cast<std::size_t>(s)],
                                             bimodule.basis[static_cast<std::size_t>(t)]);
            gram.block(s * d_n, t * d_n, d_n, d_n) = level.pi(prod);
        }

    const auto onb = detail::onb_from_gram(gram);
    next.dim = onb.dim;

    for (int s = 0; s < d_e; ++s)
        next.creation.push_back(onb.p.block(0, s * d_n, onb.dim, d_n));

    const auto units = matrix_units(bimodule.algebra);
    for (const auto& u : units) {
        const auto a = AlgebraElement::matrix_unit(bimodule.algebra, u);
        Matrix w = Matrix::Zero(d_e, d_e);
        for (int s = 0; s < d_e; ++s)
            w.col(s) = bimodule.coords(bimodule.left(a, bimodule.basis[static_cast<std::size_t>(s)]));
        next.pi_units.push_back(onb.p * kron(w, identity_like(d_n)) * onb.q);
    }

    // The balancing relation (x·a) ⊗ v − x ⊗ π(a)v must lie in the null
    // space of the Gram form.
    std::mt19937_64 rng(0x62616c61ULL + static_cast<std::uint64_t>(next.level));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 4; ++trial) {
        auto a = AlgebraElement::random(bimodule.algebra, rng);
        a *= Complex(1.0 / std::max(1.0, a.norm()), 0.0);
        auto x = bimodule.random_vector(rng);
        x *= Complex(1.0 / std::max(1.0, x.norm()), 0.0);
        Vector v(d_n);
        for (int i = 0; i < d_n; ++i)
            v(i) = Complex(gauss(rng), gauss(rng));
        if (v.norm() > 0)
            v /= v.norm();

        Vector c = Vector::Zero(ambient);
        const Vector xa = bimodule.coords(bimodule.right(x, a));
        const Vector xc = bimodule.coords(x);
        const Vector pav = level.pi(a) * v;
        for (int s = 0; s < d_e; ++s)
            c.segment(s * d_n, d_n) = xa(s) * v - xc(s) * pav;
        const double residual = std::sqrt(std::abs((c.adjoint() * gram * c)(0, 0).real()));
        if (residual > 1e-9)
            throw verification_error("balancing relation leaks out of the Gram null space");
    }
    return next;
}

Matrix FockRep::pi(const AlgebraElement& a) const {
    Matrix out = Matrix::Zero(total_dim, total_dim);
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const int d = levels[n].dim;
        if (d > 0)
            out.block(offsets[n], offsets[n], d, d) = levels[n].pi(a);
    }
    return out;
}

Matrix FockRep::creation_op(const AlgebraElement& x) const {
    const Vector c = bimodule.coords(x);
    Matrix out = Matrix::Zero(total_dim, total_dim);
    for (int n = 0; n + 1 <= truncation; ++n) {
        const auto& upper = levels[static_cast<std::size_t>(n + 1)];
        if (upper.dim == 0 || levels[static_cast<std::size_t>(n)].dim == 0)
            continue;
        Matrix t = Matrix::Zero(upper.dim, levels[static_cast<std::size_t>(n)].dim);
        for (int s = 0; s < bimodule.dim(); ++s)
            if (c(s) != Complex(0, 0))
                t += c(s) * upper.creation[static_cast<std::size_t>(s)];
        out.block(offsets[static_cast<std::size_t>(n + 1)], offsets[static_cast<std::size_t>(n)],
                  upper.dim, levels[static_cast<std::size_t>(n)].dim) = t;
    }
    return out;
}

Matrix FockRep::vacuum_projection() const {
    Matrix out = Matrix::Zero(total_dim, total_dim);
    out.block(0, 0, levels[0].dim, levels[0].dim) = identity_like(levels[0].dim);
    return out;
}

Matrix FockRep::compress_below_top() const {
    Matrix out = identity_like(total_dim);
    const int top = levels.back().dim;
    if (top > 0)
        out.block(offsets.back(), offsets.back(), top, top).setZero();
    return out;
}

Vector FockRep::embed(int level, const Vector& v) const {
    if (v.size() != levels.at(static_cast<std::size_t>(level)).dim)
        throw input_error("level vector has wrong dimension");
    Vector out = Vector::Zero(total_dim);
    out.segment(offsets[static_cast<std::size_t>(level)], v.size()) = v;
    return out;
}

FockRep fock_rep(const Endomorphism& endo, int truncation) {
    if (truncation < 1)
        throw input_error("Fock truncation level must be at least 1");
    // every level embeds into C^d, so (N+1)·d bounds the total dimension
    if (static_cast<long>(truncation + 1) * endo.owner().total_dim() > 4096)
        throw resource_error("truncated Fock space exceeds 4096 dimensions");
    FockRep rep;
    rep.bimodule = concrete_bimodule(endo);
    rep.truncation = truncation;
    rep.levels.push_back(vacuum_level(endo.owner()));
    rep.offsets.push_back(0);
    rep.total_dim = rep.levels[0].dim;
    for (int n = 1; n <= truncation; ++n) {
        rep.levels.push_back(internal_tensor(rep.bimodule, rep.levels.back()));
        rep.offsets.push_back(rep.total_dim);
        rep.total_dim += rep.levels.back().dim;
    }

    // π is faithful here, so creation must be isometric below truncation.
    for (const auto& x : rep.bimodule.basis) {
        const double t_norm = operator_norm(rep.creation_op(x));
        if (std::abs(t_norm - x.norm()) > 1e-8)
            throw verification_error("creation operator is not isometric");
    }
    return rep;
}

double operator_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double partial_isometry_defect(const Matrix& u) {
    return operator_norm(u * u.adjoint() * u - u);
}

Matrix ToeplitzPair::psi(const AlgebraElement& x) const {
    const Vector c = bimodule.coords(x);
    Matrix out = Matrix::Zero(space_dim, space_dim);
    for (Eigen::Index s = 0; s < c.size(); ++s)
        if (c(s) != Complex(0, 0))
            out += c(s) * psi_basis[static_cast<std::size_t>(s)];
    return out;
}

Matrix ToeplitzPair::pi(const AlgebraElement& a) const {
    if (a.owner() != bimodule.algebra)
        throw input_error("representation of a foreign element");
    const Vector c = a.coords();
    Matrix out = Matrix::Zero(space_dim, space_dim);
    for (Eigen::Index u = 0; u < c.size(); ++u)
        if (c(u) != Complex(0, 0))
            out += c(u) * pi_units[static_cast<std::size_t>(u)];
    return out;
}

Matrix CovariantPair::pi(const AlgebraElement& a) const {
    if (a.owner() != algebra)
        throw input_error("representation of a foreign element");
    const Vector c = a.coords();
    Matrix out = Matrix::Zero(space_dim, space_dim);
    for (Eigen::Index u = 0; u < c.size(); ++u)
        if (c(u) != Complex(0, 0))
            out += c(u) * pi_units[static_cast<std::size_t>(u)];
    return out;
}

ToeplitzPair fock_pair(const FockRep& rep) {
    ToeplitzPair pair;
    pair.bimodule = rep.bimodule;
    pair.space_dim = rep.total_dim;
    for (const auto& x : rep.bimodule.basis)
        pair.psi_basis.push_back(rep.creation_op(x));
    for (const auto& u : matrix_units(rep.bimodule.algebra))
        pair.pi_units.push_back(rep.pi(AlgebraElement::matrix_unit(rep.bimodule.algebra, u)));
    pair.compression = rep.compress_below_top();
    return pair;
}

ToeplitzReport toeplitz_check(const ToeplitzPair& pair) {
    ToeplitzReport report;
    report.compressed = !is_identity(pair.compression);
    const auto& c = pair.compression;
    const auto& algebra = pair.bimodule.algebra;
    const auto units = matrix_units(algebra);

    std::vector<Matrix> psis;
    for (const auto& x : pair.bimodule.basis)
        psis.push_back(pair.psi(x));

    for (std::size_t s = 0; s < pair.bimodule.basis.size(); ++s) {
        const auto& x = pair.bimodule.basis[s];
        for (const auto& ui : units) {
            const auto a = AlgebraElement::matrix_unit(algebra, ui);
            const Matrix pa = pair.pi(a);
            report.rep1 = std::max(report.rep1,
                operator_norm(c * (pair.psi(pair.bimodule.right(x, a)) - psis[s] * pa) * c));
            report.rep3 = std::max(report.rep3,
                operator_norm(c * (pair.psi(pair.bimodule.left(a, x)) - pa * psis[s]) * c));
        }
        for (std::size_t t = 0; t < pair.bimodule.basis.size(); ++t) {
            const auto inner = pair.bimodule.inner(x, pair.bimodule.basis[t]);
            report.rep2 = std::max(report.rep2,
                operator_norm(c * (psis[s].adjoint() * psis[t] - pair.pi(inner)) * c));
        }
    }
    return report;
}

double coisometric_check(const ToeplitzPair& pair, const Ideal& j) {
    if (j.owner() != pair.bimodule.algebra)
        throw input_error("coisometric check with a foreign ideal");
    const auto& c = pair.compression;
    const Matrix psi_unit_adj = pair.psi(pair.bimodule.unit_projection).adjoint();
    double residual = 0.0;
    for (const auto& a : j.generators()) {
        const Matrix lhs = pair.psi(pair.bimodule.endo.apply(a)) * psi_unit_adj;
        residual = std::max(residual, operator_norm(c * (lhs - pair.pi(a)) * c));
    }
    return residual;
}

CovarianceReport covariance_check(const CovariantPair& pair) {
    CovarianceReport report;
    report.compressed = !is_identity(pair.compression);
    const auto& c = pair.compression;
    const Matrix uu = pair.u.adjoint() * pair.u;
    for (const auto& ui : matrix_units(pair.algebra)) {
        const auto a = AlgebraElement::matrix_unit(pair.algebra, ui);
        const Matrix pa = pair.pi(a);
        report.rel1 = std::max(report.rel1,
            operator_norm(c * (pair.u * pa * pair.u.adjoint() - pair.pi(pair.endo.apply(a))) * c));
        report.rel2 = std::max(report.rel2, operator_norm(c * (uu * pa - pa * uu) * c));
    }
    return report;
}

Ideal associated_ideal(const CovariantPair& pair, double tol) {
    const Matrix uu = pair.u.adjoint() * pair.u;
    std::uint32_t mask = 0;
    for (int i = 0; i < pair.algebra.block_count(); ++i) {
        double residual = 0.0;
        for (int p = 0; p < pair.algebra.block_dim(i); ++p)
            for (int q = 0; q < pair.algebra.block_dim(i); ++q) {
                const Matrix pa = pair.pi(AlgebraElement::matrix_unit(pair.algebra, i, p, q));
                residual = std::max(residual, operator_norm(uu * pa - pa));
            }
        if (residual < tol)
            mask |= (1u << i);
    }
    Ideal ideal(pair.algebra, mask);

    // The relation is linear in a, so it extends from the generators;
    // spot-check random elements of the computed ideal anyway.
    std::mt19937_64 rng(0x69646561ULL);
    for (int trial = 0; trial < 4; ++trial) {
        auto a = ideal.random_element(rng);
        const double scale = std::max(1.0, a.norm());
        const Matrix pa = pair.pi(a);
        if (operator_norm(uu * pa - pa) > 16.0 * tol * scale)
            throw verification_error("associated ideal is not of the stated form");
    }
    return ideal;
}

CovariantPair covariant_from_toeplitz(const ToeplitzPair& pair, double tol) {
    const auto report = toeplitz_check(pair);
    if (!report.pass(tol)) {
        std::ostringstream msg;
        msg << "input pair fails its Toeplitz axioms: rep1=" << report.rep1
            << " rep2=" << report.rep2 << " rep3=" << report.rep3;
        throw verification_error(msg.str());
    }
    CovariantPair cov;
    cov.algebra = pair.bimodule.algebra;
    cov.endo = pair.bimodule.endo;
    cov.space_dim = pair.space_dim;
    cov.pi_units = pair.pi_units;
    cov.u = pair.psi(pair.bimodule.unit_projection).adjoint();
    cov.compression = pair.compression;
    return cov;
}

ToeplitzPair toeplitz_from_covariant(const CovariantPair& pair, double tol) {
    const auto report = covariance_check(pair);
    if (!report.pass(tol)) {
        std::ostringstream msg;
        msg << "input pair fails covariance: rel1=" << report.rel1 << " rel2=" << report.rel2;
        throw verification_error(msg.str());
    }
    ToeplitzPair toep;
    toep.bimodule = concrete_bimodule(pair.endo);
    toep.space_dim = pair.space_dim;
    toep.pi_units = pair.pi_units;
    toep.compression = pair.compression;
    const Matrix u_adj = pair.u.adjoint();
    for (const auto& x : toep.bimodule.basis)
        toep.psi_basis.push_back(u_adj * pair.pi(x));
    return toep;
}

CovariantPair unitary_pair(const Endomorphism& endo) {
    if (!endo.is_permutation() || !endo.is_unital())
        throw input_error("unitary pair needs an automorphism");
    const auto& algebra = endo.owner();
    const int k = algebra.block_count();
    std::vector<int> offset(static_cast<std::size_t>(k), 0);
    for (int i = 1; i < k; ++i)
        offset[static_cast<std::size_t>(i)] =
            offset[static_cast<std::size_t>(i - 1)] + algebra.block_dim(i - 1);

    const int d = algebra.total_dim();
    Matrix u = Matrix::Zero(d, d);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (endo.mult()(i, j) == 1)
                u.block(offset[static_cast<std::size_t>(i)], offset[static_cast<std::size_t>(j)],
                        algebra.block_dim(i), algebra.block_dim(j)) =
                    identity_like(algebra.block_dim(i));

    CovariantPair pair;
    pair.algebra = algebra;
    pair.endo = endo;
    pair.space_dim = d;
    for (const auto& ui : matrix_units(algebra))
        pair.pi_units.push_back(AlgebraElement::matrix_unit(algebra, ui).identity_rep());
    pair.u = std::move(u);
    pair.compression = identity_like(d);
    return pair;
}

CovariantPair amplified_pair(const CovariantPair& pair, int width) {
    if (width < 0)
        throw input_error("amplification width must be non-negative");
    const int sites = 2 * width + 1;
    Matrix shift = Matrix::Zero(sites, sites);
    for (int n = 0; n < sites; ++n)
        shift(n, (n + sites - 1) % sites) = 1.0;

    CovariantPair amp;
    amp.algebra = pair.algebra;
    amp.endo = pair.endo;
    amp.space_dim = sites * pair.space_dim;
    for (const auto& m : pair.pi_units)
        amp.pi_units.push_back(kron(identity_like(sites), m));
    amp.u = kron(shift, pair.u);
    amp.compression = kron(identity_like(sites), pair.compression);
    return amp;
}

StarReport star_property_check(const CovariantPair& pair,
                               const std::vector<std::vector<AlgebraElement>>& coeffs,
                               int width) {
    const int n_max = static_cast<int>(coeffs.size()) - 1;
    if (n_max < 0)
        throw input_error("coefficient matrix must be non-empty");
    for (const auto& row : coeffs)
        if (static_cast<int>(row.size()) != n_max + 1)
            throw input_error("coefficient matrix must be square");
    if (width < n_max)
        throw input_error("amplification width must cover the coefficient range");
    if (!covariance_check(pair).pass(1e-8))
        throw input_error("star check needs a covariant pair");

    std::vector<Matrix> u_pow{identity_like(pair.space_dim)};
    for (int m = 1; m <= n_max; ++m)
        u_pow.push_back(u_pow.back() * pair.u);

    Matrix diagonal = Matrix::Zero(pair.space_dim, pair.space_dim);
    for (int m = 0; m <= n_max; ++m)
        diagonal += u_pow[static_cast<std::size_t>(m)].adjoint() *
                    pair.pi(coeffs[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)]) *
                    u_pow[static_cast<std::size_t>(m)];

    const int sites = 2 * width + 1;
    Matrix shift = Matrix::Zero(sites, sites);
    for (int n = 0; n < sites; ++n)
        shift(n, (n + sites - 1) % sites) = 1.0;
    std::vector<Matrix> s_pow{identity_like(sites)};
    for (int m = 1; m <= n_max; ++m)
        s_pow.push_back(s_pow.back() * shift);

    Matrix full = Matrix::Zero(sites * pair.space_dim, sites * pair.space_dim);
    for (int m = 0; m <= n_max; ++m)
        for (int n = 0; n <= n_max; ++n) {
            const Matrix site_part =
                s_pow[static_cast<std::size_t>(m)].adjoint() * s_pow[static_cast<std::size_t>(n)];
            const Matrix fiber_part =
                u_pow[static_cast<std::size_t>(m)].adjoint() *
                pair.pi(coeffs[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]) *
                u_pow[static_cast<std::size_t>(n)];
            full += kron(site_part, fiber_part);
        }

    return StarReport{operator_norm(diagonal), operator_norm(full)};
}

ToeplitzPair gauge_rotate(const ToeplitzPair& pair, Complex z) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw input_error("gauge rotation needs a unimodular scalar");
    ToeplitzPair rotated = pair;
    for (auto& m : rotated.psi_basis)
        m *= z;
    return rotated;
}

} // namespace pimsner
