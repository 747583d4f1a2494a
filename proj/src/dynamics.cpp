#include "pimsner/dynamics.hpp"

#include <sstream>

namespace pimsner {

namespace {

void check_row_fit(const BlockAlgebra& algebra, const IntMatrix& mult) {
    const int k = algebra.block_count();
    if (mult.rows() != k || mult.cols() != k)
        throw input_error("multiplicity matrix must be k x k");
    for (int i = 0; i < k; ++i) {
        long occupied = 0;
        for (int j = 0; j < k; ++j) {
            if (mult(i, j) < 0)
                throw input_error("multiplicity entries must be non-negative");
            occupied += static_cast<long>(mult(i, j)) * algebra.block_dim(j);
        }
        if (occupied > algebra.block_dim(i)) {
            std::ostringstream msg;
            msg << "row-fit violation in target block " << (i + 1) << ": "
                << occupied << " rows of copies exceed dimension " << algebra.block_dim(i);
            throw input_error(msg.str());
        }
    }
}

} // namespace

Endomorphism::Endomorphism(BlockAlgebra owner, IntMatrix mult)
    : owner_(std::move(owner)), mult_(std::move(mult)) {
    check_row_fit(owner_, mult_);
}

Endomorphism Endomorphism::identity(const BlockAlgebra& algebra) {
    const int k = algebra.block_count();
    return Endomorphism(algebra, IntMatrix::Identity(k, k));
}

Endomorphism Endomorphism::zero(const BlockAlgebra& algebra) {
    const int k = algebra.block_count();
    return Endomorphism(algebra, IntMatrix::Zero(k, k));
}

AlgebraElement Endomorphism::apply(const AlgebraElement& a) const {
    if (a.owner() != owner_)
        throw input_error("endomorphism applied to foreign element");
    auto out = AlgebraElement::zero(owner_);
    for (int i = 0; i < owner_.block_count(); ++i) {
        int offset = 0;
        for (int j = 0; j < owner_.block_count(); ++j) {
            const int n = owner_.block_dim(j);
            for (int c = 0; c < mult_(i, j); ++c) {
                out.block(i).block(offset, offset, n, n) = a.block(j);
                offset += n;
            }
        }
    }
    return out;
}

AlgebraElement Endomorphism::unit_image() const {
    return apply(AlgebraElement::unit(owner_));
}

bool Endomorphism::is_unital() const {
    for (int i = 0; i < owner_.block_count(); ++i)
        if (occupied_rows(i) != owner_.block_dim(i))
            return false;
    return true;
}

int Endomorphism::occupied_rows(int i) const {
    int occupied = 0;
    for (int j = 0; j < owner_.block_count(); ++j)
        occupied += mult_(i, j) * owner_.block_dim(j);
    return occupied;
}

Ideal Endomorphism::kernel() const {
    std::uint32_t mask = 0;
    for (int j = 0; j < owner_.block_count(); ++j) {
        bool column_zero = true;
        for (int i = 0; i < owner_.block_count(); ++i)
            if (mult_(i, j) != 0)
                column_zero = false;
        if (column_zero)
            mask |= (1u << j);
    }
    return Ideal(owner_, mask);
}

Ideal Endomorphism::preimage_ideal(const Ideal& ideal) const {
    if (ideal.owner() != owner_)
        throw input_error("preimage of a foreign ideal");
    std::uint32_t mask = 0;
    for (int j = 0; j < owner_.block_count(); ++j) {
        bool inside = true;
        for (int i = 0; i < owner_.block_count(); ++i)
            if (mult_(i, j) != 0 && !ideal.contains_block(i))
                inside = false;
        if (inside)
            mask |= (1u << j);
    }
    return Ideal(owner_, mask);
}

bool Endomorphism::is_permutation() const {
    const int k = owner_.block_count();
    for (int i = 0; i < k; ++i) {
        int row = 0, col = 0;
        for (int j = 0; j < k; ++j) {
            if (mult_(i, j) != 0 && mult_(i, j) != 1)
                return false;
            row += mult_(i, j);
            col += mult_(j, i);
        }
        if (row != 1 || col != 1)
            return false;
    }
    return true;
}

Endomorphism make_endomorphism(const BlockAlgebra& algebra, const IntMatrix& mult) {
    return Endomorphism(algebra, mult);
}

Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner) {
    if (outer.owner() != inner.owner())
        throw input_error("composing endomorphisms of different algebras");
    // Row fit of the product follows from the factors by dimension count.
    return Endomorphism(outer.owner(), outer.mult() * inner.mult());
}

Endomorphism iterate(const Endomorphism& endo, int n) {
    if (n < 0)
        throw input_error("iterate needs n >= 0");
    auto result = Endomorphism::identity(endo.owner());
    for (int i = 0; i < n; ++i)
        result = compose(endo, result);
    return result;
}

AlgebraElement CanonicalExtension::embed(const AlgebraElement& a) const {
    if (degenerate)
        return AlgebraElement(ext_algebra, {});
    return sum.embed_left(q_kernel.map(a)) + sum.embed_right(q_ideal.map(a));
}

Ideal CanonicalExtension::second_summand() const {
    if (degenerate)
        return Ideal(ext_algebra, 0u);
    return sum.right_ideal();
}

CanonicalExtension canonical_extension(const DynSystem& system) {
    const auto ker = system.endo.kernel();
    const auto meet = ker.intersect(system.ideal);
    if (!meet.is_zero()) {
        std::ostringstream msg;
        msg << "extension undefined: ker δ ∩ J is supported on blocks {";
        bool first = true;
        for (int i : meet.support()) {
            if (!first) msg << ",";
            msg << (i + 1);
            first = false;
        }
        msg << "}";
        throw input_error(msg.str());
    }

    auto q_ker = quotient(system.algebra, ker);
    auto q_j   = quotient(system.algebra, system.ideal);
    auto sum   = direct_sum(q_ker.target, q_j.target);

    // Both summand targets read from the first summand through δ's
    // multiplicities.  Source blocks inside ker δ have zero columns, so
    // dropping them leaves the canonical arrangement untouched and the
    // intertwining with the embedding is exact.
    const int k1 = q_ker.target.block_count();
    const int k2 = q_j.target.block_count();
    IntMatrix ext_mult = IntMatrix::Zero(k1 + k2, k1 + k2);
    for (int t = 0; t < k1; ++t)
        for (int s = 0; s < k1; ++s)
            ext_mult(t, s) = system.endo.mult()(q_ker.index_map[t], q_ker.index_map[s]);
    for (int t = 0; t < k2; ++t)
        for (int s = 0; s < k1; ++s)
            ext_mult(k1 + t, s) = system.endo.mult()(q_j.index_map[t], q_ker.index_map[s]);

    CanonicalExtension ext{system,
                           false,
                           sum.sum,
                           Endomorphism(sum.sum, std::move(ext_mult)),
                           std::move(q_ker),
                           std::move(q_j),
                           sum};

    // Always-on certificates.
    if (ext.ext_endo.kernel() != ext.second_summand())
        throw verification_error("canonical extension: ker δ_J is not the second summand");
    std::mt19937_64 rng(0x6b65726eULL);
    for (int trial = 0; trial < 8; ++trial) {
        auto a = AlgebraElement::random(system.algebra, rng);
        auto lhs = ext.ext_endo.apply(ext.embed(a));
        auto rhs = ext.embed(system.endo.apply(a));
        if ((lhs - rhs).norm() > 1e-12 * std::max(1.0, a.norm()))
            throw verification_error("canonical extension: δ_J does not extend δ");
    }
    return ext;
}

Classification classify(const DynSystem& system) {
    Classification c;
    const auto& endo = system.endo;
    const auto ker = endo.kernel();

    c.is_automorphism = endo.is_permutation() && endo.is_unital();
    c.is_monomorphism = ker.is_zero();
    c.kernel_unital   = true;
    c.is_commutative  = true;
    for (int n : system.algebra.block_dims())
        if (n != 1)
            c.is_commutative = false;

    // δ(A) is hereditary iff it equals the corner δ(1)Aδ(1); compare the
    // dimensions Σ_{j ∉ ker} n_j² and Σ_i r_i² of the two subspaces.
    long dim_range = 0;
    for (int j = 0; j < system.algebra.block_count(); ++j)
        if (!ker.contains_block(j))
            dim_range += static_cast<long>(system.algebra.block_dim(j)) * system.algebra.block_dim(j);
    long dim_corner = 0;
    for (int i = 0; i < system.algebra.block_count(); ++i)
        dim_corner += static_cast<long>(endo.occupied_rows(i)) * endo.occupied_rows(i);
    c.range_hereditary = (dim_range == dim_corner);

    const auto ortho_ker = ortho_complement(ker);
    c.j_is_ortho_kernel = (system.ideal == ortho_ker);
    c.j_is_zero = system.ideal.is_zero();
    c.j_is_full = system.ideal.is_full();
    const bool j_below_ortho = ortho_ker.contains(system.ideal);

    if (c.is_automorphism && c.j_is_ortho_kernel) c.rows.push_back(1);
    if (c.is_monomorphism && c.j_is_ortho_kernel) c.rows.push_back(2);
    if (c.kernel_unital && c.range_hereditary && c.j_is_ortho_kernel) c.rows.push_back(3);
    if (c.kernel_unital && c.is_commutative && c.j_is_ortho_kernel) c.rows.push_back(4);
    if (j_below_ortho) c.rows.push_back(5);
    if (c.j_is_full) c.rows.push_back(6);
    if (c.j_is_zero) c.rows.push_back(7);
    return c;
}

} // namespace pimsner
