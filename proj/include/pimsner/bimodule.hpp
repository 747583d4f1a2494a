#pragma once

#include "pimsner/dynamics.hpp"

namespace pimsner {

/// Lattice-level data of a Hilbert bimodule over a block algebra: which
/// left blocks act non-trivially on which right isotypic components.
/// Row i collects the right blocks met by the left action of block i.
/// This is all the information the reduction calculus consumes.
class CorrespondenceShape {
public:
    CorrespondenceShape(BlockAlgebra owner, std::vector<std::uint32_t> rows);

    const BlockAlgebra& owner() const { return owner_; }
    std::uint32_t row(int left_block) const { return rows_.at(static_cast<std::size_t>(left_block)); }
    bool acts(int left_block, int right_block) const {
        return (row(left_block) >> right_block) & 1u;
    }

    bool operator==(const CorrespondenceShape& other) const {
        return owner_ == other.owner_ && rows_ == other.rows_;
    }

private:
    BlockAlgebra owner_;
    std::vector<std::uint32_t> rows_;
};

/// Shape of the dynamical bimodule E = δ(1)A: left block j meets right
/// block i exactly when δ places a copy of block j inside block i, so the
/// shape is the support of the transposed multiplicity matrix.
CorrespondenceShape shape_from_dynamics(const Endomorphism& endo);

/// ker φ: left blocks with empty rows.
Ideal left_kernel(const CorrespondenceShape& shape);

/// φ^{-1}(K(E)).  In finite dimension every adjointable operator is
/// compact, so this is all of A; kept explicit so callers intersect with
/// it uniformly.
Ideal j_of_e(const CorrespondenceShape& shape);

/// (ker φ)^⊥ ∩ J(E), the preferred relative ideal.
Ideal suggested_ideal(const CorrespondenceShape& shape);

/// The largest ideal L with φ(L)E ⊆ E·T.
Ideal acts_into(const CorrespondenceShape& shape, const Ideal& target);

/// E-invariance: φ(I)E ⊆ E·I.
bool is_invariant(const CorrespondenceShape& shape, const Ideal& ideal);

/// Shape of E/EI over A/I for an E-invariant I: rows and columns of the
/// surviving blocks.  Components with a dead left index and a live right
/// index survive in E/EI only as right summands with zero left action and
/// carry no lattice information, so they are dropped.
CorrespondenceShape quotient_shape(const CorrespondenceShape& shape, const Ideal& ideal);

} // namespace pimsner
