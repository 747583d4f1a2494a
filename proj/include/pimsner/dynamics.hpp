#pragma once

#include <vector>

#include "pimsner/algebra.hpp"

namespace pimsner {

using IntMatrix = Eigen::MatrixXi;

/// A *-endomorphism of a block algebra, stored as a multiplicity matrix M
/// plus the canonical realization: target block i carries M[i][j] copies of
/// source block j, arranged block-diagonally in column order and zero-padded
/// at the bottom right.  Any realization of M is unitarily equivalent to
/// this one per block, and all ideal computations depend on M only.
class Endomorphism {
public:
    Endomorphism() = default;       // endomorphism of the zero algebra
    Endomorphism(BlockAlgebra owner, IntMatrix mult);

    static Endomorphism identity(const BlockAlgebra& algebra);
    static Endomorphism zero(const BlockAlgebra& algebra);

    const BlockAlgebra& owner() const { return owner_; }
    const IntMatrix& mult() const { return mult_; }

    AlgebraElement apply(const AlgebraElement& a) const;

    /// δ(1); a projection, the identity iff the copies fill every block.
    AlgebraElement unit_image() const;
    bool is_unital() const;

    /// Rows of target block i occupied by copies: Σ_j M[i][j]·n_j.
    int occupied_rows(int i) const;

    /// ker δ: blocks whose column of M vanishes.
    Ideal kernel() const;

    /// The largest ideal mapped into I: blocks whose column support lies
    /// inside the support of I.
    Ideal preimage_ideal(const Ideal& ideal) const;

    bool is_permutation() const;

private:
    BlockAlgebra owner_;
    IntMatrix mult_;
};

Endomorphism make_endomorphism(const BlockAlgebra& algebra, const IntMatrix& mult);

/// outer ∘ inner.  The multiplicity matrix is the integer product, and the
/// composite realization is rebuilt in canonical form, so it agrees with
/// nested application only up to a per-block permutation of coordinates.
Endomorphism compose(const Endomorphism& outer, const Endomorphism& inner);
Endomorphism iterate(const Endomorphism& endo, int n);

/// A C*-dynamical system with a distinguished ideal.
struct DynSystem {
    BlockAlgebra algebra;
    Endomorphism endo;
    Ideal ideal;
};

/// The extension (A_J, δ_J) with A_J = A/ker δ ⊕ A/J and
/// δ_J((a + ker δ) ⊕ (b + J)) = (δ(a) + ker δ) ⊕ (δ(a) + J).
/// Defined when ker δ ∩ J = {0}; then a ↦ (a + ker δ) ⊕ (a + J) embeds A.
struct CanonicalExtension {
    DynSystem system;               // the system that was extended
    bool degenerate = false;        // total collapse: everything below is the zero marker
    BlockAlgebra ext_algebra;
    Endomorphism ext_endo;
    QuotientData q_kernel;          // A -> A/ker δ
    QuotientData q_ideal;           // A -> A/J
    DirectSum sum;

    AlgebraElement embed(const AlgebraElement& a) const;
    /// 0 ⊕ A/J as an ideal of the extension; equals ker δ_J.
    Ideal second_summand() const;
};

CanonicalExtension canonical_extension(const DynSystem& system);

/// Classification of a system against the standard crossed-product
/// constructions:
///   1. automorphism, J = (ker δ)^⊥            — unitary crossed product
///   2. monomorphism, J = (ker δ)^⊥            — isometric crossed product
///   3. ker δ unital, δ(A) hereditary, same J  — complete transfer operator
///   4. ker δ unital, A commutative, same J    — covariance algebra
///   5. arbitrary δ, {0} ⊆ J ⊆ (ker δ)^⊥       — partial-isometric product
///   6. arbitrary δ, J = A                     — isometric (relative) product
///   7. arbitrary δ, J = {0}                   — partial-isometric, trivial J
/// The conditions overlap, so every matching row is reported.
struct Classification {
    bool is_automorphism   = false;
    bool is_monomorphism   = false;
    bool kernel_unital     = true;   // every ideal of a block algebra is unital
    bool range_hereditary  = false;  // δ(1)Aδ(1) = δ(A), by dimension count
    bool is_commutative    = false;
    bool j_is_ortho_kernel = false;  // J = (ker δ)^⊥
    bool j_is_zero         = false;
    bool j_is_full         = false;
    std::vector<int> rows;           // 1-based matching crossed-product rows
};

Classification classify(const DynSystem& system);

} // namespace pimsner
