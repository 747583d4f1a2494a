#pragma once

#include "pimsner/dynamics.hpp"

namespace pimsner {

/// The dynamical bimodule E = δ(1)A realized inside A: vectors are block
/// matrices x with δ(1)x = x, the right action is x·a = xa, the left action
/// is a·x = δ(a)x and the inner product is ⟨x,y⟩_A = x*y.  The matrix units
/// of A surviving left clipping by δ(1) form a linear basis.
struct ConcreteBimodule {
    BlockAlgebra algebra;
    Endomorphism endo;
    AlgebraElement unit_projection;      // δ(1)
    std::vector<AlgebraElement> basis;   // surviving matrix units, deterministic order
    std::vector<UnitIndex> basis_units;  // positions of the basis matrix units

    int dim() const { return static_cast<int>(basis.size()); }

    AlgebraElement inner(const AlgebraElement& x, const AlgebraElement& y) const;
    AlgebraElement left(const AlgebraElement& a, const AlgebraElement& x) const;
    AlgebraElement right(const AlgebraElement& x, const AlgebraElement& a) const;

    /// Exact expansion of a vector of E in the matrix-unit basis.
    Vector coords(const AlgebraElement& x) const;
    AlgebraElement from_coords(const Vector& coords) const;
    AlgebraElement random_vector(std::mt19937_64& rng) const;
};

ConcreteBimodule concrete_bimodule(const Endomorphism& endo);

/// One localized tensor level H_n = E^{⊗n} ⊗_A C^d, realized as C^dim with
/// the induced left action of A and the creation maps from the level below.
struct LevelSpace {
    BlockAlgebra algebra;
    int level = 0;
    int dim = 0;
    std::vector<Matrix> pi_units;    // action of each matrix unit of A
    std::vector<Matrix> creation;    // T(x_s): previous level -> this one; empty at level 0

    Matrix pi(const AlgebraElement& a) const;
};

namespace detail {

/// Orthonormalization data extracted from a Gram matrix: `p` maps ambient
/// coefficients to coordinates on the quotient by the relative null space
/// (eigenvalues below 1e-10 of the largest), `q` picks ambient
/// representatives.  A negative eigenvalue below -1e-9 aborts.
struct GramOnb {
    int dim = 0;
    Matrix p;
    Matrix q;
};

GramOnb onb_from_gram(const Matrix& gram);

} // namespace detail

/// Level 0: C^d carrying the identity representation.
LevelSpace vacuum_level(const BlockAlgebra& algebra);

/// The next level E ⊗_A H_n, built from the Gram matrix of the spanning
/// family {x_s ⊗ e_i}: eigenvalues below 1e-10 of the largest are cut as
/// the balanced null space, the rest give the orthonormal basis.  A
/// genuinely negative eigenvalue aborts: the model is broken, not the data.
LevelSpace internal_tensor(const ConcreteBimodule& bimodule, const LevelSpace& level);

/// Truncated Fock representation on ⊕_{n=0}^{N} H_n.
struct FockRep {
    ConcreteBimodule bimodule;
    int truncation = 0;                  // N
    std::vector<LevelSpace> levels;      // 0..N
    std::vector<int> offsets;            // level n starts at offsets[n]
    int total_dim = 0;

    Matrix pi(const AlgebraElement& a) const;
    /// T_N(x) = P_{≤N} T(x) P_{≤N}: raises each level, kills the top one.
    Matrix creation_op(const AlgebraElement& x) const;
    Matrix vacuum_projection() const;
    /// Compression to levels ≤ N−1, where truncation is invisible.
    Matrix compress_below_top() const;
    /// Embed a level-n coordinate vector into the full space.
    Vector embed(int level, const Vector& v) const;
};

FockRep fock_rep(const Endomorphism& endo, int truncation);

/// Largest singular value; the operator norm of a matrix.
double operator_norm(const Matrix& m);

/// ‖UU*U − U‖, the partial-isometry defect.
double partial_isometry_defect(const Matrix& u);

/// A Toeplitz representation pair (ψ, π) on a common matrix space.  ψ is
/// stored on the basis of E and π on the matrix units of A; both extend by
/// linearity.  `compression` restricts residual evaluation to the subspace
/// where a truncated representation is honest (identity when exact).
struct ToeplitzPair {
    ConcreteBimodule bimodule;
    int space_dim = 0;
    std::vector<Matrix> psi_basis;
    std::vector<Matrix> pi_units;
    Matrix compression;

    Matrix psi(const AlgebraElement& x) const;
    Matrix pi(const AlgebraElement& a) const;
};

/// A covariant pair (π, U): Uπ(a)U* = π(δ(a)) with U*U commuting with π(A).
struct CovariantPair {
    BlockAlgebra algebra;
    Endomorphism endo;
    int space_dim = 0;
    std::vector<Matrix> pi_units;
    Matrix u;
    Matrix compression;

    Matrix pi(const AlgebraElement& a) const;
};

/// The Fock pair (T, φ_∞) of a truncated Fock representation, compressed
/// below the top level for residual evaluation.
ToeplitzPair fock_pair(const FockRep& rep);

/// Max residuals of the three Toeplitz axioms over the spanning sets.
struct ToeplitzReport {
    double rep1 = 0;    // ψ(x·a) = ψ(x)π(a)
    double rep2 = 0;    // ψ(x)*ψ(y) = π(⟨x,y⟩_A)
    double rep3 = 0;    // ψ(a·x) = π(a)ψ(x)
    bool compressed = false;

    double max() const { return std::max(rep1, std::max(rep2, rep3)); }
    bool pass(double tol) const { return max() <= tol; }
};

ToeplitzReport toeplitz_check(const ToeplitzPair& pair);

/// Coisometry residual on J: max over generators a of J of
/// ‖ψ(δ(a))ψ(δ(1))* − π(a)‖.  Reports, never throws.
double coisometric_check(const ToeplitzPair& pair, const Ideal& j);

/// Covariance residuals: rel1 on the matrix units, rel2 as the commutator
/// defect of U*U against π(A).
struct CovarianceReport {
    double rel1 = 0;
    double rel2 = 0;
    bool compressed = false;

    double max() const { return std::max(rel1, rel2); }
    bool pass(double tol) const { return max() <= tol; }
};

CovarianceReport covariance_check(const CovariantPair& pair);

/// The largest block ideal on whose generators U*Uπ(a) = π(a) within tol;
/// verified to satisfy the relation on random elements as well.
Ideal associated_ideal(const CovariantPair& pair, double tol);

/// U := ψ(δ(1))*.  The input must pass its own axioms within tol.
CovariantPair covariant_from_toeplitz(const ToeplitzPair& pair, double tol = 1e-8);

/// ψ(x) := U*π(x).  The input must pass covariance_check within tol.
ToeplitzPair toeplitz_from_covariant(const CovariantPair& pair, double tol = 1e-8);

/// The unitary covariant pair of an automorphism on C^d: U permutes the
/// block coordinates, π is the identity representation.
CovariantPair unitary_pair(const Endomorphism& endo);

/// The amplification ν of a covariant pair to (2L+1) sites with the shift
/// implemented cyclically, so ν(u)ν(a)ν(u)* = ν(δ(a)) holds exactly at
/// finite width.  Associated ideal and covariance carry over verbatim.
CovariantPair amplified_pair(const CovariantPair& pair, int width);

/// The norm inequality bounding the diagonal part of
/// Σ u*^m a_{m,n} u^n by the whole sum, evaluated on the amplification.
struct StarReport {
    double lhs = 0;
    double rhs = 0;

    double margin() const { return rhs - lhs; }
    bool holds(double slack = 1e-8) const { return lhs <= rhs + slack; }
};

StarReport star_property_check(const CovariantPair& pair,
                               const std::vector<std::vector<AlgebraElement>>& coeffs,
                               int width);

/// ψ ↦ z·ψ for unimodular z; all axiom residuals are invariant.
ToeplitzPair gauge_rotate(const ToeplitzPair& pair, Complex z);

} // namespace pimsner
