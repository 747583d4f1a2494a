#pragma once

#include "pimsner/bimodule.hpp"

namespace pimsner {

/// Outcome of passing to (A/J_∞, δ_∞, q(J)).
struct ReductionResult {
    std::vector<Ideal> chain;        // J_0, ..., J_n, J_{n+1} = J_n
    Ideal j_infinity;
    int stabilized_at = 0;           // first n with J_n = J_{n+1}
    bool degenerate = false;         // J_∞ = A
    QuotientData quot;               // q^{J_∞}
    BlockAlgebra reduced_algebra;    // A/J_∞ (zero marker when degenerate)
    Endomorphism reduced_endo;       // δ_∞
    Ideal reduced_ideal;             // q^{J_∞}(J)

    DynSystem reduced_system() const { return {reduced_algebra, reduced_endo, reduced_ideal}; }
};

/// The increasing chain J_0 = ker φ ∩ J, J_{n+1} = {a ∈ J : φ(a)E ⊆ EJ_n},
/// computed until it stabilizes; the stabilized repeat is included.
std::vector<Ideal> ideal_chain(const CorrespondenceShape& shape, const Ideal& j);

/// J_∞ through the dynamical closed form
/// J_n = δ^{-n}(ker δ) ∩ ⋂_{m=0}^{n} δ^{-m}(J), evaluated with iterates.
Ideal j_infinity_closed_form(const Endomorphism& endo, const Ideal& j);

/// J_∞ by filtering all ideals for the minimality characterization:
/// E-invariant, containing ker φ ∩ J, and absorbing under
/// a ∈ J ∧ φ(a)E ⊆ E·I ⟹ a ∈ I.  The filtered family must have a unique
/// minimum; anything else is a verification failure, not data.
Ideal brute_force_j_infinity(const CorrespondenceShape& shape, const Ideal& j);

/// Full reduction with always-on certificates: the chain route and the
/// closed form must agree, every chain member must be E-invariant, and the
/// reduced system must satisfy ker δ_∞ ∩ q(J) = {0} with δ_∞ ∘ q = q ∘ δ.
ReductionResult reduce_system(const DynSystem& system);

/// Whether the associated algebra collapses completely (J_∞ = A).  For
/// J = A this is cross-checked against nilpotency of the support of M.
bool is_degenerate(const DynSystem& system);

/// The canonical system: reduce, then extend the reduced system.  The
/// extension precondition holds automatically after reduction.  Total
/// degeneracy yields a flagged zero extension.
CanonicalExtension canonical_system(const DynSystem& system);

} // namespace pimsner
