#include "pimsner/reduction.hpp"

namespace pimsner {

namespace {

bool support_nilpotent(const IntMatrix& mult) {
    const int k = static_cast<int>(mult.rows());
    // Boolean powers; a k x k pattern is nilpotent iff its k-th power is 0.
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> s(k, k), p(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            p(i, j) = s(i, j) = (mult(i, j) != 0);
    for (int step = 1; step < k; ++step) {
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> next(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                bool v = false;
                for (int l = 0; l < k; ++l)
                    v = v || (p(i, l) && s(l, j));
                next(i, j) = v;
            }
        p = next;
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (p(i, j))
                return false;
    return true;
}

} // namespace

std::vector<Ideal> ideal_chain(const CorrespondenceShape& shape, const Ideal& j) {
    if (j.owner() != shape.owner())
        throw input_error("ideal chain with a foreign ideal");
    std::vector<Ideal> chain;
    chain.push_back(left_kernel(shape).intersect(j));
    for (;;) {
        auto next = acts_into(shape, chain.back()).intersect(j);
        chain.push_back(next);
        if (next == chain[chain.size() - 2])
            return chain;
        if (static_cast<int>(chain.size()) > shape.owner().block_count() + 2)
            throw verification_error("ideal chain failed to stabilize within k steps");
    }
}

Ideal j_infinity_closed_form(const Endomorphism& endo, const Ideal& j) {
    const auto ker = endo.kernel();
    auto caps = j;                 // ⋂_{m=0}^{n} δ^{-m}(J)
    auto current = ker.intersect(caps);
    for (int n = 1; n <= endo.owner().block_count() + 1; ++n) {
        caps = caps.intersect(iterate(endo, n).preimage_ideal(j));
        auto next = iterate(endo, n + 1).kernel().intersect(caps);
        if (next == current)
            return current;
        current = next;
    }
    return current;
}

Ideal brute_force_j_infinity(const CorrespondenceShape& shape, const Ideal& j) {
    const int k = shape.owner().block_count();
    if (k > kMaxBruteForceBlocks)
        throw resource_error("brute-force minimal ideal limited to 12 blocks");
    const auto base = left_kernel(shape).intersect(j);

    std::vector<std::uint32_t> candidates;
    for (const auto& ideal : enumerate_ideals(shape.owner())) {
        if (!is_invariant(shape, ideal))
            continue;
        if (!ideal.contains(base))
            continue;
        if (!ideal.contains(acts_into(shape, ideal).intersect(j)))
            continue;
        candidates.push_back(ideal.mask());
    }
    // A itself always passes, so the family is never empty.
    std::uint32_t meet = candidates.front();
    for (auto m : candidates)
        meet &= m;
    for (auto m : candidates)
        if (m == meet)
            return Ideal(shape.owner(), meet);
    throw verification_error("filtered ideal family has no unique minimum");
}

ReductionResult reduce_system(const DynSystem& system) {
    auto shape = shape_from_dynamics(system.endo);
    auto chain = ideal_chain(shape, system.ideal);
    const auto j_inf = chain.back();

    // The generic recursion and the dynamical closed form are independent
    // routes to J_∞; their agreement is asserted on every call.
    if (j_infinity_closed_form(system.endo, system.ideal) != j_inf)
        throw verification_error("chain limit and closed form disagree on J_infinity");

    for (std::size_t n = 0; n < chain.size(); ++n) {
        if (!is_invariant(shape, chain[n]))
            throw verification_error("chain member is not E-invariant");
        if (n > 0 && !chain[n].contains(chain[n - 1]))
            throw verification_error("ideal chain is not increasing");
    }
    const int stabilized_at = static_cast<int>(chain.size()) - 2;
    if (stabilized_at > system.algebra.block_count())
        throw verification_error("stabilization index exceeds the block count");

    auto quot = quotient(system.algebra, j_inf);
    const int kk = quot.target.block_count();
    IntMatrix reduced_mult = IntMatrix::Zero(kk, kk);
    for (int t = 0; t < kk; ++t)
        for (int s = 0; s < kk; ++s)
            reduced_mult(t, s) = system.endo.mult()(quot.index_map[t], quot.index_map[s]);
    Endomorphism reduced_endo(quot.target, std::move(reduced_mult));
    auto reduced_ideal = quot.map_ideal(system.ideal);

    ReductionResult result{std::move(chain),
                           j_inf,
                           stabilized_at,
                           j_inf.is_full(),
                           quot,
                           quot.target,
                           std::move(reduced_endo),
                           std::move(reduced_ideal)};

    if (!result.reduced_endo.kernel().intersect(result.reduced_ideal).is_zero())
        throw verification_error("reduced system violates ker δ_∞ ∩ q(J) = {0}");

    if (!result.degenerate) {
        // δ_∞ ∘ q = q ∘ δ; exact for the canonical realization, checked on
        // random elements anyway.
        std::mt19937_64 rng(0x72656475ULL);
        for (int trial = 0; trial < 8; ++trial) {
            auto a = AlgebraElement::random(system.algebra, rng);
            auto lhs = result.reduced_endo.apply(result.quot.map(a));
            auto rhs = result.quot.map(system.endo.apply(a));
            if ((lhs - rhs).norm() > 1e-12 * std::max(1.0, a.norm()))
                throw verification_error("reduced endomorphism does not intertwine the quotient");
        }
    }
    return result;
}

bool is_degenerate(const DynSystem& system) {
    auto result = reduce_system(system);
    if (system.ideal.is_full()) {
        const bool nilpotent = support_nilpotent(system.endo.mult());
        if (nilpotent != result.degenerate)
            throw verification_error("degeneracy disagrees with nilpotency of the multiplicity pattern");
    }
    return result.degenerate;
}

CanonicalExtension canonical_system(const DynSystem& system) {
    auto reduced = reduce_system(system);
    if (reduced.degenerate) {
        CanonicalExtension ext{reduced.reduced_system(),
                               true,
                               BlockAlgebra::zero(),
                               Endomorphism(BlockAlgebra::zero(), IntMatrix::Zero(0, 0)),
                               reduced.quot,
                               reduced.quot,
                               direct_sum(BlockAlgebra::zero(), BlockAlgebra::zero())};
        return ext;
    }
    // ker δ_∞ ∩ q(J) = {0} was certified by reduce_system.
    return canonical_extension(reduced.reduced_system());
}

} // namespace pimsner
