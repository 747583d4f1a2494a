#include "pimsner/sweeps.hpp"

namespace pimsner {

void for_each_commutative_system(int points, const std::function<void(const DynSystem&)>& fn) {
    if (points < 1 || points > 6)
        throw input_error("commutative sweep supports 1..6 points");
    const auto algebra = make_algebra(std::vector<int>(static_cast<std::size_t>(points), 1));

    // Partial self-maps encoded in base points+1; digit `points` means the
    // target block reads nothing.
    long maps = 1;
    for (int i = 0; i < points; ++i)
        maps *= points + 1;

    for (long code = 0; code < maps; ++code) {
        IntMatrix mult = IntMatrix::Zero(points, points);
        long rest = code;
        for (int i = 0; i < points; ++i) {
            const int digit = static_cast<int>(rest % (points + 1));
            rest /= points + 1;
            if (digit < points)
                mult(i, digit) = 1;
        }
        Endomorphism endo(algebra, mult);
        for (std::uint32_t mask = 0; mask < (1u << points); ++mask)
            fn(DynSystem{algebra, endo, Ideal(algebra, mask)});
    }
}

DynSystem random_block_system(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick_k(1, 5);
    std::uniform_int_distribution<int> pick_dim(1, 3);
    std::uniform_int_distribution<int> pick_mult(0, 2);

    const int k = pick_k(rng);
    std::vector<int> dims(static_cast<std::size_t>(k));
    for (auto& d : dims)
        d = pick_dim(rng);
    const auto algebra = make_algebra(dims);

    IntMatrix mult = IntMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        bool fits = false;
        for (int attempt = 0; attempt < 64 && !fits; ++attempt) {
            long occupied = 0;
            for (int j = 0; j < k; ++j) {
                mult(i, j) = pick_mult(rng);
                occupied += static_cast<long>(mult(i, j)) * dims[static_cast<std::size_t>(j)];
            }
            fits = occupied <= dims[static_cast<std::size_t>(i)];
        }
        if (!fits)
            mult.row(i).setZero();   // the empty row always fits
    }

    std::uniform_int_distribution<std::uint32_t> pick_mask(0, (1u << k) - 1u);
    return DynSystem{algebra, Endomorphism(algebra, mult), Ideal(algebra, pick_mask(rng))};
}

bool j_infinity_routes_agree(const DynSystem& system) {
    const auto shape = shape_from_dynamics(system.endo);
    const auto chain = ideal_chain(shape, system.ideal);
    const auto closed = j_infinity_closed_form(system.endo, system.ideal);
    const auto brute = brute_force_j_infinity(shape, system.ideal);
    return chain.back() == closed && closed == brute;
}

} // namespace pimsner
