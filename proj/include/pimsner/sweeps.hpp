#pragma once

#include <functional>

#include "pimsner/reduction.hpp"

namespace pimsner {

/// Every C*-dynamical system on the commutative algebra C^points: one
/// system per partial self-map of the blocks ((points+1)^points of them)
/// and per ideal (2^points of them).
void for_each_commutative_system(int points, const std::function<void(const DynSystem&)>& fn);

/// A seeded random block system with k ≤ 5 blocks, dimensions ≤ 3 and
/// multiplicities ≤ 2, respecting the row-fit condition.
DynSystem random_block_system(std::mt19937_64& rng);

/// Three-way J_∞ agreement: recursive chain limit, dynamical closed form,
/// brute-force minimal-ideal characterization.
bool j_infinity_routes_agree(const DynSystem& system);

} // namespace pimsner
