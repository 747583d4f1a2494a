#include <doctest.h>

#include "pimsner/reduction.hpp"
#include "pimsner/sweeps.hpp"

using namespace pimsner;

namespace {

Endomorphism endo2(int a, int b, int c, int d) {
    IntMatrix m(2, 2);
    m << a, b, c, d;
    return make_endomorphism(make_algebra({1, 1}), m);
}

DynSystem with_full(const Endomorphism& endo) {
    return {endo.owner(), endo, Ideal::full(endo.owner())};
}

} // namespace

TEST_SUITE("reduction") {

TEST_CASE("ideal_chain fixtures") {
    SUBCASE("copying endomorphism, J = A") {
        auto endo = endo2(1, 0, 1, 0);
        auto chain = ideal_chain(shape_from_dynamics(endo), Ideal::full(endo.owner()));
        REQUIRE(chain.size() == 2);
        CHECK(chain[0] == Ideal::from_indices(endo.owner(), {1}));
        CHECK(chain[1] == chain[0]);
    }
    SUBCASE("nilpotent shift, J = A") {
        auto endo = endo2(0, 1, 0, 0);
        auto chain = ideal_chain(shape_from_dynamics(endo), Ideal::full(endo.owner()));
        REQUIRE(chain.size() == 3);
        CHECK(chain[0] == Ideal::from_indices(endo.owner(), {0}));
        CHECK(chain[1] == Ideal::full(endo.owner()));
        CHECK(chain[2] == chain[1]);
    }
    SUBCASE("automorphism collapses immediately") {
        auto endo = endo2(0, 1, 1, 0);
        for (const auto& j : enumerate_ideals(endo.owner())) {
            auto chain = ideal_chain(shape_from_dynamics(endo), j);
            REQUIRE(chain.size() == 2);
            CHECK(chain[0].is_zero());
            CHECK(chain[1].is_zero());
        }
    }
}

TEST_CASE("closed form fixtures") {
    auto kill = endo2(0, 1, 0, 0);
    CHECK(j_infinity_closed_form(kill, Ideal::full(kill.owner())) == Ideal::full(kill.owner()));

    auto swap = endo2(0, 1, 1, 0);
    CHECK(j_infinity_closed_form(swap, Ideal::full(swap.owner())).is_zero());

    auto copy = endo2(1, 0, 1, 0);
    CHECK(j_infinity_closed_form(copy, Ideal::from_indices(copy.owner(), {0})).is_zero());
}

TEST_CASE("brute force fixtures") {
    auto copy = endo2(1, 0, 1, 0);
    CHECK(brute_force_j_infinity(shape_from_dynamics(copy), Ideal::full(copy.owner())) ==
          Ideal::from_indices(copy.owner(), {1}));

    auto swap = endo2(0, 1, 1, 0);
    CHECK(brute_force_j_infinity(shape_from_dynamics(swap), Ideal::full(swap.owner())).is_zero());

    auto kill = endo2(0, 1, 0, 0);
    CHECK(brute_force_j_infinity(shape_from_dynamics(kill), Ideal::full(kill.owner())) ==
          Ideal::full(kill.owner()));

    auto big = make_algebra(std::vector<int>(13, 1));
    CHECK_THROWS_AS(
        brute_force_j_infinity(shape_from_dynamics(Endomorphism::identity(big)), Ideal::full(big)),
        resource_error);
}

TEST_CASE("reduce_system fixtures") {
    SUBCASE("copying endomorphism reduces to one point") {
        auto result = reduce_system(with_full(endo2(1, 0, 1, 0)));
        CHECK_FALSE(result.degenerate);
        CHECK(result.reduced_algebra.block_dims() == std::vector<int>{1});
        CHECK(result.reduced_endo.mult() == IntMatrix::Identity(1, 1));
        CHECK(result.reduced_ideal.is_full());
    }
    SUBCASE("automorphisms reduce trivially") {
        auto endo = endo2(0, 1, 1, 0);
        for (const auto& j : enumerate_ideals(endo.owner())) {
            auto result = reduce_system({endo.owner(), endo, j});
            CHECK(result.j_infinity.is_zero());
            CHECK(result.reduced_algebra == endo.owner());
            CHECK(result.reduced_endo.mult() == endo.mult());
            CHECK(result.reduced_ideal == j);
        }
    }
    SUBCASE("nilpotent shift with J = A degenerates") {
        auto result = reduce_system(with_full(endo2(0, 1, 0, 0)));
        CHECK(result.degenerate);
        CHECK(result.reduced_algebra.is_zero());
    }
}

TEST_CASE("is_degenerate matches the nilpotency law") {
    CHECK(is_degenerate(with_full(endo2(0, 1, 0, 0))));
    CHECK_FALSE(is_degenerate(with_full(endo2(0, 1, 1, 0))));

    auto copy = endo2(1, 0, 1, 0);
    CHECK_FALSE(is_degenerate({copy.owner(), copy, Ideal::from_indices(copy.owner(), {0})}));
}

TEST_CASE("the suggested ideal never reduces") {
    // J = (ker φ)^⊥ ∩ J(E) already satisfies ker φ ∩ J = {0}, and the chain
    // stays at zero, so the algebra embeds untouched.
    for (int points = 1; points <= 3; ++points)
        for_each_commutative_system(points, [](const DynSystem& system) {
            auto shape = shape_from_dynamics(system.endo);
            auto best = suggested_ideal(shape);
            auto result = reduce_system({system.algebra, system.endo, best});
            CHECK(result.j_infinity.is_zero());
            CHECK_FALSE(result.degenerate);
        });
    std::mt19937_64 rng(0xfeedULL);
    for (int i = 0; i < 50; ++i) {
        auto system = random_block_system(rng);
        auto best = suggested_ideal(shape_from_dynamics(system.endo));
        CHECK(reduce_system({system.algebra, system.endo, best}).j_infinity.is_zero());
    }
}

TEST_CASE("reducing a reduced system is the identity") {
    for (int points = 1; points <= 3; ++points)
        for_each_commutative_system(points, [](const DynSystem& system) {
            auto first = reduce_system(system);
            if (first.degenerate)
                return;
            auto second = reduce_system(first.reduced_system());
            CHECK(second.j_infinity.is_zero());
            CHECK(second.reduced_algebra == first.reduced_algebra);
        });
}

TEST_CASE("three routes agree, with certificates, across sweeps") {
    long checked = 0;
    for (int points = 1; points <= 3; ++points)
        for_each_commutative_system(points, [&](const DynSystem& system) {
            ++checked;
            CHECK(j_infinity_routes_agree(system));
            auto result = reduce_system(system);
            CHECK(result.stabilized_at <= system.algebra.block_count());
            auto shape = shape_from_dynamics(system.endo);
            for (std::size_t n = 0; n < result.chain.size(); ++n) {
                CHECK(is_invariant(shape, result.chain[n]));
                if (n > 0)
                    CHECK(result.chain[n].contains(result.chain[n - 1]));
            }
            if (!result.degenerate) {
                auto reduced_shape = shape_from_dynamics(result.reduced_endo);
                CHECK(left_kernel(reduced_shape).intersect(result.reduced_ideal).is_zero());
            }
        });
    CHECK(checked == 2 * 2 + 9 * 4 + 64 * 8);

    std::mt19937_64 rng(0xbeefULL);
    for (int i = 0; i < 50; ++i)
        CHECK(j_infinity_routes_agree(random_block_system(rng)));
}

TEST_CASE("canonical_system fixtures") {
    SUBCASE("copying endomorphism with J = A") {
        auto ext = canonical_system(with_full(endo2(1, 0, 1, 0)));
        CHECK_FALSE(ext.degenerate);
        // reduced system is (C, id, C); its kernel quotient is everything
        // and the ideal quotient is the zero marker
        CHECK(ext.ext_algebra.block_dims() == std::vector<int>{1});
        CHECK(ext.ext_endo.kernel().is_zero());
        CHECK(ext.second_summand().is_zero());
    }
    SUBCASE("automorphism: reduction is trivial, extension direct") {
        auto endo = endo2(0, 1, 1, 0);
        auto j = Ideal::from_indices(endo.owner(), {0});
        auto via_system = canonical_system({endo.owner(), endo, j});
        auto direct = canonical_extension({endo.owner(), endo, j});
        CHECK(via_system.ext_algebra == direct.ext_algebra);
        CHECK(via_system.ext_endo.mult() == direct.ext_endo.mult());
        CHECK(via_system.second_summand() == direct.second_summand());
    }
    SUBCASE("nilpotent shift with J = A collapses entirely") {
        auto ext = canonical_system(with_full(endo2(0, 1, 0, 0)));
        CHECK(ext.degenerate);
        CHECK(ext.ext_algebra.is_zero());
    }
}

} // TEST_SUITE
