#include <doctest.h>

#include <stdexcept>

#include "grouprec/hypothesis.hpp"
#include "grouprec/tables.hpp"

using namespace grouprec;

namespace {

Permutation P(const std::string& text, int n) { return parse_permutation(text, n); }

PermutationGroup G(int n, std::initializer_list<std::string> gens) {
    std::vector<Permutation> v;
    for (const auto& s : gens) v.push_back(P(s, n));
    return PermutationGroup::from_generators(n, std::move(v));
}

PermutationGroup we6() {
    return G(27, {"(1,10,13)(2,24,6)(3,17,11)(4,23,8)(5,26,25)(7,18,12)(9,20,16)(14,27,19)(15,21,22)",
                  "(1,18,13,22,10,11)(2,4,21,27,9,15)(3,20,26,5,14,7)(6,25,23)(8,12,17,24,16,19)"});
}

PermutationGroup rect_square() {  // Z_2^2 x D_8 on 8 points
    return G(8, {"(1,2)(3,4)", "(1,4)(2,3)", "(5,6,7,8)", "(6,8)"});
}

}  // namespace

TEST_CASE("giant-test separation constants") {
    CHECK(b_n(5) == doctest::Approx(0.214).epsilon(0.005));
    CHECK(b_n(10) == doctest::Approx(0.395).epsilon(0.003));
    CHECK(b_n(50) == doctest::Approx(0.487).epsilon(0.003));
    CHECK_THROWS_AS(b_n(4), std::invalid_argument);
    // Separation holds strictly below b_n and vanishes at b_n.
    for (int n : {5, 9, 20, 41, 60}) {
        double b = b_n(n);
        CHECK(b > 0.0);
        CHECK(b < 0.5);
        for (double f : {0.25, 0.5, 0.9, 0.99}) {
            auto c = giant_constants(n, f * b);
            CHECK(c.upper < c.lower);
        }
        double ell = 1 - 1.0 / n - 8.8 / (double(n) * n);
        double u = 1 - 1.0 / n - 0.93 / (double(n) * n);
        double lower = (1 - b + b * b) * ell;
        double upper = 2 * b * (1 - b) + b * b * u;
        CHECK(lower == doctest::Approx(upper).epsilon(1e-8));
    }
    CHECK(b_n(10) > b_n(5));
    CHECK(b_n(50) > b_n(10));

    auto c = giant_constants(27, 1.0 / 3.0);
    CHECK(c.upper == doctest::Approx(0.5512).epsilon(0.001));
    CHECK(c.lower == doctest::Approx(0.7395).epsilon(0.001));
    CHECK(c.threshold == doctest::Approx(0.6454).epsilon(0.001));
    CHECK(required_samples(0.01, (c.lower - c.upper) / 2.0) == 260);
    CHECK_THROWS_AS(giant_constants(27, b_n(27) + 0.01), std::invalid_argument);
}

TEST_CASE("giant test verdicts") {
    Rng rng(11);
    auto s7 = G(7, {"(1,2)", "(1,2,3,4,5,6,7)"});
    MixtureSampler s7_src(s7, 0.0);
    CHECK(giant_test(s7_src, 0.1, 0.01, rng).decision);

    auto c7 = G(7, {"(1,2,3,4,5,6,7)"});
    MixtureSampler c7_src(c7, 0.0);
    CHECK_FALSE(giant_test(c7_src, 0.1, 0.01, rng).decision);

    auto w = we6();
    MixtureSampler w_src(w, 1.0 / 3.0);
    auto rep = giant_test(w_src, 1.0 / 3.0, 0.01, rng);
    CHECK_FALSE(rep.decision);
    CHECK(rep.samples == 260);
    CHECK(rep.raw_draws == 520);

    MixtureSampler w_exact(w, 0.0);
    CHECK_FALSE(giant_test(w_exact, 0.2, 0.05, rng).decision);

    auto a27 = G(27, {"(1,2,3)", "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27)"});
    REQUIRE(a27.giant_kind() == GiantKind::alternating);
    MixtureSampler a27_src(a27, 1.0 / 3.0);
    CHECK(giant_test(a27_src, 1.0 / 3.0, 0.01, rng).decision);
}

TEST_CASE("fast giant classification agrees with chain orders") {
    Rng rng(23);
    auto s27 = G(27, {"(1,2)", "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27)"});
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Permutation> gens = {s27.uniform_element(rng), s27.uniform_element(rng)};
        auto fast = giant_kind_of(27, gens, rng);
        auto slow = PermutationGroup::from_generators(27, gens).giant_kind();
        CHECK(fast == slow);
    }
    CHECK(giant_kind_of(27, we6().generators(), rng) == GiantKind::neither);
    CHECK(giant_kind_of(5, G(5, {"(1,2,3)", "(3,4,5)"}).generators(), rng) == GiantKind::alternating);
    CHECK(giant_kind_of(6, G(6, {"(1,2,3)", "(4,5,6)"}).generators(), rng) == GiantKind::neither);
}

TEST_CASE("subgroup test and its specializations") {
    Rng rng(31);
    auto a5 = G(5, {"(1,2,3)", "(3,4,5)"});
    MixtureSampler a5_src(a5, 0.0);
    CHECK(subgroup_test(a5_src, a5, 0.25, 0.01, rng).decision);

    auto s4 = G(4, {"(1,2)", "(1,2,3,4)"});
    auto a4 = G(4, {"(1,2,3)", "(2,3,4)"});
    MixtureSampler s4_src(s4, 0.0);
    auto rep = subgroup_test(s4_src, a4, 0.25, 0.01, rng);
    CHECK_FALSE(rep.decision);
    CHECK(rep.sample_mean == doctest::Approx(0.5).epsilon(0.15));

    // The H = A_27, p_tilde = 1/2 plan: c = 0.625, delta = 0.125, N = 148.
    auto w = we6();
    MixtureSampler w_src(w, 1.0 / 3.0);
    auto alt = alternating_test(w_src, 0.5, 0.01, rng);
    CHECK(alt.decision);
    CHECK(alt.threshold == doctest::Approx(0.625));
    CHECK(alt.meta.at("delta") == doctest::Approx(0.125));
    CHECK(alt.samples == 148);
    CHECK(alt.sample_mean > 0.7);  // paper run observed 0.838

    CHECK_THROWS_AS(subgroup_test(a5_src, G(5, {"(1,2)", "(1,2,3,4,5)"}), 0.25, 0.01, rng),
                    std::invalid_argument);  // H = S_n is not proper
    CHECK_THROWS_AS(alternating_test(w_src, 0.6, 0.01, rng), std::invalid_argument);
}

TEST_CASE("alternating test matches generic subgroup test with H = A_n") {
    auto a5 = G(5, {"(1,2,3)", "(3,4,5)"});
    MixtureSampler src1(a5, 0.1), src2(a5, 0.1);
    Rng r1(77), r2(77);
    auto generic = subgroup_test(src1, G(5, {"(1,2,3)", "(1,2,3,4,5)"}), 0.3, 0.05, r1);
    auto special = alternating_test(src2, 0.3, 0.05, r2);
    CHECK(generic.decision == special.decision);
    CHECK(generic.sample_mean == special.sample_mean);
    CHECK(generic.samples == special.samples);
}

TEST_CASE("block and orbit-refining specializations") {
    Rng rng(41);
    auto d6 = G(6, {"(1,2,3,4,5,6)", "(2,6)(3,5)"});
    MixtureSampler d6_src(d6, 0.1);
    auto pairs3 = OrbitPartition::of({{0, 3}, {1, 4}, {2, 5}});
    auto triples2 = OrbitPartition::of({{0, 2, 4}, {1, 3, 5}});
    auto wrong = OrbitPartition::of({{0, 1, 2}, {3, 4, 5}});
    CHECK(block_test(d6_src, pairs3, 0.2, 0.01, rng).decision);
    CHECK(block_test(d6_src, triples2, 0.2, 0.01, rng).decision);
    CHECK_FALSE(block_test(d6_src, wrong, 0.2, 0.01, rng).decision);

    auto g33 = G(6, {"(1,2,3)", "(4,5,6)"});
    MixtureSampler g33_src(g33, 0.15);
    CHECK(orbit_refining_test(g33_src, wrong, 0.2, 0.01, rng).decision);
    CHECK_FALSE(orbit_refining_test(g33_src, pairs3, 0.2, 0.01, rng).decision);
    // Refinement, not equality: singletons of a sub-split still pass when G
    // fixes them; a finer G passes a coarser partition.
    auto coarse = OrbitPartition::of({{0, 1, 2, 3, 4}, {5}});
    auto g3 = G(6, {"(1,2,3)"});
    MixtureSampler g3_src(g3, 0.1);
    CHECK(orbit_refining_test(g3_src, coarse, 0.2, 0.01, rng).decision);
}

TEST_CASE("k-transitivity test") {
    Rng rng(53);
    auto s5 = G(5, {"(1,2)", "(1,2,3,4,5)"});
    MixtureSampler s5_src(s5, 0.3);
    CHECK(k_transitivity_test(s5_src, 1, 0.4, 0.01, rng).decision);
    CHECK(k_transitivity_test(s5_src, 2, 0.4, 0.01, rng).decision);

    auto c5 = G(5, {"(1,2,3,4,5)"});
    MixtureSampler c5_src(c5, 0.0);
    CHECK(k_transitivity_test(c5_src, 1, 0.2, 0.01, rng).decision);
    auto rep = k_transitivity_test(c5_src, 2, 0.2, 0.01, rng);
    CHECK_FALSE(rep.decision);
    // C_5 has 4 orbits on the 20 ordered pairs, so the raw mean is 4 at p=0.
    CHECK(rep.sample_mean == doctest::Approx(4.0).epsilon(0.1));

    auto split = G(6, {"(1,2,3)", "(4,5,6)"});
    MixtureSampler split_src(split, 0.0);
    auto rep2 = k_transitivity_test(split_src, 1, 0.2, 0.01, rng);
    CHECK_FALSE(rep2.decision);
    CHECK(rep2.sample_mean == doctest::Approx(2.0).epsilon(0.1));

    // Sample sizes for large k blow past the cap.
    CHECK_THROWS_AS(k_transitivity_test(s5_src, 4, 0.2, 0.01, rng, 100000), budget_error);
}

TEST_CASE("orbit agreement") {
    Rng rng(67);
    auto g = rect_square();
    MixtureSampler src(g, 0.25);
    CHECK(orbit_agreement(src, 0, 1, 0.3, 0.01, rng).decision);
    CHECK_FALSE(orbit_agreement(src, 0, 4, 0.3, 0.01, rng).decision);
    CHECK_THROWS_AS(orbit_agreement(src, 2, 2, 0.3, 0.01, rng), std::invalid_argument);

    auto s5 = G(5, {"(1,2)", "(1,2,3,4,5)"});
    MixtureSampler s5_src(s5, 0.0);
    CHECK(orbit_agreement(s5_src, 0, 3, 0.2, 0.01, rng).decision);
}

TEST_CASE("single orbit and full orbit recovery") {
    Rng rng(71);
    auto g = rect_square();
    MixtureSampler src(g, 0.25);
    CHECK(single_orbit_recovery(src, 0, 0.3, 0.01, rng) == std::vector<int>{0, 1, 2, 3});
    CHECK(single_orbit_recovery(src, 6, 0.3, 0.01, rng) == std::vector<int>{4, 5, 6, 7});

    auto trivial = PermutationGroup::trivial(5);
    MixtureSampler triv_src(trivial, 0.2);
    CHECK(single_orbit_recovery(triv_src, 2, 0.3, 0.01, rng) == std::vector<int>{2});

    CHECK(orbit_recovery(src, 0.3, 0.01, rng) ==
          OrbitPartition::of({{0, 1, 2, 3}, {4, 5, 6, 7}}));
    CHECK(orbit_recovery(triv_src, 0.3, 0.01, rng).blocks.size() == 5);

    auto s5 = G(5, {"(1,2)", "(1,2,3,4,5)"});
    MixtureSampler s5_src(s5, 0.3);
    CHECK(orbit_recovery(s5_src, 0.4, 0.01, rng).blocks.size() == 1);
}

TEST_CASE("orbit confirmation") {
    Rng rng(79);
    auto g = rect_square();
    MixtureSampler src(g, 0.2);
    CHECK(orbit_confirmation(src, {0, 1, 2, 3}, 0.25, 0.01, rng).decision);

    // Too small: the orbit leaks out of the candidate (refinement phase fails).
    auto small = orbit_confirmation(src, {0, 1}, 0.25, 0.01, rng);
    CHECK_FALSE(small.decision);
    CHECK(small.meta.at("phase1_pass") == 0.0);

    // Union of two orbits: refinement passes but the constituent is not
    // transitive (transitivity phase fails).
    auto big = orbit_confirmation(src, {0, 1, 2, 3, 4, 5, 6, 7}, 0.25, 0.01, rng);
    CHECK_FALSE(big.decision);
    CHECK(big.meta.at("phase1_pass") == 1.0);
    CHECK(big.meta.at("phase2_pass") == 0.0);
}

TEST_CASE("heuristic orbit recovery") {
    auto g = rect_square();
    auto target = OrbitPartition::of({{0, 1, 2, 3}, {4, 5, 6, 7}});

    // The worked configuration: p = p~ = 0.25, N = 100, t = 12.5.
    int hits = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(1000 + trial);
        MixtureSampler src(g, 0.25);
        auto parts = heuristic_orbit_recovery(src, 100, 12.5, HeuristicMode::non_adaptive, 0.25, rng);
        hits += parts == target;
    }
    CHECK(hits >= 16);

    Rng rng(83);
    MixtureSampler exact(g, 0.0);
    CHECK(heuristic_orbit_recovery(exact, 60, -1.0, HeuristicMode::non_adaptive, 0.0, rng) == target);

    auto trivial = PermutationGroup::trivial(6);
    MixtureSampler triv_src(trivial, 0.0);
    CHECK(heuristic_orbit_recovery(triv_src, 40, -1.0, HeuristicMode::non_adaptive, 0.0, rng)
              .blocks.size() == 6);

    MixtureSampler adaptive_src(g, 0.25);
    CHECK(heuristic_orbit_recovery(adaptive_src, 100, 12.5, HeuristicMode::adaptive, 0.25, rng) ==
          target);
}

TEST_CASE("heuristic orbit recovery on fixed samples") {
    auto g = rect_square();
    auto target = OrbitPartition::of({{0, 1, 2, 3}, {4, 5, 6, 7}});
    Rng rng(87);
    MixtureSampler src(g, 0.25);
    int hits = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Permutation> samples;
        for (int i = 0; i < 100; ++i) samples.push_back(src.next(rng));
        hits += heuristic_orbit_recovery_fixed(samples, 12.5, 0.25) == target;
    }
    CHECK(hits >= 15);
}

TEST_CASE("minimal block recovery and primitivity") {
    Rng rng(91);
    auto d6 = G(6, {"(1,2,3,4,5,6)", "(2,6)(3,5)"});
    MixtureSampler d6_src(d6, 0.0);
    auto systems = minimal_block_recovery(d6_src, 0.0, 0.02, rng);
    REQUIRE(systems.size() == 2);
    CHECK(systems == d6.minimal_block_systems());

    auto c5 = G(5, {"(1,2,3,4,5)"});
    MixtureSampler c5_src(c5, 0.0);
    CHECK(minimal_block_recovery(c5_src, 0.0, 0.02, rng).empty());
    CHECK(primitivity_test(c5_src, 0.0, 0.02, rng).decision);

    auto s4 = G(4, {"(1,2)", "(1,2,3,4)"});
    MixtureSampler s4_src(s4, 0.0);
    CHECK(minimal_block_recovery(s4_src, 0.0, 0.02, rng).empty());

    MixtureSampler d6_noisy(d6, 0.1);
    CHECK_FALSE(primitivity_test(d6_noisy, 0.15, 0.02, rng).decision);

    // Heuristic pair-orbit mode reaches the same block systems at p = 0.
    MixtureSampler d6_h(d6, 0.0);
    auto fast = minimal_block_recovery(d6_h, 0.0, 0.02, rng, kDefaultSampleCap, 150);
    CHECK(fast == systems);
}

TEST_CASE("embedded element-class proportions") {
    CHECK(element_class_proportions(6).giant == 0.0);
    CHECK(element_class_proportions(10).giant == doctest::Approx(0.254));
    CHECK(element_class_proportions(27).giant == doctest::Approx(0.615));
    CHECK(element_class_proportions(5).primitive == 1.0);
    CHECK_THROWS_AS(element_class_proportions(35), std::out_of_range);
    CHECK_THROWS_AS(element_class_proportions(0), std::out_of_range);
}
