#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "grouprec/perm.hpp"

using namespace grouprec;

namespace {

Permutation P(const std::string& text, int n) { return parse_permutation(text, n); }

std::vector<Permutation> all_of_sym(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_images(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

Permutation random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation::from_images(std::move(img));
}

}  // namespace

TEST_CASE("composition applies the right factor first") {
    // a.compose(b) applies b first: (1,2) o (2,3) sends
    // 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1, i.e. equals (1,2,3).
    auto a = P("(1,2)", 3);
    auto b = P("(2,3)", 3);
    CHECK(a.compose(b) == P("(1,2,3)", 3));
    CHECK(b.compose(a) == P("(1,3,2)", 3));
    CHECK(a.compose(b)(1) == 2);  // 0-based: point 2 -> 3
}

TEST_CASE("identity, inverse and associativity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_perm(9, rng), b = random_perm(9, rng), c = random_perm(9, rng);
        CHECK(a.compose(a.inverse()).is_identity());
        CHECK(a.inverse().compose(a).is_identity());
        CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
        CHECK(a.compose(Permutation::identity(9)) == a);
    }
}

TEST_CASE("parse and format round-trip") {
    CHECK(format_cycles(P("(1,2)(3,4)", 5)) == "(1,2)(3,4)");
    CHECK(format_cycles(P("[2,1,4,3,5]", 5)) == "(1,2)(3,4)");
    CHECK(format_cycles(P("", 4)) == "()");
    CHECK(P("()", 4).is_identity());
    CHECK(P(" ( 1 , 2 ) ", 3) == P("(1,2)", 3));
    CHECK_THROWS_AS(P("(1,2", 3), std::invalid_argument);
    CHECK_THROWS_AS(P("(1,1)", 3), std::invalid_argument);
    CHECK_THROWS_AS(P("(1,4)", 3), std::invalid_argument);
    CHECK_THROWS_AS(P("[1,1,2]", 3), std::invalid_argument);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = random_perm(8, rng);
        CHECK(parse_permutation(format_cycles(g), 8) == g);
    }
}

TEST_CASE("parity is a homomorphism onto {even, odd}") {
    CHECK(P("(1,2)", 4).is_even() == false);
    CHECK(P("(1,2,3)", 4).is_even() == true);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_perm(7, rng), b = random_perm(7, rng);
        CHECK(a.compose(b).is_even() == (a.is_even() == b.is_even()));
    }
}

TEST_CASE("fixed point counting") {
    auto id5 = Permutation::identity(5);
    CHECK(id5.fix_count() == 5);
    CHECK(id5.fix_k_count(2) == 20);  // 5 * 4 ordered pairs
    auto g = P("(1,2)(3,4,5)", 7);    // fixes 6 and 7
    CHECK(g.fix_count() == 2);
    CHECK(g.fix_k_count(1) == 2);
    CHECK(g.fix_k_count(2) == 2);
    CHECK(g.fix_k_count(3) == 0);
    auto h = P("(1,2)", 5);  // fixes 3 points
    CHECK(h.fix_k_count(2) == 6);
}

TEST_CASE("fix_k matches a direct count of fixed ordered tuples") {
    for (const auto& g : all_of_sym(4)) {
        for (int k = 1; k <= 2; ++k) {
            uint64_t direct = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (k == 1) {
                        if (j == 0 && g(i) == i) ++direct;
                    } else if (i != j && g(i) == i && g(j) == j) {
                        ++direct;
                    }
                }
            CHECK(g.fix_k_count(k) == direct);
        }
    }
}

TEST_CASE("cycle structure queries") {
    auto g = P("(1,2)(3,4,5)", 6);
    CHECK(g.same_cycle(0, 1));
    CHECK(g.same_cycle(2, 4));
    CHECK_FALSE(g.same_cycle(0, 2));
    CHECK(g.same_cycle(5, 5));
    CHECK_FALSE(g.same_cycle(0, 5));
    CHECK(g.cycles() == std::vector<std::vector<int>>{{0, 1}, {2, 3, 4}});
    CHECK(g.smallest_moved_point() == 0);
    // same_cycle is an equivalence relation on every permutation of S_5.
    for (const auto& h : all_of_sym(5))
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                CHECK(h.same_cycle(i, j) == h.same_cycle(j, i));
                for (int k = 0; k < 5; ++k)
                    if (h.same_cycle(i, j) && h.same_cycle(j, k)) CHECK(h.same_cycle(i, k));
            }
}

TEST_CASE("induced action on ordered pairs") {
    const int n = 5;
    // Index mapping is a bijection between pairs and 0..n(n-1)-1.
    std::vector<int> hit(n * (n - 1), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int idx = pair_index(n, i, j);
            auto [a, b] = pair_of_index(n, idx);
            CHECK(a == i);
            CHECK(b == j);
            ++hit[idx];
        }
    for (int h : hit) CHECK(h == 1);

    // Lifting is a homomorphism.
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_perm(n, rng), b = random_perm(n, rng);
        CHECK(a.compose(b).pair_lift() == a.pair_lift().compose(b.pair_lift()));
    }

    // A 5-cycle acts on the 20 ordered pairs with four cycles of length 5.
    auto c5 = P("(1,2,3,4,5)", 5).pair_lift();
    auto cyc = c5.cycles();
    CHECK(cyc.size() == 4);
    for (const auto& c : cyc) CHECK(c.size() == 5);
}

TEST_CASE("example group elements of degree 27") {
    auto s1 = P("(1,10,13)(2,24,6)(3,17,11)(4,23,8)(5,26,25)(7,18,12)(9,20,16)(14,27,19)(15,21,22)", 27);
    auto s2 = P("(1,18,13,22,10,11)(2,4,21,27,9,15)(3,20,26,5,14,7)(6,25,23)(8,12,17,24,16,19)", 27);
    CHECK(s1.is_even());
    CHECK(s2.is_even());
    CHECK(s1.fix_count() == 0);
    CHECK(s1.compose(s1).compose(s1).is_identity());
    CHECK_FALSE(s1.compose(s1).is_identity());
}

TEST_CASE("from_images validates bijections") {
    CHECK_THROWS_AS(Permutation::from_images(std::vector<int>{0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::from_images(std::vector<int>{0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::from_images(std::vector<int>{-1, 0}), std::invalid_argument);
}
