#include <doctest.h>

#include <stdexcept>

#include "grouprec/stats.hpp"

using namespace grouprec;

TEST_CASE("sample-count formula") {
    CHECK(required_samples(0.01, 0.09414) == 260);
    CHECK(required_samples(0.01, 0.125) == 148);
    CHECK(required_samples(0.001, 0.43055) == 19);
    CHECK(required_samples(0.05, 0.1) == 150);
    CHECK_THROWS_AS(required_samples(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(required_samples(1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(required_samples(0.1, 0.0), std::invalid_argument);
}

TEST_CASE("distinguisher separates close Bernoulli means") {
    // Repeated runs at alpha = 0.05 should essentially never miss means that
    // sit exactly on the two hypotheses.
    Rng rng(2024);
    int wrong = 0;
    const int runs = 200;
    for (int r = 0; r < runs; ++r) {
        double mean = (r % 2 == 0) ? 0.3 : 0.5;
        std::bernoulli_distribution d(mean);
        auto res = distinguish(0.3, 0.5, 0.05, [&](Rng& g) { return d(g) ? 1.0 : 0.0; }, rng);
        wrong += res.mean_is_high != (r % 2 == 1);
        CHECK(res.samples == required_samples(0.05, 0.1));
        CHECK(res.confidence >= 0.95);
    }
    // Hoeffding guarantees error rate <= 0.05 per run; allow generous slack.
    CHECK(wrong <= 20);
}

TEST_CASE("distinguisher input validation") {
    Rng rng(1);
    auto zero = [](Rng&) { return 0.0; };
    CHECK_THROWS_AS(distinguish(0.5, 0.5, 0.1, zero, rng), std::invalid_argument);
    CHECK_THROWS_AS(distinguish(0.6, 0.4, 0.1, zero, rng), std::invalid_argument);
    CHECK_THROWS_AS(distinguish(-0.1, 0.5, 0.1, zero, rng), std::invalid_argument);
    CHECK_THROWS_AS(distinguish(0.5, 1.1, 0.1, zero, rng), std::invalid_argument);
    // Statistic outside [0,1] is a hard error.
    CHECK_THROWS_AS(distinguish(0.3, 0.5, 0.1, [](Rng&) { return 1.5; }, rng), std::runtime_error);
    // Sample budget guard.
    CHECK_THROWS_AS(distinguish(0.4999, 0.5001, 0.01, zero, rng, 1000), std::runtime_error);
}

TEST_CASE("ties decide for the high mean") {
    Rng rng(3);
    // Constant statistic exactly at the midpoint.
    auto res = distinguish(0.2, 0.6, 0.1, [](Rng&) { return 0.4; }, rng);
    CHECK(res.mean_is_high);
    CHECK(res.sample_mean == doctest::Approx(0.4));
}

TEST_CASE("report serialization") {
    TestReport r;
    r.test = "giant";
    r.decision = true;
    r.sample_mean = 0.7;
    r.threshold = 0.65;
    r.samples = 260;
    r.raw_draws = 520;
    r.confidence = 0.99;
    r.meta["n"] = 27;
    r.caveats.push_back("unverified");
    auto j = r.to_json();
    CHECK(j["test"] == "giant");
    CHECK(j["decision"] == true);
    CHECK(j["samples"] == 260);
    CHECK(j["meta"]["n"] == 27);
    CHECK(j["caveats"][0] == "unverified");
}
