#pragma once

#include <cstdint>
#include <stdexcept>
#include <functional>
#include <map>
#include <json.hpp>
#include <string>
#include <vector>

#include "grouprec/sampling.hpp"

namespace grouprec {

/// Thrown when a test or pipeline would exceed its draw budget.
class budget_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when observed data is inconsistent with any single group
/// (e.g. recovered orbits overlap), signaling a statistical failure.
class statistical_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Samples needed so that the mean of N [0,1]-valued draws deviates from its
/// expectation by at least delta with probability at most alpha (one-sided
/// Hoeffding bound): ceil(-ln(alpha) / (2 delta^2)).
uint64_t required_samples(double alpha, double delta);

/// Guard for sample budgets: throws std::runtime_error when a test would need
/// more than this many draws.  Callers may raise it explicitly.
inline constexpr uint64_t kDefaultSampleCap = 10'000'000;

struct DistinguishResult {
    bool mean_is_high;   // decided "mean >= b" rather than "mean <= a"
    double sample_mean;
    uint64_t samples;
    double confidence;   // 1 - exp(-2 delta^2 N)
};

/// Decides between "the statistic has mean <= a" and "mean >= b" (a < b) from
/// N = required_samples(alpha, (b-a)/2) draws of a [0,1]-valued statistic,
/// comparing the sample mean against the midpoint (ties go to the high side).
/// Statistic values outside [0,1] are a hard error.
DistinguishResult distinguish(double a, double b, double alpha,
                              const std::function<double(Rng&)>& statistic, Rng& rng,
                              uint64_t sample_cap = kDefaultSampleCap);

/// Outcome of one hypothesis test, in a shape shared by every test in the
/// suite so reports can be aggregated and serialized uniformly.
struct TestReport {
    std::string test;          // e.g. "giant", "subgroup", "transitivity"
    bool decision = false;
    double sample_mean = 0.0;
    double threshold = 0.0;
    uint64_t samples = 0;      // statistic evaluations
    uint64_t raw_draws = 0;    // oracle draws consumed (>= samples when filtering)
    double confidence = 0.0;
    std::map<std::string, double> meta;     // test-specific numbers (bounds, k, ...)
    std::vector<std::string> caveats;       // soft warnings attached to the result

    nlohmann::json to_json() const;
};

}  // namespace grouprec
