#include "grouprec/stats.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace grouprec {

uint64_t required_samples(double alpha, double delta) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    return static_cast<uint64_t>(std::ceil(-std::log(alpha) / (2.0 * delta * delta)));
}

DistinguishResult distinguish(double a, double b, double alpha,
                              const std::function<double(Rng&)>& statistic, Rng& rng,
                              uint64_t sample_cap) {
    if (!(a < b)) throw std::invalid_argument("distinguish requires a < b");
    if (a < 0.0 || b > 1.0) throw std::invalid_argument("distinguish thresholds must lie in [0, 1]");
    double delta = (b - a) / 2.0;
    uint64_t n = required_samples(alpha, delta);
    if (n > sample_cap)
        throw budget_error("sample budget exceeded: test needs " + std::to_string(n) +
                                 " draws, cap is " + std::to_string(sample_cap));
    double sum = 0.0;
    for (uint64_t i = 0; i < n; ++i) {
        double x = statistic(rng);
        if (!(x >= 0.0 && x <= 1.0))
            throw std::runtime_error("statistic produced a value outside [0, 1]: " + std::to_string(x));
        sum += x;
    }
    double mean = sum / static_cast<double>(n);
    return DistinguishResult{
        .mean_is_high = mean >= (a + b) / 2.0,
        .sample_mean = mean,
        .samples = n,
        .confidence = 1.0 - std::exp(-2.0 * delta * delta * static_cast<double>(n)),
    };
}

nlohmann::json TestReport::to_json() const {
    nlohmann::json j{
        {"test", test},
        {"decision", decision},
        {"sample_mean", sample_mean},
        {"threshold", threshold},
        {"samples", samples},
        {"raw_draws", raw_draws},
        {"confidence", confidence},
    };
    if (!meta.empty()) j["meta"] = meta;
    if (!caveats.empty()) j["caveats"] = caveats;
    return j;
}

}  // namespace grouprec
