#include "grouprec/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace grouprec {

namespace {

double ell_of(int n) { return 1.0 - 1.0 / n - 8.8 / (double(n) * n); }
double u_of(int n) { return 1.0 - 1.0 / n - 0.93 / (double(n) * n); }

double falling_factorial(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
}

}  // namespace

double b_n(int n) {
    if (n < 5) throw std::invalid_argument("giant-test separation needs degree >= 5");
    double nn = double(n) * n;
    double disc = nn * nn + 2.0 * nn * n + 50.08 * nn - 13.88 * n - 199.584;
    return (3.0 * nn - n - 8.8 - std::sqrt(disc)) / (4.0 * nn - 15.74);
}

GiantTestConstants giant_constants(int n, double p_tilde) {
    if (n < 5) throw std::invalid_argument("giant-test separation needs degree >= 5");
    if (!(p_tilde >= 0.0) || p_tilde >= b_n(n))
        throw std::invalid_argument("giant test requires p_tilde < b_n (b_" + std::to_string(n) +
                                    " = " + std::to_string(b_n(n)) + ")");
    GiantTestConstants c;
    c.n = n;
    c.p_tilde = p_tilde;
    c.ell = ell_of(n);
    c.u = u_of(n);
    c.lower = (1.0 - p_tilde + p_tilde * p_tilde) * c.ell;
    c.upper = 2.0 * p_tilde * (1.0 - p_tilde) + p_tilde * p_tilde * c.u;
    c.threshold = (c.lower + c.upper) / 2.0;
    return c;
}

TestReport giant_test(SampleSource& src, double p_tilde, double alpha, Rng& rng,
                      uint64_t sample_cap) {
    const int n = src.degree();
    auto c = giant_constants(n, p_tilde);
    uint64_t before = src.raw_draws();
    auto res = distinguish(
        c.upper, c.lower, alpha,
        [&](Rng& g) {
            Permutation x1 = src.next(g), x2 = src.next(g);
            return giant_kind_of(n, {std::move(x1), std::move(x2)}, g) != GiantKind::neither ? 1.0
                                                                                             : 0.0;
        },
        rng, sample_cap);
    TestReport r;
    r.test = "giant";
    r.decision = res.mean_is_high;
    r.sample_mean = res.sample_mean;
    r.threshold = c.threshold;
    r.samples = res.samples;
    r.raw_draws = src.raw_draws() - before;
    r.confidence = res.confidence;
    r.meta["n"] = n;
    r.meta["p_tilde"] = p_tilde;
    r.meta["L"] = c.lower;
    r.meta["U"] = c.upper;
    r.meta["b_n"] = b_n(n);
    return r;
}

TestReport subgroup_test_pred(SampleSource& src, const std::function<bool(const Permutation&)>& in_h,
                              double order_ratio_h, double p_tilde, double alpha, Rng& rng,
                              uint64_t sample_cap, uint64_t n_override) {
    if (!(order_ratio_h > 0.0) || order_ratio_h >= 1.0)
        throw std::invalid_argument("subgroup test requires a proper subgroup H");
    if (p_tilde < 0.0 || p_tilde > 0.5)
        throw std::invalid_argument("subgroup test requires p_tilde <= 1/2");
    double c = 0.75 - p_tilde * (1.0 - order_ratio_h) / 2.0;
    double delta = c - 0.5;
    uint64_t n_samples = n_override ? n_override : required_samples(alpha, delta);
    if (n_samples > sample_cap)
        throw budget_error("subgroup test needs " + std::to_string(n_samples) + " draws, cap is " +
                           std::to_string(sample_cap));
    uint64_t before = src.raw_draws();
    uint64_t hits = 0;
    for (uint64_t i = 0; i < n_samples; ++i) hits += in_h(src.next(rng)) ? 1 : 0;
    double mean = double(hits) / double(n_samples);
    TestReport r;
    r.test = "subgroup";
    r.decision = mean >= c;
    r.sample_mean = mean;
    r.threshold = c;
    r.samples = n_samples;
    r.raw_draws = src.raw_draws() - before;
    r.confidence = 1.0 - std::exp(-2.0 * delta * delta * double(n_samples));
    r.meta["p_tilde"] = p_tilde;
    r.meta["order_ratio_h"] = order_ratio_h;
    r.meta["delta"] = delta;
    return r;
}

TestReport subgroup_test(SampleSource& src, const PermutationGroup& h, double p_tilde, double alpha,
                         Rng& rng, uint64_t sample_cap) {
    if (h.degree() != src.degree()) throw std::invalid_argument("degree mismatch");
    return subgroup_test_pred(
        src, [&](const Permutation& x) { return h.contains(x); },
        order_ratio(h.order(), h.degree()), p_tilde, alpha, rng, sample_cap);
}

TestReport alternating_test(SampleSource& src, double p_tilde, double alpha, Rng& rng,
                            uint64_t sample_cap) {
    auto r = subgroup_test_pred(
        src, [](const Permutation& x) { return x.is_even(); }, 0.5, p_tilde, alpha, rng, sample_cap);
    r.test = "alternating";
    return r;
}

TestReport block_test(SampleSource& src, const OrbitPartition& blocks, double p_tilde, double alpha,
                      Rng& rng, uint64_t sample_cap) {
    double ratio = order_ratio(wreath_order(blocks), src.degree());
    auto r = subgroup_test_pred(
        src, [&](const Permutation& x) { return in_wreath(x, blocks); }, ratio, p_tilde, alpha, rng,
        sample_cap);
    r.test = "block";
    return r;
}

TestReport orbit_refining_test(SampleSource& src, const OrbitPartition& parts, double p_tilde,
                               double alpha, Rng& rng, uint64_t sample_cap, uint64_t n_override) {
    double ratio = order_ratio(young_order(parts), src.degree());
    auto r = subgroup_test_pred(
        src, [&](const Permutation& x) { return in_young(x, parts); }, ratio, p_tilde, alpha, rng,
        sample_cap, n_override);
    r.test = "orbit_refining";
    return r;
}

TestReport k_transitivity_test(SampleSource& src, int k, double p_tilde, double alpha, Rng& rng,
                               uint64_t sample_cap) {
    const int n = src.degree();
    if (k < 1 || k > n) throw std::invalid_argument("k out of range");
    if (p_tilde < 0.0 || p_tilde >= 1.0)
        throw std::invalid_argument("k-transitivity test requires p_tilde < 1");
    // E Fix_k(X) = (1-p) m + p where m is the orbit count of G on distinct
    // k-tuples: m = 1 when k-transitive, m >= 2 otherwise.  The statistic is
    // normalized by the falling factorial to land in [0, 1].
    double ff = falling_factorial(n, k);
    double a = 1.0 / ff;                  // k-transitive mean
    double b = (2.0 - p_tilde) / ff;      // non-k-transitive mean lower bound
    uint64_t before = src.raw_draws();
    auto res = distinguish(
        a, b, alpha, [&](Rng& g) { return double(src.next(g).fix_k_count(k)) / ff; }, rng,
        sample_cap);
    TestReport r;
    r.test = "transitivity";
    r.decision = !res.mean_is_high;  // low mean = one orbit on k-tuples
    r.sample_mean = res.sample_mean * ff;
    r.threshold = (3.0 - p_tilde) / 2.0;  // raw Fix_k scale
    r.samples = res.samples;
    r.raw_draws = src.raw_draws() - before;
    r.confidence = res.confidence;
    r.meta["k"] = k;
    r.meta["p_tilde"] = p_tilde;
    r.meta["delta"] = (1.0 - p_tilde) / (2.0 * ff);
    return r;
}

TestReport orbit_agreement(SampleSource& src, int i, int j, double p_tilde, double alpha, Rng& rng,
                           uint64_t sample_cap) {
    const int n = src.degree();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw std::invalid_argument("orbit agreement requires distinct points in range");
    if (p_tilde < 0.0 || p_tilde >= 1.0) throw std::invalid_argument("p_tilde must lie in [0, 1)");
    double a = p_tilde / n, b = 1.0 / n;
    uint64_t before = src.raw_draws();
    auto res = distinguish(
        a, b, alpha, [&](Rng& g) { return src.next(g)(i) == j ? 1.0 : 0.0; }, rng, sample_cap);
    TestReport r;
    r.test = "orbit_agree";
    r.decision = res.mean_is_high;
    r.sample_mean = res.sample_mean;
    r.threshold = (1.0 + p_tilde) / (2.0 * n);
    r.samples = res.samples;
    r.raw_draws = src.raw_draws() - before;
    r.confidence = res.confidence;
    r.meta["i"] = i;
    r.meta["j"] = j;
    r.meta["p_tilde"] = p_tilde;
    return r;
}

std::vector<int> single_orbit_recovery(SampleSource& src, int i, double p_tilde, double alpha,
                                       Rng& rng, uint64_t sample_cap) {
    const int n = src.degree();
    if (i < 0 || i >= n) throw std::invalid_argument("point out of range");
    if (p_tilde < 0.0 || p_tilde >= 1.0) throw std::invalid_argument("p_tilde must lie in [0, 1)");
    double delta = (1.0 - p_tilde) / (2.0 * n);
    uint64_t n_samples = required_samples(alpha / n, delta);
    if (n_samples > sample_cap)
        throw budget_error("single orbit recovery needs " + std::to_string(n_samples) + " draws");
    std::vector<uint64_t> u(n, 0);
    for (uint64_t s = 0; s < n_samples; ++s) ++u[src.next(rng)(i)];
    double c = (1.0 + p_tilde) / (2.0 * n);
    std::vector<int> orbit;
    for (int j = 0; j < n; ++j)
        if (j == i || double(u[j]) / double(n_samples) > c) orbit.push_back(j);
    return orbit;
}

OrbitPartition orbit_recovery(SampleSource& src, double p_tilde, double alpha, Rng& rng,
                              uint64_t sample_cap) {
    const int n = src.degree();
    // G has at most n orbits; splitting the confidence as if all n calls
    // happen keeps the union bound valid without knowing the count upfront.
    double per_call_alpha = 1.0 - std::pow(1.0 - alpha, 1.0 / n);
    std::vector<int> assigned(n, -1);
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) {
        if (assigned[i] >= 0) continue;
        auto orbit = single_orbit_recovery(src, i, p_tilde, per_call_alpha, rng, sample_cap);
        for (int x : orbit)
            if (assigned[x] >= 0)
                throw statistical_error(
                    "orbit recovery produced overlapping orbits; sample was inconsistent");
        for (int x : orbit) assigned[x] = static_cast<int>(blocks.size());
        blocks.push_back(std::move(orbit));
    }
    return OrbitPartition::of(std::move(blocks));
}

TestReport orbit_confirmation(SampleSource& src, const std::vector<int>& candidate, double p_tilde,
                              double alpha, Rng& rng, uint64_t sample_cap) {
    const int n = src.degree();
    if (candidate.empty()) throw std::invalid_argument("candidate orbit is empty");
    std::vector<int> sorted = candidate;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || sorted.back() >= n) throw std::invalid_argument("point out of range");
    double phase_alpha = 1.0 - std::sqrt(1.0 - alpha);

    TestReport r;
    r.test = "orbit_confirmation";
    uint64_t before = src.raw_draws();

    bool phase1 = true;
    if (sorted.size() < static_cast<size_t>(n)) {
        std::vector<int> rest;
        for (int x = 0; x < n; ++x)
            if (!std::binary_search(sorted.begin(), sorted.end(), x)) rest.push_back(x);
        auto parts = OrbitPartition::of({sorted, rest});
        uint64_t n1 = required_samples(phase_alpha, (1.0 - p_tilde) / 4.0);
        auto rep1 = orbit_refining_test(src, parts, p_tilde, phase_alpha, rng, sample_cap, n1);
        phase1 = rep1.decision;
        r.samples += rep1.samples;
        r.meta["phase1_mean"] = rep1.sample_mean;
    }
    r.meta["phase1_pass"] = phase1 ? 1.0 : 0.0;

    bool phase2 = false;
    if (phase1) {
        ConstituentSource cons(src, sorted);
        double delta2 = (1.0 - p_tilde) / (2.0 * double(sorted.size()));
        uint64_t n2 = required_samples(phase_alpha, delta2);
        if (n2 > sample_cap) throw budget_error("orbit confirmation transitivity phase over budget");
        // Transitivity of the constituent via the k = 1 fixed-point statistic.
        double sum = 0.0;
        double m = double(sorted.size());
        for (uint64_t s = 0; s < n2; ++s) sum += double(cons.next(rng).fix_count()) / m;
        double mean = sum * m / double(n2);
        phase2 = mean < (3.0 - p_tilde) / 2.0;
        r.samples += n2;
        r.meta["phase2_mean"] = mean;
    }
    r.meta["phase2_pass"] = phase2 ? 1.0 : 0.0;

    r.decision = phase1 && phase2;
    r.raw_draws = src.raw_draws() - before;
    r.confidence = 1.0 - alpha;
    return r;
}

namespace {

// Connected components of the graph on {0..n-1} with the given edges.
OrbitPartition components_of(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (auto [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> blk = {i};
        comp[i] = static_cast<int>(blocks.size());
        for (size_t k = 0; k < blk.size(); ++k)
            for (int j : adj[blk[k]])
                if (comp[j] < 0) { comp[j] = comp[i]; blk.push_back(j); }
        blocks.push_back(std::move(blk));
    }
    return OrbitPartition::of(std::move(blocks));
}

OrbitPartition heuristic_two_pass(SampleSource& src, uint64_t n_samples, double t, double p_tilde,
                                  Rng& rng) {
    const int n = src.degree();
    std::vector<std::vector<uint64_t>> freq(n, std::vector<uint64_t>(n, 0));
    for (uint64_t s = 0; s < n_samples; ++s) {
        Permutation x = src.next(rng);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (x.same_cycle(i, j)) { ++freq[i][j]; ++freq[j][i]; }
    }
    std::vector<std::pair<int, int>> distinct;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (double(freq[i][j]) < t) distinct.push_back({i, j});

    FilteredSampler filtered(src, [distinct](const Permutation& x) {
        for (auto [i, j] : distinct)
            if (x.same_cycle(i, j)) return false;
        return true;
    });
    std::vector<std::vector<uint64_t>> freq2(n, std::vector<uint64_t>(n, 0));
    for (uint64_t s = 0; s < n_samples; ++s) {
        Permutation x = filtered.next(rng);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (x.same_cycle(i, j)) { ++freq2[i][j]; ++freq2[j][i]; }
    }
    double t2 = double(n_samples) * p_tilde / 2.0;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (double(freq2[i][j]) > t2) edges.push_back({i, j});
    return components_of(n, edges);
}

}  // namespace

OrbitPartition heuristic_orbit_recovery(SampleSource& src, uint64_t n_samples, double t,
                                        HeuristicMode mode, double p_tilde, Rng& rng, double alpha,
                                        uint64_t sample_cap) {
    if (n_samples < 1) throw std::invalid_argument("need at least one sample");
    if (t <= 0.0) t = double(n_samples) * p_tilde / 2.0;
    if (mode == HeuristicMode::non_adaptive) return heuristic_two_pass(src, n_samples, t, p_tilde, rng);

    const int max_rounds = 8;
    for (int round = 0; round < max_rounds; ++round) {
        auto parts = heuristic_two_pass(src, n_samples, t, p_tilde, rng);
        bool refine_fail = false, transitivity_fail = false;
        for (const auto& blk : parts.blocks) {
            auto rep = orbit_confirmation(src, blk, p_tilde, alpha, rng, sample_cap);
            if (rep.decision) continue;
            if (rep.meta.at("phase1_pass") == 0.0)
                refine_fail = true;  // candidate too coarse: points leak out
            else
                transitivity_fail = true;  // candidate too fine: not one orbit
        }
        if (!refine_fail && !transitivity_fail) return parts;
        // Too coarse means spurious same-cycle counts survived the cut, so
        // raise the bar; too fine means real orbit pairs were cut, so lower it.
        if (refine_fail)
            t *= 2.0;
        else
            t /= 2.0;
    }
    throw statistical_error("adaptive heuristic orbit recovery: rounds exhausted");
}

OrbitPartition heuristic_orbit_recovery_fixed(const std::vector<Permutation>& samples, double t,
                                              double p_tilde) {
    if (samples.empty()) throw std::invalid_argument("need at least one sample");
    const int n = samples[0].degree();
    if (t <= 0.0) t = double(samples.size()) * p_tilde / 2.0;
    std::vector<std::vector<uint64_t>> freq(n, std::vector<uint64_t>(n, 0));
    for (const auto& x : samples)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (x.same_cycle(i, j)) { ++freq[i][j]; ++freq[j][i]; }
    std::vector<std::pair<int, int>> distinct;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (double(freq[i][j]) < t) distinct.push_back({i, j});

    // No fresh draws are available, so pass 2 keeps only the observations
    // that satisfy the pass-1 detector and rescales the threshold to the
    // survivor count.
    std::vector<std::vector<uint64_t>> freq2(n, std::vector<uint64_t>(n, 0));
    uint64_t survivors = 0;
    for (const auto& x : samples) {
        bool ok = true;
        for (auto [i, j] : distinct)
            if (x.same_cycle(i, j)) { ok = false; break; }
        if (!ok) continue;
        ++survivors;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (x.same_cycle(i, j)) { ++freq2[i][j]; ++freq2[j][i]; }
    }
    double t2 = double(survivors) * p_tilde / 2.0;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (double(freq2[i][j]) > t2) edges.push_back({i, j});
    return components_of(n, edges);
}

std::vector<OrbitPartition> minimal_block_recovery(SampleSource& src, double p_tilde, double alpha,
                                                   Rng& rng, uint64_t sample_cap,
                                                   uint64_t heuristic_n) {
    const int n = src.degree();
    PairSource pairs(src);
    OrbitPartition pair_orbits =
        heuristic_n > 0
            ? heuristic_orbit_recovery(pairs, heuristic_n, -1.0, HeuristicMode::non_adaptive,
                                       p_tilde, rng, alpha, sample_cap)
            : orbit_recovery(pairs, p_tilde, alpha, rng, sample_cap);

    std::vector<OrbitPartition> found;
    for (const auto& orbital : pair_orbits.blocks) {
        // Component decomposition of the orbital graph on the n points.
        std::vector<std::pair<int, int>> edges;
        bool diagonal_like = true;
        for (int idx : orbital) {
            auto [i, j] = pair_of_index(n, idx);
            edges.push_back({i, j});
            if (i != j) diagonal_like = false;
        }
        if (diagonal_like) continue;
        auto comps = components_of(n, edges);
        if (comps.is_trivial()) continue;
        if (std::find(found.begin(), found.end(), comps) == found.end()) found.push_back(comps);
    }
    std::vector<OrbitPartition> minimal;
    for (const auto& p : found) {
        bool has_finer = false;
        for (const auto& q : found)
            if (!(q == p) && q.refines(p)) { has_finer = true; break; }
        if (!has_finer) minimal.push_back(p);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

TestReport primitivity_test(SampleSource& src, double p_tilde, double alpha, Rng& rng,
                            uint64_t sample_cap, uint64_t heuristic_n) {
    uint64_t before = src.raw_draws();
    auto systems = minimal_block_recovery(src, p_tilde, alpha, rng, sample_cap, heuristic_n);
    TestReport r;
    r.test = "primitivity";
    r.decision = systems.empty();
    r.raw_draws = src.raw_draws() - before;
    r.confidence = 1.0 - alpha;
    r.meta["block_systems_found"] = double(systems.size());
    r.caveats.push_back(
        "pair-action sampling is not itself a uniform mixture; confidence bounds are heuristic");
    return r;
}

}  // namespace grouprec
