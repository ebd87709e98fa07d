#include "grouprec/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "grouprec/tables.hpp"

namespace grouprec {

namespace {

double hoeffding_radius(double alpha, uint64_t n_samples) {
    if (n_samples == 0) return 1.0;
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * double(n_samples)));
}

double giant_rate_lower(int n) { return 1.0 - 1.0 / n - 8.8 / (double(n) * n); }

/// Tightens the ledger's p-interval; an empty intersection flags the ledger
/// inconsistent and keeps the wider (previous) interval.
void tighten_p(KnowledgeLedger& ledger, double lo, double hi, const std::string& source) {
    lo = std::max(0.0, lo);
    hi = std::min(1.0, hi);
    double new_lo = std::max(ledger.p_low, lo);
    double new_hi = std::min(ledger.p_tilde, hi);
    if (new_lo > new_hi + 1e-12) {
        ledger.inconsistent = true;
        ledger.log.push_back({source, "p-interval update would be empty; kept previous bounds"});
        return;
    }
    ledger.p_low = new_lo;
    ledger.p_tilde = new_hi;
}

void tighten_m(KnowledgeLedger& ledger, int m, const std::string& source, const std::string& why) {
    if (m < ledger.m_tilde) {
        ledger.m_tilde = m;
        ledger.log.push_back({source, why + " (m_tilde = " + std::to_string(m) + ")"});
    }
}

void add_perm_detector(KnowledgeLedger& ledger, std::string fact, PermPredicate pred, double mass,
                       const std::string& source) {
    ledger.perm_detectors.emplace_back(fact, std::move(pred));
    ledger.b_tilde = std::min(ledger.b_tilde, mass);
    ledger.log.push_back({source, "permutation detector: " + fact});
}

bool has_full_cycle(const Permutation& x) {
    for (const auto& c : x.cycles())
        if (int(c.size()) == x.degree()) return true;
    return false;
}

bool is_jordan_witness(const Permutation& x) {
    const int n = x.degree();
    auto prime = [](int p) {
        if (p < 2) return false;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    };
    for (const auto& c : x.cycles()) {
        int len = int(c.size());
        if (2 * len > n && len <= n - 3 && prime(len)) return true;
    }
    return false;
}

/// Largest order of a proper wreath-type overgroup at degree n: max over
/// divisors 1 < d < n of (n/d)! * (d!)^(n/d).
BigInt max_imprimitive_order(int n) {
    BigInt best = 1;
    for (int d = 2; d < n; ++d) {
        if (n % d != 0) continue;
        int m = n / d;
        BigInt w = factorial(m);
        BigInt df = factorial(d);
        for (int i = 0; i < m; ++i) w *= df;
        best = std::max(best, w);
    }
    return best;
}

std::vector<Permutation> symmetric_gens(int n) {
    std::vector<int> cyc(n), swp(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n, swp[i] = i;
    std::swap(swp[0], swp[1]);
    return {Permutation::from_images(swp), Permutation::from_images(cyc)};
}

std::vector<Permutation> alternating_gens(int n) {
    std::vector<Permutation> gens;
    for (int i = 2; i < n; ++i) {
        std::vector<int> img(n);
        for (int j = 0; j < n; ++j) img[j] = j;
        img[0] = 1, img[1] = i, img[i] = 0;  // the 3-cycle (0 1 i)
        gens.push_back(Permutation::from_images(img));
    }
    return gens;
}

/// Sorted strong-generator image lists, the lexicographic tie-break key.
std::vector<std::vector<int>> canonical_key(const PermutationGroup& g) {
    std::vector<std::vector<int>> key;
    for (const auto& s : g.chain().strong_generators()) {
        std::vector<int> img(g.degree());
        for (int i = 0; i < g.degree(); ++i) img[i] = s(i);
        key.push_back(std::move(img));
    }
    std::sort(key.begin(), key.end());
    return key;
}

}  // namespace

int ceil_log2(const BigInt& order) {
    if (order <= 1) return 0;
    unsigned bit = boost::multiprecision::msb(order);
    BigInt pow2 = BigInt(1) << bit;
    return int(bit) + (order > pow2 ? 1 : 0);
}

GensPredicate non_giant_detector() {
    return [](int n, const std::vector<Permutation>& gens, Rng& rng) {
        return giant_kind_of(n, gens, rng) == GiantKind::neither;
    };
}

GensPredicate group_detector(std::function<bool(const PermutationGroup&)> q) {
    return [q = std::move(q)](int n, const std::vector<Permutation>& gens, Rng&) {
        return q(PermutationGroup::from_generators(n, gens));
    };
}

PermutationGroup naive_recover(SampleSource& src, int k, Rng& rng) {
    std::vector<Permutation> gens;
    gens.reserve(k);
    for (int i = 0; i < k; ++i) gens.push_back(src.next(rng));
    return PermutationGroup::from_generators(src.degree(), std::move(gens));
}

QDetectedResult q_detected_recover(SampleSource& src, int k, const GensPredicate& q,
                                   uint64_t max_tries, Rng& rng) {
    for (uint64_t t = 1; t <= max_tries; ++t) {
        std::vector<Permutation> gens;
        gens.reserve(k);
        for (int i = 0; i < k; ++i) gens.push_back(src.next(rng));
        if (!q || q(src.degree(), gens, rng))
            return {PermutationGroup::from_generators(src.degree(), std::move(gens)), t};
    }
    throw budget_error("error-detected recovery rejected " + std::to_string(max_tries) + " runs");
}

KnowledgeLedger KnowledgeLedger::initial(int n, double p_tilde) {
    KnowledgeLedger l;
    l.n = n;
    l.p_tilde = p_tilde;
    l.m_tilde = ceil_log2(factorial(n));
    return l;
}

bool KnowledgeLedger::detector_accepts(const Permutation& x) const {
    for (const auto& [fact, pred] : perm_detectors)
        if (!pred(x)) return false;
    return true;
}

bool KnowledgeLedger::group_accepts(int n, const std::vector<Permutation>& gens, Rng& rng) const {
    for (const auto& [fact, pred] : group_detectors)
        if (!pred(n, gens, rng)) return false;
    return true;
}

nlohmann::json KnowledgeLedger::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["p_low"] = p_low;
    j["p_tilde"] = p_tilde;
    j["m_tilde"] = m_tilde;
    j["b_tilde"] = b_tilde;
    j["inconsistent"] = inconsistent;
    auto opt = [](const std::optional<bool>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    j["giant"] = opt(giant);
    j["transitive"] = opt(transitive);
    j["primitive"] = opt(primitive);
    if (orbits) {
        nlohmann::json o = nlohmann::json::array();
        for (const auto& blk : orbits->blocks) {
            nlohmann::json pts = nlohmann::json::array();
            for (int p : blk) pts.push_back(p + 1);
            o.push_back(pts);
        }
        j["orbits"] = o;
    }
    j["block_system_count"] = block_systems.size();
    nlohmann::json dets = nlohmann::json::array();
    for (const auto& [fact, pred] : perm_detectors) dets.push_back(fact);
    j["perm_detectors"] = dets;
    nlohmann::json gdets = nlohmann::json::array();
    for (const auto& [fact, pred] : group_detectors) gdets.push_back(fact);
    j["group_detectors"] = gdets;
    nlohmann::json log_j = nlohmann::json::array();
    for (const auto& note : log) log_j.push_back({{"source", note.source}, {"fact", note.fact}});
    j["log"] = log_j;
    return j;
}

void update_ledger(KnowledgeLedger& ledger, const TestReport& report, double alpha) {
    const int n = ledger.n;
    const double eps = hoeffding_radius(alpha, report.samples);
    const double mean = report.sample_mean;

    if (report.test == "giant") {
        ledger.giant = report.decision;
        if (report.decision) {
            ledger.transitive = true;
            ledger.primitive = true;
            ledger.log.push_back({"giant", "G is a giant (A_n or S_n)"});
        } else {
            ledger.log.push_back({"giant", "G is not a giant"});
            ledger.group_detectors.emplace_back("not a giant", non_giant_detector());
            tighten_m(ledger, ceil_log2(factorial(n - 1)), "giant", "non-giant: |G| <= (n-1)!");
            // Mean over trials is at most p(2-p) u + ... <= p^2-free part; the
            // usable direction is mean >= L p^2 terms, giving p <= sqrt((mean
            // + eps) / ell(n)).
            double num = mean + eps;
            if (num >= 0.0) tighten_p(ledger, 0.0, std::sqrt(num / giant_rate_lower(n)), "giant");
        }
        return;
    }

    if (report.test == "subgroup" || report.test == "alternating" || report.test == "block" ||
        report.test == "orbit_refining") {
        double r = report.meta.at("order_ratio_h");
        if (report.decision) {
            // G <= H: membership frequency is 1 - p (1 - r), so
            // p = (1 - mean) / (1 - r) up to the Hoeffding radius.
            tighten_p(ledger, (1.0 - mean - eps) / (1.0 - r), (1.0 - mean + eps) / (1.0 - r),
                      report.test);
            double log2_h = std::log2(r) + double(ceil_log2(factorial(n)));
            tighten_m(ledger, int(std::ceil(log2_h)), report.test, "G <= H: |G| <= |H|");
        } else if (r < 0.5) {
            // G not<= H: membership frequency <= 1/2 + p (r - 1/2)... rearranged
            // p <= (1/2 - (mean - eps)) / (1/2 - r) when the frequency fell
            // below 1/2.
            double hi = (0.5 - (mean - eps)) / (0.5 - r);
            if (hi >= 0.0) tighten_p(ledger, 0.0, hi, report.test);
        }
        return;
    }

    if (report.test == "transitivity") {
        int k = int(report.meta.at("k"));
        if (report.decision) {
            ledger.transitive = true;
            if (k >= 2) {
                ledger.primitive = true;  // 2-transitive implies primitive
                ledger.log.push_back(
                    {"transitivity", std::to_string(k) + "-transitive (hence primitive)"});
            } else {
                ledger.log.push_back({"transitivity", "G is transitive"});
            }
            // |G| <= 4^n holds for primitive non-giant groups; only apply the
            // bound once primitivity is on the ledger.
            if (ledger.primitive == std::optional<bool>(true) &&
                ledger.giant == std::optional<bool>(false))
                tighten_m(ledger, 2 * n, "transitivity", "primitive non-giant: |G| <= 4^n");
        } else if (k == 1) {
            ledger.transitive = false;
            ledger.log.push_back({"transitivity", "G is intransitive"});
            add_perm_detector(
                ledger, "no n-cycle", [](const Permutation& x) { return !has_full_cycle(x); },
                1.0 - 1.0 / n, "transitivity");
            tighten_m(ledger, ceil_log2(factorial(n - 1)), "transitivity",
                      "intransitive: |G| <= (n-1)!");
            // Raw mean is (1 - p) m + p with unknown orbit count m >= 2: the
            // p-interval row needs m, so no p update here.
        }
        return;
    }

    if (report.test == "orbit_agree") {
        int i = int(report.meta.at("i")), j = int(report.meta.at("j"));
        if (!report.decision) {
            add_perm_detector(
                ledger, "points " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            " in distinct cycles",
                [i, j](const Permutation& x) { return !x.same_cycle(i, j); }, 0.5, "orbit_agree");
            tighten_m(ledger, ceil_log2(factorial(n - 1)), "orbit_agree",
                      "intransitive: |G| <= (n-1)!");
            ledger.transitive = false;
            // Agreement frequency is p / n in the distinct-orbit case:
            // p in n * (mean -+ eps).
            tighten_p(ledger, n * (mean - eps), n * (mean + eps), "orbit_agree");
        } else {
            ledger.log.push_back({"orbit_agree", "points share an orbit"});
        }
        return;
    }

    if (report.test == "primitivity") {
        ledger.primitive = report.decision;
        if (report.decision) {
            ledger.transitive = true;
            if (n >= 8 && n <= 34) {
                double jordan = element_class_proportions(n).jordan;
                add_perm_detector(
                    ledger, "no long prime cycle",
                    [](const Permutation& x) { return !is_jordan_witness(x); }, 1.0 - jordan,
                    "primitivity");
            }
            if (ledger.giant == std::optional<bool>(false))
                tighten_m(ledger, 2 * n, "primitivity", "primitive non-giant: |G| <= 4^n");
        } else {
            tighten_m(ledger, ceil_log2(max_imprimitive_order(n)), "primitivity",
                      "imprimitive: |G| bounded by the largest proper wreath overgroup");
        }
        for (const auto& c : report.caveats) ledger.log.push_back({"primitivity", c});
        return;
    }

    ledger.log.push_back({report.test, report.decision ? "accepted" : "rejected"});
}

void update_ledger(KnowledgeLedger& ledger, const OrbitPartition& orbits) {
    ledger.orbits = orbits;
    ledger.transitive = orbits.blocks.size() == 1;
    if (orbits.blocks.size() > 1) {
        BigInt young = young_order(orbits);
        add_perm_detector(
            ledger, "preserves recovered orbits",
            [orbits](const Permutation& x) { return in_young(x, orbits); },
            order_ratio(young, ledger.n), "orbit_recovery");
        tighten_m(ledger, ceil_log2(young), "orbit_recovery", "G inside the Young subgroup");
    } else {
        ledger.log.push_back({"orbit_recovery", "single orbit: G is transitive"});
    }
}

void update_ledger(KnowledgeLedger& ledger, const std::vector<OrbitPartition>& blocks) {
    ledger.block_systems = blocks;
    if (blocks.empty()) {
        ledger.primitive = true;
        ledger.log.push_back({"block_recovery", "no block system: G is primitive"});
        return;
    }
    ledger.primitive = false;
    BigInt min_wreath = factorial(ledger.n);
    for (const auto& b : blocks) {
        BigInt w = wreath_order(b);
        add_perm_detector(
            ledger,
            "preserves a block system with " + std::to_string(b.blocks.size()) + " blocks",
            [b](const Permutation& x) { return in_wreath(x, b); }, order_ratio(w, ledger.n),
            "block_recovery");
        min_wreath = std::min(min_wreath, w);
    }
    tighten_m(ledger, ceil_log2(min_wreath), "block_recovery", "G inside a wreath overgroup");
}

double success_rate_check(double p_tilde, int m_tilde, double b_tilde, int k) {
    if (k <= m_tilde) return 0.0;
    double clean = std::pow(1.0 - 2.0 * p_tilde / (b_tilde + 1.0 / b_tilde), k);
    double generate = 1.0 - 8.0 / std::pow(2.0, double(k - m_tilde));
    return std::max(0.0, clean * generate);
}

double omega_delta(double phi_k, int k, double delta) {
    if (!(phi_k > 0.0) || k < 1) throw std::invalid_argument("omega_delta needs phi_k > 0, k >= 1");
    double ratio = (0.5 + delta) / phi_k;
    if (ratio >= 1.0) return 0.0;
    return 1.0 - std::pow(ratio, 1.0 / double(k));
}

double pak_phi(int m, int k) {
    if (k < m) return 0.0;
    double phi = 1.0;
    for (int i = k - m + 1; i <= k; ++i) phi *= 1.0 - std::pow(2.0, -double(i));
    return phi;
}

RecoveryOutcome niagra(SampleSource& src, int k, uint64_t n_runs, const PermPredicate& p_detector,
                       const GensPredicate& q_detector, uint64_t max_tries_per_run, Rng& rng) {
    uint64_t before = src.raw_draws();
    RecoveryOutcome out;
    out.runs = n_runs;
    SampleSource* effective = &src;
    std::optional<FilteredSampler> filtered;
    if (p_detector) {
        filtered.emplace(src, p_detector);
        effective = &*filtered;
    }
    for (uint64_t r = 0; r < n_runs; ++r) {
        auto res = q_detected_recover(*effective, k, q_detector, max_tries_per_run, rng);
        bool found = false;
        for (auto& entry : out.histogram) {
            if (entry.group.same_group_as(res.group)) {
                ++entry.count;
                found = true;
                break;
            }
        }
        if (!found) out.histogram.push_back({std::move(res.group), 1});
    }
    std::sort(out.histogram.begin(), out.histogram.end(),
              [](const HistogramEntry& a, const HistogramEntry& b) {
                  if (a.count != b.count) return a.count > b.count;
                  if (a.group.order() != b.group.order()) return a.group.order() < b.group.order();
                  return canonical_key(a.group) < canonical_key(b.group);
              });
    out.group = out.histogram.front().group;
    out.mode_count = out.histogram.front().count;
    out.raw_draws = src.raw_draws() - before;
    return out;
}

PermutationGroup find_supergroup(SampleSource& src,
                                 const std::function<bool(const PermutationGroup&)>& filter,
                                 double p_tilde, double alpha, Rng& rng, uint64_t draw_budget) {
    const int n = src.degree();
    const BigInt full = factorial(n);
    uint64_t before = src.raw_draws();
    std::vector<Permutation> gens;
    while (true) {
        if (src.raw_draws() - before > draw_budget)
            throw budget_error("supergroup search exceeded its draw budget");
        gens.push_back(src.next(rng));
        PermutationGroup h = PermutationGroup::from_generators(n, gens);
        if (h.order() == full) return h;  // S_n contains everything
        if (filter && !filter(h)) continue;
        auto report = subgroup_test(src, h, p_tilde, alpha, rng);
        if (report.decision) return h;
    }
}

std::vector<PermutationGroup> transitive_constituent_recovery(
    SampleSource& src, const OrbitPartition& orbits,
    const std::function<PermutationGroup(SampleSource&, Rng&)>& inner, Rng& rng) {
    std::vector<PermutationGroup> out;
    for (const auto& orbit : orbits.blocks) {
        ConstituentSource constituent(src, orbit);
        out.push_back(inner(constituent, rng));
    }
    return out;
}

nlohmann::json RecoveryOutcome::to_json() const {
    nlohmann::json j;
    if (group) {
        j["order"] = group->order().str();
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& g : group->generators()) gens.push_back(format_cycles(g));
        j["generators"] = gens;
    } else {
        j["order"] = nullptr;
    }
    j["mode_count"] = mode_count;
    j["runs"] = runs;
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& e : histogram)
        hist.push_back({{"order", e.group.order().str()}, {"count", e.count}});
    j["histogram"] = hist;
    j["raw_draws"] = raw_draws;
    j["confidence"] = confidence;
    j["ledger"] = ledger.to_json();
    j["caveats"] = caveats;
    return j;
}

namespace {

struct KScan {
    int k = 0;
    double bound = 0.0;
};

KScan scan_k(const KnowledgeLedger& ledger, int window) {
    KScan best;
    for (int k = ledger.m_tilde + 4; k <= ledger.m_tilde + 4 + window; ++k) {
        double b = success_rate_check(ledger.p_tilde, ledger.m_tilde, ledger.b_tilde, k);
        if (b > best.bound) {
            best.k = k;
            best.bound = b;
        }
        if (b > 0.5) break;  // prefer the smallest reliable k
    }
    return best;
}

}  // namespace

RecoveryOutcome main_recover(SampleSource& src, const RecoverConfig& config, Rng& rng) {
    const int n = src.degree();
    const uint64_t start_draws = src.raw_draws();
    const double phase_alpha = config.alpha / 8.0;
    KnowledgeLedger ledger = KnowledgeLedger::initial(n, config.p_tilde);
    std::vector<std::string> caveats;

    auto budget_left = [&]() -> uint64_t {
        uint64_t used = src.raw_draws() - start_draws;
        return used >= config.draw_budget ? 0 : config.draw_budget - used;
    };
    auto best_effort = [&](const std::string& why) {
        RecoveryOutcome out;
        out.ledger = ledger;
        out.caveats = caveats;
        out.caveats.push_back("unverified: " + why);
        out.confidence = 0.0;
        try {
            PermutationGroup g = naive_recover(src, ledger.m_tilde + 6, rng);
            out.raw_draws = src.raw_draws() - start_draws;
            out.histogram.push_back({g, 1});
            out.group = std::move(out.histogram.front().group);
            out.mode_count = 1;
            out.runs = 1;
        } catch (const std::exception&) {
            out.raw_draws = src.raw_draws() - start_draws;
        }
        return out;
    };

    // Phase 0: giant recognition, when the error bound admits it.
    if (n >= 5 && config.p_tilde < b_n(n)) {
        try {
            auto giant = giant_test(src, config.p_tilde, phase_alpha, rng, config.sample_cap);
            update_ledger(ledger, giant, phase_alpha);
            if (giant.decision) {
                auto alt = alternating_test(src, config.p_tilde, phase_alpha, rng, config.sample_cap);
                RecoveryOutcome out;
                out.group = PermutationGroup::from_generators(
                    n, alt.decision ? alternating_gens(n) : symmetric_gens(n));
                out.mode_count = 1;
                out.runs = 1;
                out.histogram.push_back({*out.group, 1});
                out.raw_draws = src.raw_draws() - start_draws;
                out.confidence = giant.confidence * alt.confidence;
                ledger.log.push_back(
                    {"alternating", alt.decision ? "G = A_n" : "G = S_n"});
                out.ledger = ledger;
                out.caveats = caveats;
                return out;
            }
        } catch (const budget_error& e) {
            return best_effort(e.what());
        }
    } else {
        caveats.push_back("giant phase skipped: error bound does not separate the giant test");
    }

    enum class Phase { transitivity, orbit_structure, block_structure, supergroup, exhausted };
    auto next_phase = [&]() {
        if (!ledger.transitive) return Phase::transitivity;
        if (!*ledger.transitive && !ledger.orbits) return Phase::orbit_structure;
        if (*ledger.transitive && !ledger.primitive) return Phase::block_structure;
        return Phase::supergroup;
    };

    bool supergroup_done = false;
    for (int round = 0; round < 16; ++round) {
        KScan scan = scan_k(ledger, config.k_window);
        if (scan.bound > 0.5) {
            uint64_t runs = required_samples(phase_alpha, scan.bound - 0.5);
            try {
                PermPredicate filter;
                if (!ledger.perm_detectors.empty())
                    filter = [&ledger](const Permutation& x) { return ledger.detector_accepts(x); };
                GensPredicate q;
                if (!ledger.group_detectors.empty())
                    q = [&ledger](int deg, const std::vector<Permutation>& gens, Rng& g) {
                        return ledger.group_accepts(deg, gens, g);
                    };
                RecoveryOutcome out =
                    niagra(src, scan.k, runs, filter, q, config.max_tries_per_run, rng);
                out.confidence = 1.0 - config.alpha;
                out.ledger = ledger;
                out.caveats = caveats;
                out.raw_draws = src.raw_draws() - start_draws;
                return out;
            } catch (const std::exception& e) {
                return best_effort(e.what());
            }
        }

        if (budget_left() == 0) return best_effort("draw budget exhausted before amplification");

        Phase phase = supergroup_done ? Phase::exhausted : next_phase();
        try {
            switch (phase) {
                case Phase::transitivity: {
                    auto r = k_transitivity_test(src, 1, ledger.p_tilde, phase_alpha, rng,
                                                 config.sample_cap);
                    update_ledger(ledger, r, phase_alpha);
                    break;
                }
                case Phase::orbit_structure: {
                    auto orbits =
                        orbit_recovery(src, ledger.p_tilde, phase_alpha, rng, config.sample_cap);
                    update_ledger(ledger, orbits);
                    break;
                }
                case Phase::block_structure: {
                    auto blocks = minimal_block_recovery(src, ledger.p_tilde, phase_alpha, rng,
                                                         config.sample_cap, config.heuristic_block_n);
                    update_ledger(ledger, blocks);
                    caveats.push_back(
                        "block structure inferred through the pair action, whose sampling "
                        "distribution is not itself a uniform mixture");
                    break;
                }
                case Phase::supergroup: {
                    supergroup_done = true;
                    if (ledger.p_tilde > 0.5) break;  // subgroup test needs p <= 1/2
                    PermutationGroup h = find_supergroup(src, nullptr, ledger.p_tilde, phase_alpha,
                                                         rng, budget_left());
                    double r = order_ratio(h.order(), n);
                    if (r < 1.0) {
                        add_perm_detector(
                            ledger, "member of a confirmed supergroup",
                            [h](const Permutation& x) { return h.contains(x); }, r, "supergroup");
                        tighten_m(ledger, ceil_log2(h.order()), "supergroup",
                                  "confirmed supergroup bounds |G|");
                    }
                    break;
                }
                case Phase::exhausted:
                    return best_effort("no further structure to earn; amplification bound <= 1/2");
            }
        } catch (const std::exception& e) {
            return best_effort(e.what());
        }
    }
    return best_effort("phase limit reached");
}

}  // namespace grouprec
