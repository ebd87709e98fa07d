#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grouprec/hypothesis.hpp"

namespace grouprec {

/// Smallest m with |order| <= 2^m (an upper bound on ceil(log2 |G|)).
int ceil_log2(const BigInt& order);

/// Predicate on a generated group, evaluated on the raw generator list so
/// implementations can avoid building a stabilizer chain when a cheaper
/// certificate decides (the rng only affects speed).
using GensPredicate = std::function<bool(int, const std::vector<Permutation>&, Rng&)>;
using PermPredicate = std::function<bool(const Permutation&)>;

GensPredicate non_giant_detector();
GensPredicate group_detector(std::function<bool(const PermutationGroup&)> q);

/// The group generated by k fresh draws.
PermutationGroup naive_recover(SampleSource& src, int k, Rng& rng);

struct QDetectedResult {
    PermutationGroup group;
    uint64_t tries;
};

/// Repeats naive recovery until the group detector accepts (or max_tries
/// naive runs have been rejected, which throws budget_error).
QDetectedResult q_detected_recover(SampleSource& src, int k, const GensPredicate& q,
                                   uint64_t max_tries, Rng& rng);

/// One error detector noted in the ledger, with the evidence behind it.
struct LedgerNote {
    std::string source;  // test name or phase
    std::string fact;    // human-readable statement
};

/// Everything learned about G so far: shrinking bounds on p, ceil(log2 |G|),
/// and the mass of the active permutation detector, plus discovered
/// structure.  p_tilde / m_tilde / b_tilde only ever decrease.
struct KnowledgeLedger {
    int n = 0;
    double p_low = 0.0;
    double p_tilde = 0.5;
    int m_tilde = 0;        // |G| <= 2^m_tilde
    double b_tilde = 1.0;   // |S_P| / n! <= b_tilde for the conjunction below

    std::vector<std::pair<std::string, PermPredicate>> perm_detectors;
    std::vector<std::pair<std::string, GensPredicate>> group_detectors;

    std::optional<bool> giant;
    std::optional<bool> transitive;
    std::optional<bool> primitive;
    std::optional<OrbitPartition> orbits;
    std::vector<OrbitPartition> block_systems;
    bool inconsistent = false;  // an update produced an empty p-interval
    std::vector<LedgerNote> log;

    static KnowledgeLedger initial(int n, double p_tilde);
    /// Conjunction of all permutation detectors (true when none active).
    bool detector_accepts(const Permutation& x) const;
    /// Conjunction of all group detectors.
    bool group_accepts(int n, const std::vector<Permutation>& gens, Rng& rng) const;
    nlohmann::json to_json() const;
};

/// Applies the bookkeeping rules for one test outcome: new detectors, the
/// matching |G| bound, and the p-interval derived from the sample mean with
/// Hoeffding radius at the report's sample count.
void update_ledger(KnowledgeLedger& ledger, const TestReport& report, double alpha);
/// Bookkeeping for a recovered orbit partition (Young detector).
void update_ledger(KnowledgeLedger& ledger, const OrbitPartition& orbits);
/// Bookkeeping for recovered minimal block systems (wreath detectors); an
/// empty list means primitive.
void update_ledger(KnowledgeLedger& ledger, const std::vector<OrbitPartition>& blocks);

struct HistogramEntry {
    PermutationGroup group;
    uint64_t count;
};

struct RecoveryOutcome {
    std::optional<PermutationGroup> group;
    uint64_t mode_count = 0;
    uint64_t runs = 0;
    std::vector<HistogramEntry> histogram;  // sorted by count descending
    uint64_t raw_draws = 0;
    double confidence = 0.0;
    KnowledgeLedger ledger;
    std::vector<std::string> caveats;

    nlohmann::json to_json() const;
};

/// N independent error-detected recoveries over the P-filtered source; the
/// result is the modal group (equality = same order + mutual generator
/// membership; ties broken by smaller order, then by lexicographically
/// smaller canonical generator images).
RecoveryOutcome niagra(SampleSource& src, int k, uint64_t n_runs, const PermPredicate& p_detector,
                       const GensPredicate& q_detector, uint64_t max_tries_per_run, Rng& rng);

/// Lower bound on the success rate of one error-detected recovery run with k
/// draws, given bounds p <= p_tilde, |G| <= 2^m_tilde, |S_P|/n! <= b_tilde:
/// (1 - 2 p_tilde / (b_tilde + 1/b_tilde))^k * (1 - 8 / 2^(k - m_tilde)).
double success_rate_check(double p_tilde, int m_tilde, double b_tilde, int k);

/// Error-rate margin at which k draws still amplify: with phi_k the chance
/// that k exact draws generate G, returns 1 - ((1/2 + delta)/phi_k)^(1/k).
double omega_delta(double phi_k, int k, double delta);

/// The chance that k uniform draws from a group of order 2^m generate it,
/// per Pak's bound shape: prod_{i=k-m+1}^{k} (1 - 1/2^i) for elementary
/// abelian 2-groups (the worst case driving the 1 - 8/2^(k-m) floor).
double pak_phi(int m, int k);

/// Grows a candidate supergroup one draw at a time, running the subgroup
/// test on each candidate that satisfies the optional hereditary filter;
/// returns the first confirmed H (S_n immediately).  Throws budget_error
/// when raw draws exceed the budget.
PermutationGroup find_supergroup(SampleSource& src,
                                 const std::function<bool(const PermutationGroup&)>& filter,
                                 double p_tilde, double alpha, Rng& rng,
                                 uint64_t draw_budget = kDefaultSampleCap);

/// Runs the given recovery procedure on the constituent source of each
/// orbit.  The constituents do not always determine G, so results are
/// labeled partial by the caller.
std::vector<PermutationGroup> transitive_constituent_recovery(
    SampleSource& src, const OrbitPartition& orbits,
    const std::function<PermutationGroup(SampleSource&, Rng&)>& inner, Rng& rng);

struct RecoverConfig {
    double p_tilde = 0.25;
    double alpha = 0.05;
    uint64_t draw_budget = 50'000'000;
    uint64_t sample_cap = kDefaultSampleCap;
    uint64_t max_tries_per_run = 4096;
    int k_window = 12;  // k scans m_tilde+4 .. m_tilde+4+k_window
    uint64_t heuristic_block_n = 0;  // >0: heuristic pair-orbit mode for block recovery
};

/// The adaptive pipeline: giant test first (giant -> alternating test ->
/// A_n/S_n); otherwise alternate between ledger updates, the k-scan of
/// success_rate_check, and property-earning tests until amplified recovery
/// is provably reliable, then run niagra.  Budget exhaustion returns a
/// best-effort outcome flagged "unverified".
RecoveryOutcome main_recover(SampleSource& src, const RecoverConfig& config, Rng& rng);

}  // namespace grouprec
