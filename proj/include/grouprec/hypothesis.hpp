#pragma once

#include <functional>
#include <vector>

#include "grouprec/stats.hpp"

namespace grouprec {

/// Separation constants for the two-generator giant test at degree n.
/// A pair of fresh draws generates a giant with probability >= L when G is a
/// giant and <= U otherwise, provided p < b_n.
struct GiantTestConstants {
    int n;
    double p_tilde;
    double ell;        // lower bound on the giant-generation rate inside a giant
    double u;          // upper bound on (conditioned) giant generation outside
    double lower;      // L(n, p~): giant case mean lower bound
    double upper;      // U(n, p~): non-giant case mean upper bound
    double threshold;  // midpoint (L + U) / 2
};

/// Largest error bound for which the giant test separates at degree n
/// (closed-form root of U(n, b) = L(n, b)).  Requires n >= 5.
double b_n(int n);
GiantTestConstants giant_constants(int n, double p_tilde);

/// Decides whether G is a giant (A_n or S_n).  Each trial consumes two fresh
/// draws X1, X2 and evaluates is_giant(<X1, X2>).  Requires n >= 5 and
/// p_tilde < b_n.
TestReport giant_test(SampleSource& src, double p_tilde, double alpha, Rng& rng,
                      uint64_t sample_cap = kDefaultSampleCap);

/// Decides whether G <= H from the membership statistic I[X in H], where the
/// caller supplies the membership predicate and |H| / n! (H proper, so
/// order_ratio < 1).  Requires p_tilde <= 1/2.  `n_override` forces the
/// sample count instead of the planned one (0 = planned).
TestReport subgroup_test_pred(SampleSource& src, const std::function<bool(const Permutation&)>& in_h,
                              double order_ratio_h, double p_tilde, double alpha, Rng& rng,
                              uint64_t sample_cap = kDefaultSampleCap, uint64_t n_override = 0);
TestReport subgroup_test(SampleSource& src, const PermutationGroup& h, double p_tilde, double alpha,
                         Rng& rng, uint64_t sample_cap = kDefaultSampleCap);
/// Subgroup test with H = A_n (parity predicate).
TestReport alternating_test(SampleSource& src, double p_tilde, double alpha, Rng& rng,
                            uint64_t sample_cap = kDefaultSampleCap);
/// Subgroup test with H = the wreath group preserving the given equal-size
/// block partition; true means the partition is a block structure of G.
TestReport block_test(SampleSource& src, const OrbitPartition& blocks, double p_tilde, double alpha,
                      Rng& rng, uint64_t sample_cap = kDefaultSampleCap);
/// Subgroup test with H = the Young subgroup of the partition; true means the
/// orbits of G refine the partition.
TestReport orbit_refining_test(SampleSource& src, const OrbitPartition& parts, double p_tilde,
                               double alpha, Rng& rng, uint64_t sample_cap = kDefaultSampleCap,
                               uint64_t n_override = 0);

/// Decides whether G is k-transitive from the statistic
/// Fix_k(X) / (n (n-1) ... (n-k+1)).  Sample sizes grow like the square of
/// the falling factorial, so k > 2 usually exceeds the cap.
TestReport k_transitivity_test(SampleSource& src, int k, double p_tilde, double alpha, Rng& rng,
                               uint64_t sample_cap = kDefaultSampleCap);

/// Decides whether i and j (0-based) lie in the same orbit from I[X(i) = j].
TestReport orbit_agreement(SampleSource& src, int i, int j, double p_tilde, double alpha, Rng& rng,
                           uint64_t sample_cap = kDefaultSampleCap);

/// Recovers the orbit of point i: reads off all j whose image frequency
/// exceeds (1 + p_tilde) / (2n) over required_samples(alpha / n, ...) draws.
std::vector<int> single_orbit_recovery(SampleSource& src, int i, double p_tilde, double alpha,
                                       Rng& rng, uint64_t sample_cap = kDefaultSampleCap);

/// Recovers the full orbit partition by repeated single-orbit recovery on
/// fresh draws, splitting alpha across at most n calls.  Throws
/// statistical_error if recovered orbits overlap.
OrbitPartition orbit_recovery(SampleSource& src, double p_tilde, double alpha, Rng& rng,
                              uint64_t sample_cap = kDefaultSampleCap);

/// Confirms that a candidate point set is exactly one orbit: first the
/// orbit-refining test against {candidate, complement}, then a transitivity
/// test on the constituent source.  meta carries both phase verdicts.
TestReport orbit_confirmation(SampleSource& src, const std::vector<int>& candidate, double p_tilde,
                              double alpha, Rng& rng, uint64_t sample_cap = kDefaultSampleCap);

enum class HeuristicMode { non_adaptive, adaptive };

/// Two-pass same-cycle frequency heuristic for orbits.  Pass 1 marks pairs
/// with fewer than t co-cycle counts as distinct; pass 2 resamples through
/// the induced error detector and returns components of the graph of pairs
/// with counts above N p_tilde / 2.  t <= 0 means the default N p_tilde / 2.
/// Adaptive mode validates each component with orbit_confirmation, halving /
/// doubling t on failure, for at most 8 rounds.
OrbitPartition heuristic_orbit_recovery(SampleSource& src, uint64_t n_samples, double t,
                                        HeuristicMode mode, double p_tilde, Rng& rng,
                                        double alpha = 0.05,
                                        uint64_t sample_cap = kDefaultSampleCap);

/// Fixed-sample variant: pass 2 cannot resample, so it filters the same
/// observations through the pass-1 detector and thresholds the M survivors
/// at M p_tilde / 2.
OrbitPartition heuristic_orbit_recovery_fixed(const std::vector<Permutation>& samples, double t,
                                              double p_tilde);

/// Recovers all refinement-minimal block systems of a transitive G by orbit
/// recovery on the induced pair action (degree n(n-1)) and the orbital-graph
/// criterion.  `heuristic_n` > 0 switches the pair-orbit phase to the
/// two-pass heuristic with that sample count.  Reports carry a caveat: the
/// pair action of the mixture is not itself a mixture on S_{n(n-1)}, so the
/// rigorous confidence bounds are not literally guaranteed.
std::vector<OrbitPartition> minimal_block_recovery(SampleSource& src, double p_tilde, double alpha,
                                                   Rng& rng,
                                                   uint64_t sample_cap = kDefaultSampleCap,
                                                   uint64_t heuristic_n = 0);

/// True iff minimal_block_recovery finds nothing (G assumed transitive).
TestReport primitivity_test(SampleSource& src, double p_tilde, double alpha, Rng& rng,
                            uint64_t sample_cap = kDefaultSampleCap, uint64_t heuristic_n = 0);

}  // namespace grouprec
