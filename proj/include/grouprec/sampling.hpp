#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "grouprec/group.hpp"

namespace grouprec {

/// Recognizable error rate of the mixture: the probability that a draw lands
/// outside G.  `a` is |G| / n!.
double q_of(double p, double a);
/// Error rate after conditioning on membership in a property class of mass b
/// (= |class| / n!) that contains G (mass a).
double q_filtered(double p, double a, double b);
/// Expected number of raw draws per accepted draw when filtering on mass b.
double expected_tries(double p, double b);
/// Factor by which filtering shrinks the error rate, q / q_filtered.
/// Returns +infinity when a == b (the filter removes all error).
double reduction_factor(double p, double a, double b);

/// A stream of permutations of a fixed degree.  Implementations must be
/// deterministic functions of the rng stream passed to next().
class SampleSource {
public:
    virtual ~SampleSource() = default;
    virtual int degree() const = 0;
    virtual Permutation next(Rng& rng) = 0;
    /// Raw draws consumed from the underlying oracle so far (filtering and
    /// derived sources count the draws they trigger, not the values they emit).
    virtual uint64_t raw_draws() const = 0;
};

/// The error-prone oracle: with probability 1-p a uniform element of G, with
/// probability p a uniform element of S_n.
class MixtureSampler : public SampleSource {
public:
    MixtureSampler(const PermutationGroup& group, double p);
    int degree() const override { return group_.degree(); }
    Permutation next(Rng& rng) override;
    uint64_t raw_draws() const override { return draws_; }
    double p() const { return p_; }
    const PermutationGroup& group() const { return group_; }

private:
    const PermutationGroup& group_;
    double p_;
    uint64_t draws_ = 0;
};

/// Rejection-samples an upstream source until a draw satisfies the predicate.
/// Throws std::runtime_error after `retry_cap` consecutive rejections.
class FilteredSampler : public SampleSource {
public:
    FilteredSampler(SampleSource& upstream, std::function<bool(const Permutation&)> pred,
                    uint64_t retry_cap = 1u << 20);
    int degree() const override { return upstream_.degree(); }
    Permutation next(Rng& rng) override;
    uint64_t raw_draws() const override { return upstream_.raw_draws(); }

private:
    SampleSource& upstream_;
    std::function<bool(const Permutation&)> pred_;
    uint64_t retry_cap_;
};

/// Restricts each upstream draw to an invariant point set, emitting the
/// induced permutation of that set.  Draws whose restriction is undefined
/// (the set is not invariant) are rejected.
class ConstituentSource : public SampleSource {
public:
    ConstituentSource(SampleSource& upstream, std::vector<int> points,
                      uint64_t retry_cap = 1u << 20);
    int degree() const override { return static_cast<int>(points_.size()); }
    Permutation next(Rng& rng) override;
    uint64_t raw_draws() const override { return upstream_.raw_draws(); }

private:
    SampleSource& upstream_;
    std::vector<int> points_;
    uint64_t retry_cap_;
};

/// Lifts each upstream draw to its action on ordered pairs (degree n(n-1)).
class PairSource : public SampleSource {
public:
    explicit PairSource(SampleSource& upstream) : upstream_(upstream) {}
    int degree() const override { return upstream_.degree() * (upstream_.degree() - 1); }
    Permutation next(Rng& rng) override { return upstream_.next(rng).pair_lift(); }
    uint64_t raw_draws() const override { return upstream_.raw_draws(); }

private:
    SampleSource& upstream_;
};

/// Replays a fixed list of permutations in order; throws when exhausted.
class FixedSequenceSource : public SampleSource {
public:
    FixedSequenceSource(int n, std::vector<Permutation> samples);
    int degree() const override { return n_; }
    Permutation next(Rng&) override;
    uint64_t raw_draws() const override { return pos_; }
    size_t size() const { return samples_.size(); }
    size_t remaining() const { return samples_.size() - pos_; }
    const std::vector<Permutation>& samples() const { return samples_; }

private:
    int n_;
    std::vector<Permutation> samples_;
    size_t pos_ = 0;
};

/// Reads a sample file: a "degree n" header line followed by one permutation
/// per line in cycle or image notation.  Blank lines and '#' comments skipped.
FixedSequenceSource read_sample_file(const std::string& path);
void write_sample_file(const std::string& path, int n, const std::vector<Permutation>& samples);

}  // namespace grouprec
