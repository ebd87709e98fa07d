#include "grouprec/sampling.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace grouprec {

double q_of(double p, double a) { return p * (1.0 - a); }

double q_filtered(double p, double a, double b) {
    return (b - a) * p / (1.0 - p * (1.0 - b));
}

double expected_tries(double p, double b) { return 1.0 / (1.0 - p * (1.0 - b)); }

double reduction_factor(double p, double a, double b) {
    if (a == b) return std::numeric_limits<double>::infinity();
    return (1.0 - a) * (1.0 - p * (1.0 - b)) / (b - a);
}

MixtureSampler::MixtureSampler(const PermutationGroup& group, double p) : group_(group), p_(p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
}

Permutation MixtureSampler::next(Rng& rng) {
    ++draws_;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < p_) {
        std::vector<int> img(group_.degree());
        std::iota(img.begin(), img.end(), 0);
        std::shuffle(img.begin(), img.end(), rng);
        return Permutation::from_images(std::move(img));
    }
    return group_.uniform_element(rng);
}

FilteredSampler::FilteredSampler(SampleSource& upstream, std::function<bool(const Permutation&)> pred,
                                 uint64_t retry_cap)
    : upstream_(upstream), pred_(std::move(pred)), retry_cap_(retry_cap) {}

Permutation FilteredSampler::next(Rng& rng) {
    for (uint64_t tries = 0; tries < retry_cap_; ++tries) {
        Permutation g = upstream_.next(rng);
        if (pred_(g)) return g;
    }
    throw std::runtime_error("filtered sampler: retry cap exhausted (filter may have empty support)");
}

ConstituentSource::ConstituentSource(SampleSource& upstream, std::vector<int> points, uint64_t retry_cap)
    : upstream_(upstream), points_(std::move(points)), retry_cap_(retry_cap) {
    std::sort(points_.begin(), points_.end());
    if (points_.empty()) throw std::invalid_argument("constituent point set is empty");
    if (points_.front() < 0 || points_.back() >= upstream_.degree())
        throw std::invalid_argument("constituent point out of range");
}

Permutation ConstituentSource::next(Rng& rng) {
    for (uint64_t tries = 0; tries < retry_cap_; ++tries) {
        Permutation g = upstream_.next(rng);
        bool invariant = true;
        for (int x : points_)
            if (!std::binary_search(points_.begin(), points_.end(), g(x))) {
                invariant = false;
                break;
            }
        if (invariant) return restrict_to_orbit(g, points_);
    }
    throw std::runtime_error("constituent source: retry cap exhausted");
}

FixedSequenceSource::FixedSequenceSource(int n, std::vector<Permutation> samples)
    : n_(n), samples_(std::move(samples)) {
    for (const auto& s : samples_)
        if (s.degree() != n_) throw std::invalid_argument("sample degree mismatch");
}

Permutation FixedSequenceSource::next(Rng&) {
    if (pos_ >= samples_.size()) throw std::runtime_error("fixed sample sequence exhausted");
    return samples_[pos_++];
}

FixedSequenceSource read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sample file: " + path);
    std::string line;
    int n = -1;
    std::vector<Permutation> samples;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        if (n < 0) {
            if (body.rfind("degree", 0) != 0)
                throw std::runtime_error("sample file must start with a 'degree n' line");
            n = std::stoi(body.substr(6));
            if (n < 1) throw std::runtime_error("sample file degree must be positive");
            continue;
        }
        samples.push_back(parse_permutation(body, n));
    }
    if (n < 0) throw std::runtime_error("sample file has no 'degree n' line");
    return FixedSequenceSource(n, std::move(samples));
}

void write_sample_file(const std::string& path, int n, const std::vector<Permutation>& samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "degree " << n << "\n";
    for (const auto& s : samples) out << format_cycles(s) << "\n";
}

}  // namespace grouprec
