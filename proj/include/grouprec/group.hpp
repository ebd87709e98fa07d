#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <random>
#include <vector>

#include "grouprec/perm.hpp"

namespace grouprec {

using Rng = std::mt19937_64;
using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int n);
/// |order| / n! in double precision (valid for degrees up to ~170).
double order_ratio(const BigInt& order, int n);

/// A partition of {0..n-1} into disjoint blocks, canonicalized: each block
/// sorted, blocks sorted by minimum element.
struct OrbitPartition {
    std::vector<std::vector<int>> blocks;

    static OrbitPartition of(std::vector<std::vector<int>> blocks);
    int degree() const;
    int block_of(int point) const;  // index into blocks
    bool is_trivial() const { return blocks.size() == 1 || static_cast<size_t>(degree()) == blocks.size(); }
    /// True iff every block of *this is contained in a block of `coarser`.
    bool refines(const OrbitPartition& coarser) const;
    bool operator==(const OrbitPartition& o) const { return blocks == o.blocks; }
    bool operator<(const OrbitPartition& o) const { return blocks < o.blocks; }
};

/// Base and strong generating set computed by deterministic Schreier-Sims.
/// Base points are chosen as the smallest non-fixed point per level, so the
/// chain shape (and hence uniform_element streams under a fixed seed) is
/// reproducible.
class StabilizerChain {
public:
    struct Level {
        int base_point;
        std::vector<Permutation> gens;      // strong generators fixing all earlier base points
        std::vector<int> orbit;             // BFS order, orbit[0] == base_point
        std::vector<Permutation> reps;      // reps[k](base_point) == orbit[k]
        std::vector<int> orbit_pos;         // point -> index in orbit, or -1
    };

    StabilizerChain() = default;  // trivial group of degree 0 placeholder
    StabilizerChain(int n, const std::vector<Permutation>& gens);

    int degree() const { return n_; }
    const BigInt& order() const { return order_; }
    bool contains(const Permutation& p) const;
    Permutation uniform_element(Rng& rng) const;
    const std::vector<Level>& levels() const { return levels_; }
    /// The strong generators of the top level (a generating set of the group).
    std::vector<Permutation> strong_generators() const;

private:
    // Strips g through levels [from, end); returns the level index where
    // stripping stopped and the residue.
    std::pair<size_t, Permutation> strip(Permutation g, size_t from) const;
    void rebuild_orbit(size_t level);
    void close_level(size_t level);
    void append_level(int base_point);

    int n_ = 0;
    std::vector<Level> levels_;
    BigInt order_ = 1;
};

enum class GiantKind { alternating, symmetric, neither };

/// A permutation group given by generators, with an eagerly built stabilizer
/// chain.  Immutable after construction; read operations are safe to call
/// concurrently (uniform_element takes a caller-supplied rng).
class PermutationGroup {
public:
    static PermutationGroup from_generators(int n, std::vector<Permutation> gens);
    static PermutationGroup trivial(int n) { return from_generators(n, {}); }

    int degree() const { return n_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    const BigInt& order() const { return chain_.order(); }
    bool contains(const Permutation& p) const { return chain_.contains(p); }
    Permutation uniform_element(Rng& rng) const { return chain_.uniform_element(rng); }
    const StabilizerChain& chain() const { return chain_; }

    OrbitPartition orbits() const;
    std::vector<int> orbit_of(int i) const;
    bool is_transitive() const;
    /// Exact: orbit count of the induced action on distinct k-tuples is 1.
    /// Throws if the tuple space exceeds the resource limit.
    bool is_k_transitive(int k) const;
    /// All refinement-minimal nontrivial block systems, via connected
    /// components of orbital graphs.  Throws on intransitive input.
    std::vector<OrbitPartition> minimal_block_systems() const;
    bool is_primitive() const;
    bool is_giant() const;
    GiantKind giant_kind() const;

    /// True for identical subgroups of S_n (mutual generator membership).
    bool same_group_as(const PermutationGroup& other) const;

private:
    PermutationGroup(int n, std::vector<Permutation> gens, StabilizerChain chain)
        : n_(n), gens_(std::move(gens)), chain_(std::move(chain)) {}
    int n_;
    std::vector<Permutation> gens_;
    StabilizerChain chain_;
};

/// Exact giant classification of <gens> without always paying for a full
/// stabilizer chain.  A transitive group containing a cycle of prime length p
/// with n/2 < p <= n-3 must contain A_n (Jordan), so a certificate found in
/// the generators or in random words settles the question; otherwise the
/// chain order decides.  The rng only affects speed, never the answer.
GiantKind giant_kind_of(int n, const std::vector<Permutation>& gens, Rng& rng);

/// Young-subgroup membership: every part of the partition is mapped into itself.
bool in_young(const Permutation& p, const OrbitPartition& parts);
/// Wreath membership: every block is mapped onto some block.  Requires equal
/// block sizes.
bool in_wreath(const Permutation& p, const OrbitPartition& blocks);
/// The action of p on a p-invariant point set, re-indexed in sorted order.
/// Throws if the set is not invariant under p.
Permutation restrict_to_orbit(const Permutation& p, const std::vector<int>& orbit);

BigInt young_order(const OrbitPartition& parts);
BigInt wreath_order(const OrbitPartition& blocks);

}  // namespace grouprec
