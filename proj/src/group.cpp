#include "grouprec/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace grouprec {

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double order_ratio(const BigInt& order, int n) {
    return static_cast<double>(boost::multiprecision::cpp_rational(order, factorial(n)));
}

// ---------------------------------------------------------------- partitions

OrbitPartition OrbitPartition::of(std::vector<std::vector<int>> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    return OrbitPartition{std::move(blocks)};
}

int OrbitPartition::degree() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    return n;
}

int OrbitPartition::block_of(int point) const {
    for (size_t i = 0; i < blocks.size(); ++i)
        if (std::binary_search(blocks[i].begin(), blocks[i].end(), point))
            return static_cast<int>(i);
    throw std::out_of_range("point not covered by partition");
}

bool OrbitPartition::refines(const OrbitPartition& coarser) const {
    for (const auto& b : blocks) {
        int target = coarser.block_of(b[0]);
        for (int x : b)
            if (coarser.block_of(x) != target) return false;
    }
    return true;
}

// ---------------------------------------------------------- stabilizer chain

StabilizerChain::StabilizerChain(int n, const std::vector<Permutation>& gens) : n_(n) {
    for (const auto& g : gens) {
        if (g.degree() != n) throw std::invalid_argument("generator degree mismatch");
        if (g.is_identity()) continue;
        if (levels_.empty()) append_level(g.smallest_moved_point());
        levels_[0].gens.push_back(g);
    }
    if (!levels_.empty()) {
        rebuild_orbit(0);
        close_level(0);
    }
    order_ = 1;
    for (const auto& l : levels_) order_ *= static_cast<int>(l.orbit.size());
}

std::pair<size_t, Permutation> StabilizerChain::strip(Permutation g, size_t from) const {
    for (size_t i = from; i < levels_.size(); ++i) {
        const Level& l = levels_[i];
        int image = g(l.base_point);
        int pos = l.orbit_pos[image];
        if (pos < 0) return {i, std::move(g)};
        g = l.reps[pos].inverse().compose(g);
    }
    return {levels_.size(), std::move(g)};
}

void StabilizerChain::append_level(int base_point) {
    Level l;
    l.base_point = base_point;
    l.orbit = {base_point};
    l.reps = {Permutation::identity(n_)};
    l.orbit_pos.assign(n_, -1);
    l.orbit_pos[base_point] = 0;
    levels_.push_back(std::move(l));
}

void StabilizerChain::rebuild_orbit(size_t level) {
    Level& l = levels_[level];
    l.orbit = {l.base_point};
    l.reps = {Permutation::identity(n_)};
    l.orbit_pos.assign(n_, -1);
    l.orbit_pos[l.base_point] = 0;
    for (size_t k = 0; k < l.orbit.size(); ++k) {
        for (const auto& s : l.gens) {
            int q = s(l.orbit[k]);
            if (l.orbit_pos[q] < 0) {
                l.orbit_pos[q] = static_cast<int>(l.orbit.size());
                l.orbit.push_back(q);
                l.reps.push_back(s.compose(l.reps[k]));
            }
        }
    }
}

// Verifies closure of `level`, assuming every deeper level is already closed.
// Each Schreier generator is sifted through the deeper levels; a non-trivial
// residue fixes all base points down to where it stuck, so it is appended as a
// strong generator of every level in between, and the affected levels are
// re-closed deepest-first before verification here continues.
void StabilizerChain::close_level(size_t level) {
    for (size_t k = 0; k < levels_[level].orbit.size(); ++k) {
        for (size_t si = 0; si < levels_[level].gens.size(); ++si) {
            const Level& l = levels_[level];
            const Permutation& s = l.gens[si];
            int q = s(l.orbit[k]);
            Permutation sg = l.reps[l.orbit_pos[q]].inverse().compose(s).compose(l.reps[k]);
            auto [j, residue] = strip(std::move(sg), level + 1);
            if (residue.is_identity()) continue;
            if (j == levels_.size()) append_level(residue.smallest_moved_point());
            for (size_t m = level + 1; m <= j; ++m) {
                levels_[m].gens.push_back(residue);
                rebuild_orbit(m);
            }
            for (size_t m = j; m > level; --m) close_level(m);
            // This level's own orbit and generators are unchanged; resume the
            // scan where it left off.
        }
    }
}

bool StabilizerChain::contains(const Permutation& p) const {
    if (p.degree() != n_) return false;
    auto [lvl, residue] = strip(p, 0);
    return lvl == levels_.size() && residue.is_identity();
}

Permutation StabilizerChain::uniform_element(Rng& rng) const {
    Permutation g = Permutation::identity(n_);
    for (const auto& l : levels_) {
        std::uniform_int_distribution<size_t> d(0, l.orbit.size() - 1);
        g = g.compose(l.reps[d(rng)]);
    }
    return g;
}

std::vector<Permutation> StabilizerChain::strong_generators() const {
    std::vector<Permutation> out;
    for (const auto& l : levels_)
        for (const auto& g : l.gens)
            if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    return out;
}

// -------------------------------------------------------------------- groups

PermutationGroup PermutationGroup::from_generators(int n, std::vector<Permutation> gens) {
    if (n < 1) throw std::invalid_argument("degree must be positive");
    StabilizerChain chain(n, gens);
    return PermutationGroup(n, std::move(gens), std::move(chain));
}

OrbitPartition PermutationGroup::orbits() const {
    std::vector<int> seen(n_, 0);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n_; ++i) {
        if (seen[i]) continue;
        std::vector<int> orb = {i};
        seen[i] = 1;
        for (size_t k = 0; k < orb.size(); ++k)
            for (const auto& g : gens_) {
                int q = g(orb[k]);
                if (!seen[q]) { seen[q] = 1; orb.push_back(q); }
            }
        out.push_back(std::move(orb));
    }
    return OrbitPartition::of(std::move(out));
}

std::vector<int> PermutationGroup::orbit_of(int i) const {
    auto parts = orbits();
    return parts.blocks[parts.block_of(i)];
}

bool PermutationGroup::is_transitive() const { return orbits().blocks.size() == 1; }

bool PermutationGroup::is_k_transitive(int k) const {
    if (k < 1 || k > n_) throw std::invalid_argument("k out of range");
    BigInt tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= (n_ - i);
    if (tuples > 20'000'000) throw std::runtime_error("k-transitivity check: tuple space too large");
    // BFS over distinct k-tuples from (0,1,..,k-1); k-transitive iff all reached.
    auto encode = [&](const std::vector<int>& t) {
        uint64_t code = 0;
        for (int x : t) code = code * n_ + x;
        return code;
    };
    std::vector<int> start(k);
    std::iota(start.begin(), start.end(), 0);
    std::set<uint64_t> seen = {encode(start)};
    std::vector<std::vector<int>> frontier = {start};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& t : frontier)
            for (const auto& g : gens_) {
                std::vector<int> u(k);
                for (int i = 0; i < k; ++i) u[i] = g(t[i]);
                if (seen.insert(encode(u)).second) next.push_back(std::move(u));
            }
        frontier = std::move(next);
    }
    return BigInt(seen.size()) == tuples;
}

namespace {

// Connected components of the undirected graph on {0..n-1} whose edges are
// the orbit of (a, b) under G (an orbital graph).
OrbitPartition orbital_components(int n, const std::vector<Permutation>& gens, int a, int b) {
    std::vector<std::vector<int>> adj(n);
    std::set<std::pair<int, int>> seen;
    std::queue<std::pair<int, int>> q;
    auto push = [&](int x, int y) {
        if (seen.insert({x, y}).second) {
            adj[x].push_back(y);
            adj[y].push_back(x);
            q.push({x, y});
        }
    };
    push(a, b);
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop();
        for (const auto& g : gens) push(g(x), g(y));
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

}  // namespace

std::vector<OrbitPartition> PermutationGroup::minimal_block_systems() const {
    if (!is_transitive()) throw std::invalid_argument("block systems require a transitive group");
    std::vector<OrbitPartition> found;
    for (int b = 1; b < n_; ++b) {
        OrbitPartition parts = orbital_components(n_, gens_, 0, b);
        if (parts.is_trivial()) continue;
        if (std::find(found.begin(), found.end(), parts) == found.end())
            found.push_back(std::move(parts));
    }
    // Keep only refinement-minimal systems.
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

bool PermutationGroup::is_primitive() const {
    return is_transitive() && minimal_block_systems().empty();
}

GiantKind PermutationGroup::giant_kind() const {
    BigInt full = factorial(n_);
    if (order() == full) return GiantKind::symmetric;
    if (n_ >= 3 && order() * 2 == full) {
        for (const auto& g : gens_)
            if (!g.is_even()) return GiantKind::neither;  // index-2 but not A_n is impossible; guard anyway
        return GiantKind::alternating;
    }
    return GiantKind::neither;
}

bool PermutationGroup::is_giant() const { return giant_kind() != GiantKind::neither; }

bool PermutationGroup::same_group_as(const PermutationGroup& other) const {
    if (n_ != other.n_ || order() != other.order()) return false;
    for (const auto& g : gens_)
        if (!other.contains(g)) return false;
    return true;
}

GiantKind giant_kind_of(int n, const std::vector<Permutation>& gens, Rng& rng) {
    auto exact = [&] {
        return PermutationGroup::from_generators(n, gens).giant_kind();
    };
    // Primes p with n/2 < p <= n-3 (none below n ~ 12; exact path is cheap there).
    std::vector<int> primes;
    for (int p = n / 2 + 1; p <= n - 3; ++p) {
        bool prime = p >= 2;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (prime) primes.push_back(p);
    }
    if (primes.empty()) return exact();

    std::vector<Permutation> pool;
    for (const auto& g : gens)
        if (!g.is_identity()) pool.push_back(g);
    if (pool.empty()) return GiantKind::neither;

    // Transitivity is necessary for being a giant and cheap to check.
    std::vector<int> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& g : pool) {
            int y = g(x);
            if (!seen[y]) { seen[y] = 1; ++count; stack.push_back(y); }
        }
    }
    if (count < n) return GiantKind::neither;

    auto has_certificate = [&](const Permutation& w) {
        for (const auto& cyc : w.cycles())
            for (int p : primes)
                if (cyc.size() % p == 0) return true;
        return false;
    };
    bool any_odd = false;
    for (const auto& g : pool) any_odd = any_odd || !g.is_even();
    for (int round = 0; round < 48; ++round) {
        if (round >= int(pool.size())) {
            std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
            size_t a = pick(rng), b = pick(rng);
            pool.push_back(pool[a].compose(pool[b]));
        }
        if (has_certificate(pool[round])) return any_odd ? GiantKind::symmetric : GiantKind::alternating;
    }
    return exact();
}

// ------------------------------------------------------------- helper preds

bool in_young(const Permutation& p, const OrbitPartition& parts) {
    if (p.degree() != parts.degree()) throw std::invalid_argument("degree mismatch");
    for (const auto& b : parts.blocks)
        for (int x : b)
            if (!std::binary_search(b.begin(), b.end(), p(x))) return false;
    return true;
}

bool in_wreath(const Permutation& p, const OrbitPartition& blocks) {
    if (p.degree() != blocks.degree()) throw std::invalid_argument("degree mismatch");
    size_t m = blocks.blocks[0].size();
    for (const auto& b : blocks.blocks)
        if (b.size() != m) throw std::invalid_argument("wreath membership needs equal block sizes");
    for (const auto& b : blocks.blocks) {
        int target = blocks.block_of(p(b[0]));
        for (int x : b)
            if (blocks.block_of(p(x)) != target) return false;
    }
    return true;
}

Permutation restrict_to_orbit(const Permutation& p, const std::vector<int>& orbit) {
    std::vector<int> pts = orbit;
    std::sort(pts.begin(), pts.end());
    std::vector<int> images(pts.size());
    for (size_t k = 0; k < pts.size(); ++k) {
        auto it = std::lower_bound(pts.begin(), pts.end(), p(pts[k]));
        if (it == pts.end() || *it != p(pts[k]))
            throw std::invalid_argument("point set is not invariant under the permutation");
        images[k] = static_cast<int>(it - pts.begin());
    }
    return Permutation::from_images(std::move(images));
}

BigInt young_order(const OrbitPartition& parts) {
    BigInt r = 1;
    for (const auto& b : parts.blocks) r *= factorial(static_cast<int>(b.size()));
    return r;
}

BigInt wreath_order(const OrbitPartition& blocks) {
    size_t m = blocks.blocks[0].size();
    BigInt r = factorial(static_cast<int>(blocks.blocks.size()));
    for (size_t i = 0; i < blocks.blocks.size(); ++i) r *= factorial(static_cast<int>(m));
    return r;
}

}  // namespace grouprec
