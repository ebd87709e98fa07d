#include "grouprec/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace grouprec {

namespace {

std::vector<Permutation> symmetric_gens(int n) {
    if (n < 2) return {};
    std::vector<int> cyc(n), swp(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n, swp[i] = i;
    std::swap(swp[0], swp[1]);
    if (n == 2) return {Permutation::from_images(swp)};
    return {Permutation::from_images(swp), Permutation::from_images(cyc)};
}

std::vector<Permutation> alternating_gens(int n) {
    std::vector<Permutation> gens;
    for (int i = 2; i < n; ++i) {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        img[0] = 1, img[1] = i, img[i] = 0;  // the 3-cycle (0 1 i)
        gens.push_back(Permutation::from_images(img));
    }
    return gens;
}

std::vector<Permutation> cyclic_gens(int n) {
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    return {Permutation::from_images(cyc)};
}

std::vector<Permutation> dihedral_gens(int n) {
    auto gens = cyclic_gens(n);
    std::vector<int> flip(n);
    for (int i = 0; i < n; ++i) flip[i] = (n - i) % n;  // reflection fixing 0
    gens.push_back(Permutation::from_images(flip));
    return gens;
}

/// All elements of S_n in a deterministic (lexicographic image) order, with
/// a rank lookup by Lehmer code.
struct SymmetricTable {
    int n;
    std::vector<Permutation> elems;
    std::vector<int> fact;  // factorials up to n

    explicit SymmetricTable(int degree) : n(degree) {
        fact.assign(n + 1, 1);
        for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        elems.reserve(fact[n]);
        do {
            elems.push_back(Permutation::from_images(img));
        } while (std::next_permutation(img.begin(), img.end()));
    }

    int rank(const Permutation& p) const {
        int r = 0;
        for (int i = 0; i < n; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < n; ++j) smaller += p(j) < p(i);
            r += smaller * fact[n - 1 - i];
        }
        return r;
    }
};

using IdSet = std::vector<int>;  // sorted element ranks of a subgroup

struct IdSetHash {
    size_t operator()(const IdSet& v) const {
        size_t h = v.size();
        for (int x : v) h = h * 1000003u + size_t(x);
        return h;
    }
};

/// <seeds> by breadth-first right multiplication over the element table.
IdSet closure_ids(const SymmetricTable& tab, const std::vector<int>& seed_ids) {
    std::unordered_set<int> seen{tab.rank(Permutation::identity(tab.n))};
    std::deque<int> work(seen.begin(), seen.end());
    while (!work.empty()) {
        int w = work.front();
        work.pop_front();
        for (int g : seed_ids) {
            int prod = tab.rank(tab.elems[size_t(g)].compose(tab.elems[size_t(w)]));
            if (seen.insert(prod).second) work.push_back(prod);
        }
    }
    IdSet out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

IdSet conjugate_ids(const SymmetricTable& tab, const IdSet& h, const Permutation& c,
                    const Permutation& c_inv) {
    IdSet out;
    out.reserve(h.size());
    for (int x : h) out.push_back(tab.rank(c_inv.compose(tab.elems[size_t(x)]).compose(c)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Permutation> greedy_generators(const SymmetricTable& tab, const IdSet& h) {
    std::vector<int> gen_ids;
    IdSet have{tab.rank(Permutation::identity(tab.n))};
    for (int x : h) {
        if (std::binary_search(have.begin(), have.end(), x)) continue;
        gen_ids.push_back(x);
        have = closure_ids(tab, gen_ids);
        if (have.size() == h.size()) break;
    }
    std::vector<Permutation> gens;
    for (int id : gen_ids) gens.push_back(tab.elems[size_t(id)]);
    return gens;
}

/// Closure search over conjugacy-class representatives: extend each known
/// class by one double-coset representative at a time.  `seeds` are the
/// starting subgroups; `keep` filters which discovered classes are retained
/// and extended (all classes when null).
std::vector<IdSet> enumerate_classes(const SymmetricTable& tab, std::vector<IdSet> seeds,
                                     const std::function<bool(const IdSet&)>& keep) {
    const int order_n = int(tab.elems.size());
    std::vector<Permutation> inverses;
    inverses.reserve(tab.elems.size());
    for (const auto& e : tab.elems) inverses.push_back(e.inverse());

    std::unordered_set<IdSet, IdSetHash> known;  // every subgroup of every class found
    std::vector<IdSet> reps;
    std::deque<IdSet> queue;
    auto admit = [&](const IdSet& h) {
        if (known.count(h)) return;
        // Normal subgroups have a one-element conjugacy orbit; spotting the
        // giant orders avoids materializing their huge single-set orbits.
        if (2 * h.size() >= tab.elems.size()) {
            known.insert(h);
        } else {
            for (int c = 0; c < order_n; ++c)
                known.insert(conjugate_ids(tab, h, tab.elems[size_t(c)], inverses[size_t(c)]));
        }
        reps.push_back(h);
        if (!keep || keep(h)) queue.push_back(h);
    };
    for (auto& s : seeds) admit(s);

    while (!queue.empty()) {
        IdSet h = std::move(queue.front());
        queue.pop_front();
        // A small generating set of h keeps the extension closures cheap.
        std::vector<int> h_gen_ids;
        {
            IdSet have{tab.rank(Permutation::identity(tab.n))};
            for (int x : h) {
                if (std::binary_search(have.begin(), have.end(), x)) continue;
                h_gen_ids.push_back(x);
                have = closure_ids(tab, h_gen_ids);
                if (have.size() == h.size()) break;
            }
        }
        std::vector<char> tried(tab.elems.size(), 0);
        for (int x : h) tried[size_t(x)] = 1;
        for (int g = 0; g < order_n; ++g) {
            if (tried[size_t(g)]) continue;
            std::vector<int> seed = h_gen_ids;
            seed.push_back(g);
            admit(closure_ids(tab, seed));
            // Mark the double coset H g H: any member generates the same
            // extension together with H.
            const Permutation& pg = tab.elems[size_t(g)];
            for (int a : h) {
                Permutation left = tab.elems[size_t(a)].compose(pg);
                for (int b : h)
                    tried[size_t(tab.rank(left.compose(tab.elems[size_t(b)])))] = 1;
            }
        }
    }
    std::sort(reps.begin(), reps.end(), [](const IdSet& a, const IdSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return reps;
}

std::vector<PermutationGroup> to_groups(const SymmetricTable& tab, const std::vector<IdSet>& reps,
                                        const std::function<bool(const PermutationGroup&)>& keep) {
    std::vector<PermutationGroup> out;
    for (const auto& h : reps) {
        auto g = PermutationGroup::from_generators(tab.n, greedy_generators(tab, h));
        if (!keep || keep(g)) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

PermutationGroup named_group(const std::string& name) {
    std::string key;
    for (char ch : name) key += char(std::tolower(static_cast<unsigned char>(ch)));
    if (key == "we6" || key == "w(e6)")
        return PermutationGroup::from_generators(
            27,
            {parse_permutation("(1,10,13)(2,24,6)(3,17,11)(4,23,8)(5,26,25)(7,18,12)(9,20,16)"
                               "(14,27,19)(15,21,22)",
                               27),
             parse_permutation("(1,18,13,22,10,11)(2,4,21,27,9,15)(3,20,26,5,14,7)(6,25,23)"
                               "(8,12,17,24,16,19)",
                               27)});
    if (key == "rect8")
        return PermutationGroup::from_generators(
            8, {parse_permutation("(1,2)(3,4)", 8), parse_permutation("(1,4)(2,3)", 8),
                parse_permutation("(5,6,7,8)", 8), parse_permutation("(6,8)", 8)});
    if (key.size() >= 2) {
        char kind = key[0];
        bool numeric = std::all_of(key.begin() + 1, key.end(),
                                   [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
        if (numeric) {
            int n = std::stoi(key.substr(1));
            if (n >= 1 && n <= 64) {
                switch (kind) {
                    case 's': return PermutationGroup::from_generators(n, symmetric_gens(n));
                    case 'a': return PermutationGroup::from_generators(n, alternating_gens(n));
                    case 'c': return PermutationGroup::from_generators(n, cyclic_gens(n));
                    case 'd':
                        if (n >= 3) return PermutationGroup::from_generators(n, dihedral_gens(n));
                        break;
                    default: break;
                }
            }
        }
    }
    throw std::invalid_argument("unknown group name: " + name);
}

PermutationGroup young_group(const OrbitPartition& parts) {
    const int n = parts.degree();
    std::vector<Permutation> gens;
    for (const auto& part : parts.blocks) {
        if (part.size() < 2) continue;
        std::vector<int> swp(n), cyc(n);
        std::iota(swp.begin(), swp.end(), 0);
        std::iota(cyc.begin(), cyc.end(), 0);
        std::swap(swp[size_t(part[0])], swp[size_t(part[1])]);
        for (size_t i = 0; i < part.size(); ++i)
            cyc[size_t(part[i])] = part[(i + 1) % part.size()];
        gens.push_back(Permutation::from_images(swp));
        if (part.size() > 2) gens.push_back(Permutation::from_images(cyc));
    }
    return PermutationGroup::from_generators(n, std::move(gens));
}

PermutationGroup wreath_group(const OrbitPartition& blocks) {
    const int n = blocks.degree();
    size_t d = blocks.blocks.front().size();
    for (const auto& b : blocks.blocks)
        if (b.size() != d) throw std::invalid_argument("wreath group needs equal block sizes");
    auto gens = young_group(blocks).generators();
    // Swapping the first two blocks position-wise, plus a cycle of all
    // blocks, generates the full top action.
    size_t m = blocks.blocks.size();
    if (m >= 2) {
        std::vector<int> swp(n), cyc(n);
        std::iota(swp.begin(), swp.end(), 0);
        std::iota(cyc.begin(), cyc.end(), 0);
        for (size_t i = 0; i < d; ++i) {
            std::swap(swp[size_t(blocks.blocks[0][i])], swp[size_t(blocks.blocks[1][i])]);
            for (size_t b = 0; b < m; ++b)
                cyc[size_t(blocks.blocks[b][i])] = blocks.blocks[(b + 1) % m][i];
        }
        gens.push_back(Permutation::from_images(swp));
        if (m > 2) gens.push_back(Permutation::from_images(cyc));
    }
    return PermutationGroup::from_generators(n, std::move(gens));
}

std::vector<PermutationGroup> subgroup_class_reps(int n) {
    if (n < 1 || n > 6)
        throw std::invalid_argument("exhaustive subgroup enumeration supported up to degree 6");
    SymmetricTable tab(n);
    IdSet trivial{tab.rank(Permutation::identity(n))};
    auto reps = enumerate_classes(tab, {trivial}, nullptr);
    return to_groups(tab, reps, nullptr);
}

std::vector<PermutationGroup> transitive_class_reps(int n) {
    if (n == 1) return {PermutationGroup::trivial(1)};
    if (n <= 6) {
        SymmetricTable tab(n);
        IdSet trivial{tab.rank(Permutation::identity(n))};
        auto reps = enumerate_classes(tab, {trivial}, nullptr);
        return to_groups(tab, reps, [](const PermutationGroup& g) { return g.is_transitive(); });
    }
    if (n == 7) {
        // Transitive groups of prime degree contain a full cycle, so closure
        // search upward from <(1..7)> visits a conjugate of every class;
        // intransitive classes never appear above it.
        SymmetricTable tab(7);
        auto c7 = closure_ids(tab, {tab.rank(cyclic_gens(7).front())});
        auto reps = enumerate_classes(tab, {c7}, nullptr);
        return to_groups(tab, reps, nullptr);
    }
    throw std::invalid_argument("transitive enumeration supported up to degree 7");
}

}  // namespace grouprec
