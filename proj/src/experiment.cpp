#include "grouprec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include "grouprec/corpus.hpp"
#include "grouprec/hypothesis.hpp"
#include "grouprec/recovery.hpp"

namespace grouprec {

namespace {

struct NamedGroupRef {
    std::string id;
    PermutationGroup group;
};

std::vector<NamedGroupRef> resolve_groups(const ExperimentSpec& spec) {
    std::vector<NamedGroupRef> out;
    if (spec.groups.empty()) {
        auto reps = subgroup_class_reps(6);
        for (size_t i = 0; i < reps.size(); ++i) {
            char id[16];
            std::snprintf(id, sizeof id, "s6_c%02zu", i);
            out.push_back({id, std::move(reps[i])});
        }
    } else {
        for (const auto& name : spec.groups) out.push_back({name, named_group(name)});
    }
    return out;
}

std::string class_label(const PermutationGroup& g) {
    if (!g.is_transitive()) return "intransitive";
    return g.is_primitive() ? "primitive" : "transitive";
}

Permutation uniform_symmetric(int n, Rng& rng) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation::from_images(img);
}

/// Runs `work(cell)` for every cell index on a small pool; results land in a
/// preallocated slot per cell, so the merge order is deterministic.
template <typename Work>
void for_each_cell(size_t cells, Work work) {
    unsigned workers = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t cell = next.fetch_add(1); cell < cells; cell = next.fetch_add(1)) {
                try {
                    work(cell);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t z = master ^ (index * 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

ExperimentSpec ExperimentSpec::from_json(const nlohmann::json& j) {
    ExperimentSpec s;
    if (j.contains("kind")) s.kind = j.at("kind").get<std::string>();
    if (j.contains("groups")) s.groups = j.at("groups").get<std::vector<std::string>>();
    if (j.contains("q_grid")) s.q_grid = j.at("q_grid").get<std::vector<double>>();
    if (j.contains("n_grid")) s.n_grid = j.at("n_grid").get<std::vector<int>>();
    if (j.contains("trials")) s.trials = j.at("trials").get<int>();
    if (j.contains("p_tilde")) s.p_tilde = j.at("p_tilde").get<double>();
    if (j.contains("alpha")) s.alpha = j.at("alpha").get<double>();
    if (j.contains("seed")) s.seed = j.at("seed").get<uint64_t>();
    if (s.q_grid.empty() || s.n_grid.empty() || s.trials < 1)
        throw std::invalid_argument("experiment spec needs nonempty grids and trials >= 1");
    return s;
}

nlohmann::json ExperimentSpec::to_json() const {
    return {{"kind", kind},     {"groups", groups}, {"q_grid", q_grid}, {"n_grid", n_grid},
            {"trials", trials}, {"p_tilde", p_tilde}, {"alpha", alpha}, {"seed", seed}};
}

std::vector<ExperimentRow> run_fixed_sample_experiment(const ExperimentSpec& spec) {
    auto groups = resolve_groups(spec);
    struct Cell {
        size_t gi, qi, ni;
    };
    std::vector<Cell> cells;
    for (size_t gi = 0; gi < groups.size(); ++gi)
        for (size_t qi = 0; qi < spec.q_grid.size(); ++qi)
            for (size_t ni = 0; ni < spec.n_grid.size(); ++ni) cells.push_back({gi, qi, ni});

    std::vector<std::vector<ExperimentRow>> results(cells.size());
    for_each_cell(cells.size(), [&](size_t ci) {
        const Cell& cell = cells[ci];
        const auto& ref = groups[cell.gi];
        const PermutationGroup& g = ref.group;
        const int n = g.degree();
        const double q = spec.q_grid[cell.qi];
        const int big_n = spec.n_grid[cell.ni];
        const uint64_t cell_seed = derive_seed(spec.seed, ci);
        Rng rng(cell_seed);

        const bool full_group = g.order() == factorial(n);
        const int n_err = full_group ? 0 : int(std::ceil(q * big_n));
        const auto consts = giant_constants(n, spec.p_tilde);
        const bool truth_giant = g.is_giant();
        const bool truth_transitive = g.is_transitive();
        const auto truth_orbits = g.orbits();

        int giant_ok = 0, trans_ok = 0, orbit_ok = 0;
        for (int trial = 0; trial < spec.trials; ++trial) {
            std::vector<Permutation> samples;
            samples.reserve(size_t(big_n));
            for (int e = 0; e < n_err; ++e) {
                Permutation x = uniform_symmetric(n, rng);
                while (g.contains(x)) x = uniform_symmetric(n, rng);
                samples.push_back(std::move(x));
            }
            while (int(samples.size()) < big_n) samples.push_back(g.uniform_element(rng));
            std::shuffle(samples.begin(), samples.end(), rng);

            double giant_hits = 0.0;
            int pairs = big_n / 2;
            for (int i = 0; i < pairs; ++i)
                giant_hits +=
                    giant_kind_of(n, {samples[size_t(2 * i)], samples[size_t(2 * i + 1)]}, rng) !=
                            GiantKind::neither
                        ? 1.0
                        : 0.0;
            bool giant_verdict = giant_hits / pairs >= consts.threshold;
            giant_ok += giant_verdict == truth_giant;

            double fix_mean = 0.0;
            for (const auto& s : samples) fix_mean += s.fix_count();
            fix_mean /= big_n;
            bool trans_verdict = fix_mean < (3.0 - spec.p_tilde) / 2.0;
            trans_ok += trans_verdict == truth_transitive;

            orbit_ok += heuristic_orbit_recovery_fixed(samples, -1.0, spec.p_tilde) == truth_orbits;
        }

        std::string order = g.order().str();
        std::string label = class_label(g);
        auto row = [&](const char* test, int succ) {
            return ExperimentRow{ref.id, order,         label,       q, big_n,
                                 test,   succ,          spec.trials, cell_seed};
        };
        results[ci] = {row("giant", giant_ok), row("transitivity", trans_ok),
                       row("orbit_heuristic", orbit_ok)};
    });

    std::vector<ExperimentRow> rows;
    for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
    return rows;
}

std::vector<ExperimentRow> run_supergroup_experiment(const ExperimentSpec& spec) {
    auto groups = resolve_groups(spec);
    struct Cell {
        size_t gi, pi;
    };
    std::vector<Cell> cells;
    for (size_t gi = 0; gi < groups.size(); ++gi)
        for (size_t pi = 0; pi < spec.q_grid.size(); ++pi) cells.push_back({gi, pi});

    std::vector<std::vector<ExperimentRow>> results(cells.size());
    for_each_cell(cells.size(), [&](size_t ci) {
        const Cell& cell = cells[ci];
        const auto& ref = groups[cell.gi];
        const double p = spec.q_grid[cell.pi];
        const uint64_t cell_seed = derive_seed(spec.seed, ci);
        Rng rng(cell_seed);
        int giants = 0, exact = 0, between = 0;
        for (int trial = 0; trial < spec.trials; ++trial) {
            MixtureSampler src(ref.group, p);
            auto h = find_supergroup(src, nullptr, spec.p_tilde, spec.alpha, rng);
            if (h.same_group_as(ref.group))
                ++exact;
            else if (h.is_giant())
                ++giants;
            else
                ++between;
        }
        std::string order = ref.group.order().str();
        std::string label = class_label(ref.group);
        auto row = [&](const char* test, int succ) {
            return ExperimentRow{ref.id, order,         label,       p, 0,
                                 test,   succ,          spec.trials, cell_seed};
        };
        results[ci] = {row("supergroup_exact", exact), row("supergroup_giant", giants),
                       row("supergroup_between", between)};
    });

    std::vector<ExperimentRow> rows;
    for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
    return rows;
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
    if (spec.kind == "fixed_sample") return run_fixed_sample_experiment(spec);
    if (spec.kind == "supergroup") return run_supergroup_experiment(spec);
    throw std::invalid_argument("unknown experiment kind: " + spec.kind);
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "group_id,order,class_label,q,N,test,successes,trials,seed\n";
    char buf[64];
    for (const auto& r : rows) {
        out += r.group_id + ',' + r.order + ',' + r.class_label + ',';
        std::snprintf(buf, sizeof buf, "%g", r.q);
        out += buf;
        std::snprintf(buf, sizeof buf, ",%d,", r.n);
        out += buf;
        out += r.test;
        std::snprintf(buf, sizeof buf, ",%d,%d,%llu\n", r.successes, r.trials,
                      static_cast<unsigned long long>(r.seed));
        out += buf;
    }
    return out;
}

}  // namespace grouprec
