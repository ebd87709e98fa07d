#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouprec/corpus.hpp"
#include "grouprec/experiment.hpp"
#include "grouprec/io.hpp"
#include "grouprec/recovery.hpp"

using namespace grouprec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInconsistent = 4;

struct GlobalOptions {
    uint64_t seed = 1;
    double p = 0.0;
    double p_tilde = 0.25;
    double alpha = 0.05;
    bool json = false;
    uint64_t budget = kDefaultSampleCap;
    std::string group_spec;    // file path or builtin name
    std::string samples_path;  // optional fixed-sample file
};

PermutationGroup load_group(const std::string& spec) {
    std::ifstream probe(spec);
    if (probe.good()) return read_group_file(spec);
    return named_group(spec);
}

/// The sampling source chosen by the flags: a fixed sample file when given,
/// otherwise a mixture oracle over the named group at rate p.
struct SourceBundle {
    std::optional<PermutationGroup> group;
    std::optional<MixtureSampler> mixture;
    std::optional<FixedSequenceSource> fixed;
    SampleSource& source() { return fixed ? static_cast<SampleSource&>(*fixed) : *mixture; }
};

SourceBundle make_source(const GlobalOptions& opt) {
    SourceBundle b;
    if (!opt.samples_path.empty()) {
        b.fixed.emplace(read_sample_file(opt.samples_path));
        return b;
    }
    if (opt.group_spec.empty())
        throw CLI::ValidationError("--group or --samples is required for this command");
    b.group.emplace(load_group(opt.group_spec));
    b.mixture.emplace(*b.group, opt.p);
    return b;
}

nlohmann::json partition_json(const OrbitPartition& parts) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& blk : parts.blocks) {
        nlohmann::json pts = nlohmann::json::array();
        for (int p : blk) pts.push_back(p + 1);
        out.push_back(pts);
    }
    return out;
}

void emit_report(const TestReport& r, const GlobalOptions& opt) {
    if (opt.json) {
        std::cout << r.to_json().dump(2) << "\n";
        return;
    }
    std::cout << r.test << ": " << (r.decision ? "true" : "false") << "  (mean "
              << r.sample_mean << ", threshold " << r.threshold << ", samples " << r.samples
              << ", confidence " << r.confidence << ")\n";
    for (const auto& c : r.caveats) std::cout << "  caveat: " << c << "\n";
}

void emit_outcome(const RecoveryOutcome& out, const GlobalOptions& opt) {
    if (opt.json) {
        std::cout << out.to_json().dump(2) << "\n";
        return;
    }
    if (out.group) {
        std::cout << "recovered group of order " << out.group->order() << "\n";
        for (const auto& g : out.group->generators()) std::cout << "  " << format_cycles(g) << "\n";
    } else {
        std::cout << "no group recovered\n";
    }
    std::cout << "mode " << out.mode_count << "/" << out.runs << ", raw draws " << out.raw_draws
              << ", confidence " << out.confidence << "\n";
    for (const auto& c : out.caveats) std::cout << "caveat: " << c << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical recovery of permutation groups from an error-prone oracle"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opt;
    app.add_option("--seed", opt.seed, "master rng seed");
    app.add_option("--p", opt.p, "true mixture error rate for simulated oracles");
    app.add_option("--p-tilde", opt.p_tilde, "assumed upper bound on the error rate");
    app.add_option("--alpha", opt.alpha, "allowed failure probability");
    app.add_flag("--json", opt.json, "emit JSON reports");
    app.add_option("--budget", opt.budget, "raw-draw / sample budget");

    auto add_source_opts = [&](CLI::App* cmd) {
        cmd->add_option("--group", opt.group_spec, "group file or builtin name");
        cmd->add_option("--samples", opt.samples_path, "fixed sample file to read instead");
    };

    auto* recover = app.add_subcommand("recover", "run the full adaptive recovery pipeline");
    add_source_opts(recover);
    uint64_t heuristic_block_n = 0;
    recover->add_option("--heuristic-block-n", heuristic_block_n,
                        "use the two-pass heuristic with this sample count for block recovery");

    auto* test = app.add_subcommand("test", "run one hypothesis test");
    add_source_opts(test);
    std::string which_test;
    test->add_option("name", which_test, "giant|subgroup|transitivity|orbit-agree|primitivity")
        ->required();
    std::string h_spec;
    test->add_option("--candidate", h_spec, "candidate supergroup (file or builtin) for the subgroup test");
    int k_arg = 1;
    test->add_option("--k", k_arg, "transitivity order k");
    int point_i = 1, point_j = 2;
    test->add_option("--i", point_i, "first point (1-based) for orbit agreement");
    test->add_option("--j", point_j, "second point (1-based) for orbit agreement");

    auto* orbits_cmd = app.add_subcommand("orbits", "recover the orbit partition");
    add_source_opts(orbits_cmd);
    auto* blocks_cmd = app.add_subcommand("blocks", "recover minimal block systems");
    add_source_opts(blocks_cmd);
    auto* super_cmd = app.add_subcommand("find-supergroup", "grow and confirm a supergroup");
    add_source_opts(super_cmd);
    auto* constituents_cmd =
        app.add_subcommand("constituents", "recover the transitive constituents per orbit");
    add_source_opts(constituents_cmd);
    int constituent_k = 16;
    constituents_cmd->add_option("--k", constituent_k, "draws per constituent recovery");

    auto* sample_cmd = app.add_subcommand("sample", "emit raw oracle draws to a file");
    add_source_opts(sample_cmd);
    int sample_count = 100;
    std::string sample_out = "samples.txt";
    sample_cmd->add_option("--count", sample_count, "number of draws");
    sample_cmd->add_option("--out", sample_out, "output path")->required();

    auto* experiment_cmd = app.add_subcommand("experiment", "run a batch experiment spec");
    std::string spec_path, csv_out;
    experiment_cmd->add_option("--spec", spec_path, "ExperimentSpec JSON file")->required();
    experiment_cmd->add_option("--out", csv_out, "CSV output path (stdout when omitted)");

    auto* bounds_cmd = app.add_subcommand("bounds", "print test constants and sample sizes");
    int bounds_n = 27;
    bounds_cmd->add_option("--n", bounds_n, "degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Rng rng(opt.seed);
        if (recover->parsed()) {
            auto bundle = make_source(opt);
            RecoverConfig cfg;
            cfg.p_tilde = opt.p_tilde;
            cfg.alpha = opt.alpha;
            cfg.draw_budget = opt.budget;
            cfg.heuristic_block_n = heuristic_block_n;
            emit_outcome(main_recover(bundle.source(), cfg, rng), opt);
        } else if (test->parsed()) {
            auto bundle = make_source(opt);
            TestReport report;
            if (which_test == "giant") {
                report = giant_test(bundle.source(), opt.p_tilde, opt.alpha, rng, opt.budget);
            } else if (which_test == "subgroup") {
                if (h_spec.empty()) throw CLI::ValidationError("subgroup test needs --candidate");
                report = subgroup_test(bundle.source(), load_group(h_spec), opt.p_tilde, opt.alpha,
                                       rng, opt.budget);
            } else if (which_test == "transitivity") {
                report = k_transitivity_test(bundle.source(), k_arg, opt.p_tilde, opt.alpha, rng,
                                             opt.budget);
            } else if (which_test == "orbit-agree") {
                report = orbit_agreement(bundle.source(), point_i - 1, point_j - 1, opt.p_tilde,
                                         opt.alpha, rng, opt.budget);
            } else if (which_test == "primitivity") {
                report = primitivity_test(bundle.source(), opt.p_tilde, opt.alpha, rng, opt.budget);
            } else {
                throw CLI::ValidationError("unknown test: " + which_test);
            }
            emit_report(report, opt);
        } else if (orbits_cmd->parsed()) {
            auto bundle = make_source(opt);
            auto parts = orbit_recovery(bundle.source(), opt.p_tilde, opt.alpha, rng, opt.budget);
            std::cout << partition_json(parts).dump() << "\n";
        } else if (blocks_cmd->parsed()) {
            auto bundle = make_source(opt);
            auto systems =
                minimal_block_recovery(bundle.source(), opt.p_tilde, opt.alpha, rng, opt.budget);
            nlohmann::json out = nlohmann::json::array();
            for (const auto& s : systems) out.push_back(partition_json(s));
            std::cout << out.dump() << "\n";
        } else if (super_cmd->parsed()) {
            auto bundle = make_source(opt);
            auto h = find_supergroup(bundle.source(), nullptr, opt.p_tilde, opt.alpha, rng,
                                     opt.budget);
            std::cout << "supergroup of order " << h.order() << "\n";
            for (const auto& g : h.generators()) std::cout << "  " << format_cycles(g) << "\n";
        } else if (constituents_cmd->parsed()) {
            auto bundle = make_source(opt);
            auto parts = orbit_recovery(bundle.source(), opt.p_tilde, opt.alpha, rng, opt.budget);
            auto inner = [&](SampleSource& s, Rng& r) {
                return naive_recover(s, constituent_k, r);
            };
            auto groups = transitive_constituent_recovery(bundle.source(), parts, inner, rng);
            nlohmann::json out = nlohmann::json::array();
            for (size_t i = 0; i < groups.size(); ++i)
                out.push_back({{"orbit", partition_json(OrbitPartition::of({parts.blocks[i]}))[0]},
                               {"order", groups[i].order().str()}});
            std::cout << out.dump(2) << "\n";
        } else if (sample_cmd->parsed()) {
            auto bundle = make_source(opt);
            std::vector<Permutation> draws;
            for (int i = 0; i < sample_count; ++i) draws.push_back(bundle.source().next(rng));
            write_sample_file(sample_out, bundle.source().degree(), draws);
            std::cout << "wrote " << draws.size() << " draws to " << sample_out << "\n";
        } else if (experiment_cmd->parsed()) {
            std::ifstream in(spec_path);
            if (!in) throw std::invalid_argument("cannot open spec: " + spec_path);
            nlohmann::json j;
            in >> j;
            auto spec = ExperimentSpec::from_json(j);
            auto csv = experiment_csv(run_experiment(spec));
            if (csv_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(csv_out);
                out << csv;
                std::cout << "wrote " << csv_out << "\n";
            }
        } else if (bounds_cmd->parsed()) {
            auto c = giant_constants(bounds_n, opt.p_tilde);
            double delta = (c.lower - c.upper) / 2.0;
            std::cout << "n = " << bounds_n << ", p~ = " << opt.p_tilde << "\n"
                      << "b_n = " << b_n(bounds_n) << "\n"
                      << "U = " << c.upper << "\nL = " << c.lower << "\nc = " << c.threshold
                      << "\n"
                      << "N(alpha=" << opt.alpha << ", delta=" << delta
                      << ") = " << required_samples(opt.alpha, delta) << "\n";
        }
    } catch (const budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const statistical_error& e) {
        std::cerr << "statistical inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
