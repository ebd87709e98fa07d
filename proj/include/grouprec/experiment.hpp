#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "grouprec/group.hpp"

namespace grouprec {

/// Batch experiment description.  `kind` selects the harness:
///   "fixed_sample": shared fixed samples of size N with exactly ceil(q N)
///     draws from S_n - G, scoring the giant test, the 1-transitivity test,
///     and non-adaptive heuristic orbit recovery against exact ground truth.
///   "supergroup": repeated supergroup searches against a mixture oracle at
///     each p, classifying results as giant / exactly G / strictly between.
struct ExperimentSpec {
    std::string kind = "fixed_sample";
    /// Named groups (see corpus); empty means every conjugacy class of
    /// subgroups of S_6.
    std::vector<std::string> groups;
    std::vector<double> q_grid = {0.01, 0.25};  // fixed_sample error fractions / supergroup p
    std::vector<int> n_grid = {50, 100};        // fixed_sample sizes (ignored by supergroup)
    int trials = 50;
    double p_tilde = 0.25;
    double alpha = 0.05;
    uint64_t seed = 1;

    static ExperimentSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ExperimentRow {
    std::string group_id;
    std::string order;        // decimal string
    std::string class_label;  // primitive / transitive / intransitive
    double q;
    int n;
    std::string test;
    int successes;
    int trials;
    uint64_t seed;  // per-cell derived seed
};

std::vector<ExperimentRow> run_fixed_sample_experiment(const ExperimentSpec& spec);
std::vector<ExperimentRow> run_supergroup_experiment(const ExperimentSpec& spec);
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

/// Schema: group_id,order,class_label,q,N,test,successes,trials,seed.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

/// Deterministic per-cell seed derivation (splitmix64 over master ^ index).
uint64_t derive_seed(uint64_t master, uint64_t index);

}  // namespace grouprec
