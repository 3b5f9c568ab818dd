#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "noise.hpp"

namespace hs {

// Flat experiment description; mirrors the key=value config file, with CLI
// flags overriding file entries.
struct ExperimentConfig {
    std::string mode = "dense"; // dense | sparse | se
    std::string algo = "mp";    // dense: mp | spectral | both
    std::string sparse_mode = "graph-bp"; // graph-bp | tree-population | local-rule | sparse-se
    std::string se_mode = "ideal";        // ideal | schedule | sparse

    int64_t n = 2000;
    int64_t k = -1; // -1: round(kappa * sqrt(n))
    double kappa = 1.0;
    std::vector<double> kappa_grid; // sweep; empty = {kappa}
    std::string noise = "rademacher";
    double lambda = 1.0;

    int d_star = 40;
    double m_threshold = 10.0;
    int t_star = -1; // -1: first mu_hat > m_threshold, capped at 50
    int t_power = -1;
    double rho_bar = -1.0;

    int32_t delta = 20;
    int bp_t = 3;
    int64_t pool_size = 100000;
    std::string sampling = "iid"; // iid | fixed-size
    double eps = 0.1;             // local-rule leaf error
    int t_max = 20;               // se traces

    uint64_t seed = 1;
    int64_t trials = 1;
    int jobs = 1;
    int threads = 1; // intra-trial
    bool no_timing = false;
    bool dump_sets = false;
    std::string out;
    std::string instance_file;
};

// Parses "key=value" lines ('#' comments, blank lines allowed). Unknown keys
// are an error.
ExperimentConfig parse_config_text(const std::string& text);
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

NoiseSpec config_noise(const ExperimentConfig& cfg);

struct TrialRecord {
    uint64_t seed = 0;
    std::string mode;
    std::string algo;
    int64_t n = 0;
    double kappa = 0.0;
    double lambda = 0.0;
    int32_t delta = -1; // -1 prints blank
    int t_star = -1;
    int d_star = -1;
    int success = 0;
    int64_t symdiff = 0;
    double overlap = 0.0;
    int64_t runtime_ms = 0;
};

struct TrialOutput {
    TrialRecord rec;
    std::vector<int32_t> truth;
    std::vector<int32_t> estimate;
    // dense MP trials only: candidate/eigen/final stage sizes and their
    // overlaps with the truth, for the diagnostics sidecar
    bool has_stages = false;
    int64_t stage_sizes[3] = {0, 0, 0};
    int64_t stage_truth[3] = {0, 0, 0};
    bool aborted = false;
};

// One seeded trial; the trial seed is derived from (config seed, index) so
// concurrent execution cannot perturb any stream. kappa_override < 0 keeps
// the config kappa.
TrialOutput run_trial(const ExperimentConfig& cfg, int64_t trial_index,
                      double kappa_override = -1.0, const std::string& algo = "");

// Grid sweep: one data row per (grid point, trial[, algo]) plus one aggregate
// row per group, marked in the `agg` column. Rows are emitted in
// deterministic trial order whatever the job count.
void sweep(const ExperimentConfig& cfg, std::ostream& csv,
           std::vector<TrialOutput>* collected = nullptr);

// CSV column header (first cell carries the schema version).
std::string csv_header();
std::string csv_row(const TrialRecord& rec, bool no_timing);

// run-sparse / se emission helpers (one row per t).
void sparse_modes_csv(const ExperimentConfig& cfg, std::ostream& out);
void se_csv(const ExperimentConfig& cfg, std::ostream& out);

// Sidecar JSON with per-trial truth/estimate sets (dump-sets).
void write_sets_sidecar(const std::vector<TrialOutput>& rows, const std::string& path);

} // namespace hs
