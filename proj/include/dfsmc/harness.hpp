#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dfsmc/array_model.hpp"
#include "dfsmc/dfsmc.hpp"
#include "dfsmc/dictionary.hpp"
#include "dfsmc/types.hpp"

namespace dfsmc {

// A full Monte Carlo experiment: one scenario (optionally swept along one
// axis), a trial count, and the set of estimators to run on identical data.
struct ExperimentConfig {
    Scenario scenario;
    RVec truth_directions_deg{-8.268, 18.128, 30.428};  // mirrored into scenario.sources
    double grid_lo_deg = -60.0;
    double grid_hi_deg = 60.0;
    double grid_step_deg = 1.0;
    Hyperparams hyper;
    Schedule schedule;
    std::vector<std::string> methods{"dfsmc", "sbl_on_grid", "sbl_off_grid", "music"};
    int trials = 1;
    std::uint64_t seed = 12345;
    std::string sweep_axis;  // "", "snr_db", or "coupling_alpha_db"
    RVec sweep_values;       // one scenario per value when axis is set
    bool random_truths = false;
    std::string output_dir = "out";
    int workers = 1;
    bool certify = false;
    bool write_spectra = true;  // spectrum_<method>_<trial>.csv, single-point runs only
    bool timings = false;       // opt-in wall-time sidecar (non-deterministic content)
    bool quiet = false;

    void validate() const;
};

// Reference scenario with every field at its default.
ExperimentConfig default_config();

// JSON config file; missing fields keep their defaults, unknown keys and type
// mismatches fail fast naming the offending field.
ExperimentConfig load_config(const std::string& path);

std::string method_label(const std::string& key);

struct TrialReport {
    int sweep_index = 0;
    double snr_db = 0.0;
    double coupling_alpha_db = 0.0;
    int trial = 0;
    std::string method;
    std::uint64_t seed = 0;  // trial seed (master ^ trial index)
    RVec truth_deg;
    RVec picked_deg;  // ascending
    double e1_deg = 0.0;
    double wall_seconds = 0.0;  // only ever written to the opt-in timings sidecar
};

struct SweepPointSummary {
    double snr_db = 0.0;
    double coupling_alpha_db = 0.0;
    std::map<std::string, double> e2_deg;
    std::map<std::string, double> median_e1_deg;
};

struct SpectrumDump {
    int trial = 0;
    std::string method;
    RVec power;
    RVec offsets;  // zeros for methods without off-grid refinement
};

struct ExperimentResult {
    std::vector<TrialReport> trial_reports;  // ordered by (sweep point, trial, method)
    std::vector<SweepPointSummary> sweep;
    std::vector<SpectrumDump> spectra;  // populated for single-point runs
    double alpha_init_first = 0.0;      // engine noise-precision init of trial 0
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// trials.csv + summary.json (+ spectra, + timings.csv when enabled) under
// cfg.output_dir. Deterministic byte-for-byte given config and seed.
void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& res);

// Per-iteration wall time of the full engine at U and exactly 2U grid points
// (same data, same schedule); ratio = per_iter_2 / per_iter_1.
struct ScalingBench {
    int u1 = 0, u2 = 0;
    double per_iter_1 = 0.0, per_iter_2 = 0.0;
    double ratio = 0.0;
};
ScalingBench run_scaling_bench(int num_antennas, int snapshots, double lo_deg, double step_deg,
                               int points, const Schedule& sched, std::uint64_t seed);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace dfsmc
