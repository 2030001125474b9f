#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dfsmc/harness.hpp"
#include "dfsmc/kernels.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Sparse-Bayesian DOA estimation for a coupled uniform linear array: "
        "Monte Carlo experiment driver"};
    app.require_subcommand(0, 1);

    std::string config_path, out_dir, kernel;
    std::vector<std::string> methods;
    std::vector<double> snr_list, coupling_list;
    int trials = -1, workers = -1, taps = -1;
    std::uint64_t seed = 0;
    bool random_truths = false, certify = false, timings = false, no_spectra = false,
         quiet = false;

    app.add_option("--config", config_path, "JSON config file; omitted fields keep defaults");
    app.add_option("--method", methods,
                   "methods to run: dfsmc, sbl_on_grid, sbl_off_grid, music")
        ->delimiter(',');
    app.add_option("--trials", trials, "Monte Carlo trials per sweep point");
    auto* seed_opt = app.add_option("--seed", seed, "master seed; trial p uses seed XOR p");
    app.add_option("--snr", snr_list, "SNR in dB; several values sweep the SNR axis")
        ->delimiter(',');
    app.add_option("--coupling-db", coupling_list,
                   "coupling magnitude alpha in dB; several values sweep that axis")
        ->delimiter(',');
    app.add_option("--coupling-taps", taps, "nonzero coupling coefficients (1 = no coupling)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "concurrent trial workers");
    app.add_flag("--random-truths", random_truths,
                 "redraw off-grid truth directions each trial");
    app.add_flag("--certify", certify, "track linear-solve residual certificates");
    app.add_flag("--timings", timings, "write wall-time sidecar timings.csv");
    app.add_flag("--no-spectra", no_spectra, "skip per-trial spectrum CSVs");
    app.add_flag("--quiet", quiet, "suppress progress lines on stderr");
    app.add_option("--kernel", kernel, "force kernel backend: scalar, avx2, neon");

    CLI::App* kern_cmd = app.add_subcommand("kernels", "list available kernel backends");

    CLI::App* bench_cmd =
        app.add_subcommand("bench-scaling", "per-iteration runtime at U vs 2U grid points");
    int b_antennas = 20, b_snapshots = 400, b_points = 121;
    double b_lo = -60.0, b_step = 1.0;
    dfsmc::Schedule b_sched{60, 10, 10};
    std::uint64_t b_seed = 7;
    bench_cmd->add_option("--antennas", b_antennas, "array size N");
    bench_cmd->add_option("--snapshots", b_snapshots, "snapshot count M");
    bench_cmd->add_option("--points", b_points, "base grid size U (second run uses 2U)");
    bench_cmd->add_option("--lo", b_lo, "grid start, degrees");
    bench_cmd->add_option("--step", b_step, "base grid step, degrees");
    bench_cmd->add_option("--iters", b_sched.n1, "iterations per timed run");
    bench_cmd->add_option("--warmup", b_sched.n2, "iteration starting the update phases");
    bench_cmd->add_option("--phase", b_sched.n3, "phase length");
    bench_cmd->add_option("--bench-seed", b_seed, "data seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!kernel.empty() && !dfsmc::kernels::select(kernel)) {
            std::fprintf(stderr, "error: kernel backend '%s' not available on this machine\n",
                         kernel.c_str());
            return 2;
        }

        if (kern_cmd->parsed()) {
            for (const std::string& name : dfsmc::kernels::available())
                std::printf("%s\n", name.c_str());
            std::printf("active: %s\n", dfsmc::kernels::active().name);
            return 0;
        }

        if (bench_cmd->parsed()) {
            const dfsmc::ScalingBench b = dfsmc::run_scaling_bench(
                b_antennas, b_snapshots, b_lo, b_step, b_points, b_sched, b_seed);
            std::printf("{\"u1\": %d, \"u2\": %d, \"per_iter_1\": %s, \"per_iter_2\": %s, "
                        "\"ratio\": %s}\n",
                        b.u1, b.u2, dfsmc::format_double(b.per_iter_1).c_str(),
                        dfsmc::format_double(b.per_iter_2).c_str(),
                        dfsmc::format_double(b.ratio).c_str());
            return 0;
        }

        dfsmc::ExperimentConfig cfg =
            config_path.empty() ? dfsmc::default_config() : dfsmc::load_config(config_path);
        if (!methods.empty()) cfg.methods = methods;
        if (trials >= 0) cfg.trials = trials;
        if (seed_opt->count() > 0) cfg.seed = seed;
        if (taps >= 0) cfg.scenario.coupling_taps = taps;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (workers >= 0) cfg.workers = workers;
        if (random_truths) cfg.random_truths = true;
        if (certify) cfg.certify = true;
        if (timings) cfg.timings = true;
        if (no_spectra) cfg.write_spectra = false;
        if (quiet) cfg.quiet = true;
        if (snr_list.size() > 1 && coupling_list.size() > 1) {
            std::fprintf(stderr, "error: only one sweep axis at a time\n");
            return 2;
        }
        if (snr_list.size() == 1) cfg.scenario.snr_db = snr_list[0];
        if (coupling_list.size() == 1) cfg.scenario.coupling_alpha_db = coupling_list[0];
        if (snr_list.size() > 1) {
            cfg.sweep_axis = "snr_db";
            cfg.sweep_values = snr_list;
        } else if (coupling_list.size() > 1) {
            cfg.sweep_axis = "coupling_alpha_db";
            cfg.sweep_values = coupling_list;
        }

        const dfsmc::ExperimentResult res = dfsmc::run_experiment(cfg);
        dfsmc::write_outputs(cfg, res);

        for (const dfsmc::SweepPointSummary& sum : res.sweep) {
            std::printf("snr=%g dB, coupling=%g dB, trials=%d:\n", sum.snr_db,
                        sum.coupling_alpha_db, cfg.trials);
            for (const std::string& m : cfg.methods)
                std::printf("  %-28s e2 = %-12s median e1 = %s deg\n",
                            dfsmc::method_label(m).c_str(),
                            dfsmc::format_double(sum.e2_deg.at(m)).c_str(),
                            dfsmc::format_double(sum.median_e1_deg.at(m)).c_str());
        }
        std::printf("outputs written to %s\n", cfg.output_dir.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
