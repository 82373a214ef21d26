// evpt command line: batch powertrain sizing runs and scaling-law sweeps.
// Talks to the core exclusively through the shared library's C interface.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "evpt.h"

namespace {

int fail(evpt_status status, const char* action) {
    std::fprintf(stderr, "evpt %s failed (%s): %s\n", action, evpt_status_name(status),
                 evpt_last_error());
    return status == EVPT_ERROR_CONFIG || status == EVPT_ERROR_IO ||
                   status == EVPT_ERROR_PARSE || status == EVPT_ERROR_INVALID_ARGUMENT ||
                   status == EVPT_ERROR_MALFORMED_CYCLE || status == EVPT_ERROR_MALFORMED_DATA
               ? 1
               : 3;
}

struct ConfigHandle {
    evpt_config* ptr = nullptr;
    ~ConfigHandle() { evpt_config_free(ptr); }
};

int load_config(const std::string& path, const std::string& out_dir, std::uint64_t seed,
                bool seed_set, const std::string& topologies, ConfigHandle& handle) {
    evpt_status status = evpt_config_load(path.c_str(), &handle.ptr);
    if (status != EVPT_OK) return fail(status, "config load");
    if (!out_dir.empty()) {
        status = evpt_config_set_output_dir(handle.ptr, out_dir.c_str());
        if (status != EVPT_OK) return fail(status, "config override");
    }
    if (seed_set) {
        status = evpt_config_set_seed(handle.ptr, seed);
        if (status != EVPT_OK) return fail(status, "config override");
    }
    if (!topologies.empty()) {
        status = evpt_config_set_topologies(handle.ptr, topologies.c_str());
        if (status != EVPT_OK) return fail(status, "config override");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"electric powertrain sizing with geometrically scalable motor models"};
    app.set_version_flag("--version", std::string(evpt_version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string topologies;
    std::uint64_t seed = 0;

    auto* run_cmd = app.add_subcommand("run", "optimize every configured topology and write reports");
    run_cmd->add_option("config", config_path, "run configuration JSON")->required();
    run_cmd->add_option("--out", out_dir, "override the output directory");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "override the run seed");
    run_cmd->add_option("--topologies", topologies,
                        "comma-separated topology subset (RWD_RFM,AWD_RFM,AWD_AFM)");

    std::string quantity = "resistance";
    std::string grid = "0.7,0.85,1.15,1.3";
    std::string motor = "AFM";
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a scaled-motor quantity over a grid");
    sweep_cmd->add_option("config", config_path, "run configuration JSON")->required();
    sweep_cmd->add_option("--quantity", quantity,
                          "resistance, copper_nominal, torque, power, current, inductance, "
                          "flux, volume, mass or cost");
    sweep_cmd->add_option("--grid", grid, "comma list (0.7,0.85,1.15,1.3) or range (0.5:2.0:7)");
    sweep_cmd->add_option("--motor", motor, "referent motor technology: AFM or RFM");
    sweep_cmd->add_option("--out", out_dir, "output directory for the sweep CSV");

    CLI11_PARSE(app, argc, argv);

    ConfigHandle config;
    const int rc = load_config(config_path, out_dir, seed, seed_opt->count() > 0, topologies,
                               config);
    if (rc != 0) return rc;

    if (run_cmd->parsed()) {
        int all_converged = 0;
        const evpt_status status = evpt_run(config.ptr, &all_converged);
        if (status != EVPT_OK) return fail(status, "run");
        if (all_converged == 0) {
            std::fprintf(stderr, "evpt run: at least one topology did not converge\n");
            return 2;
        }
        return 0;
    }

    // sweep
    const std::string out_path =
        (out_dir.empty() ? std::string("out") : out_dir) + "/sweep_" + quantity + "_" + motor +
        ".csv";
    const evpt_status status =
        evpt_sweep(config.ptr, quantity.c_str(), grid.c_str(), motor.c_str(), out_path.c_str());
    if (status != EVPT_OK) return fail(status, "sweep");
    std::printf("%s\n", out_path.c_str());
    return 0;
}
