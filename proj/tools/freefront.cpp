// freefront: batch driver for the coupled free-boundary simulator.
//
// Subcommands:
//   run          one simulation, outputs under --out
//   validate     hypothesis checks + a-priori constants table
//   sweep        independent runs over one parameter, parallel
//   convergence  self-convergence order table
//
// Exit codes: 0 clean, 1 usage/config error, 2 invariant/solver failure.

#include "freefront/io.hpp"
#include "freefront/oracle.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

namespace ff = freefront;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            bool allow_nonlipschitz) {
    const ff::ConfigMap map = ff::parse_config_file(config_path);
    const ff::ProblemConfig cfg = ff::build_problem(map, allow_nonlipschitz);
    try {
        const ff::Trajectory traj = ff::run(cfg);
        const bool ok = ff::write_run_output(out_dir, cfg.echo, traj);
        std::cout << "run: " << traj.steps << " steps, h(T) = "
                  << traj.final_state.fronts.h << ", g(T) = "
                  << traj.final_state.fronts.g
                  << (ok ? "" : "  [monitor breach]") << "\n";
        return ok ? 0 : 2;
    } catch (const ff::ConfigError&) {
        throw;
    } catch (const ff::Error& e) {
        ff::write_error_report(out_dir, e);
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    }
}

int cmd_validate(const std::string& config_path, bool allow_nonlipschitz) {
    const ff::ConfigMap map = ff::parse_config_file(config_path);
    const ff::ProblemConfig cfg = ff::build_problem(map, allow_nonlipschitz);
    try {
        const ff::KernelFloor floor =
            ff::validate_kernel(cfg.kernel, cfg.h0, allow_nonlipschitz);
        std::cout << "kernel " << ff::kernel_family_name(cfg.kernel.family)
                  << ": ok (eps_bar = " << floor.eps_bar
                  << ", delta0 = " << floor.delta0 << ")\n";
        const ff::AprioriBounds b = ff::compute_bounds(cfg, floor);
        const ff::ReactionReport rr = ff::validate_reaction(cfg.reaction, b.k1);
        std::cout << "reaction " << ff::reaction_kind_name(cfg.reaction.kind)
                  << ": ok (" << rr.note << ")\n";
        std::cout << "apriori:\n" << ff::to_json(b).dump(2) << "\n";
        return 0;
    } catch (const ff::Error& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 2;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const std::string& param, const std::vector<double>& values,
              bool allow_nonlipschitz) {
    static const std::vector<std::string> kAllowed = {
        "mu", "rho", "h0", "init.u0_amp", "init.v0_amp"};
    if (std::find(kAllowed.begin(), kAllowed.end(), param) == kAllowed.end())
        throw ff::ConfigError("sweep parameter must be one of mu, rho, h0, "
                              "init.u0_amp, init.v0_amp");
    if (values.empty()) throw ff::ConfigError("empty sweep value list");

    const ff::ConfigMap base = ff::parse_config_file(config_path);

    struct Row {
        double value = 0.0;
        double hT = 0.0, gT = 0.0, max_u = 0.0, max_v = 0.0;
        std::string status = "ok";
    };
    std::vector<Row> rows(values.size());

    unsigned threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("FREEFRONT_THREADS"))
        threads = static_cast<unsigned>(std::max(1, std::atoi(env)));
    threads = std::max(1u, std::min<unsigned>(threads, values.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            Row& row = rows[i];
            row.value = values[i];
            const std::string run_dir = out_dir + "/run_" + std::to_string(i);
            try {
                ff::ConfigMap map = base;
                map[param] = ff::fmt_g17(values[i]);
                const ff::ProblemConfig cfg = ff::build_problem(map, allow_nonlipschitz);
                const ff::Trajectory traj = ff::run(cfg);
                ff::write_run_output(run_dir, cfg.echo, traj);
                row.hT = traj.final_state.fronts.h;
                row.gT = traj.final_state.fronts.g;
                for (double w : traj.final_state.w) row.max_u = std::max(row.max_u, w);
                for (double z : traj.final_state.z) row.max_v = std::max(row.max_v, z);
            } catch (const ff::Error& e) {
                row.status = e.what();
                ff::write_error_report(run_dir, e);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ostringstream csv;
    csv << "value,h_T,g_T,max_u_T,max_v_T,status\n";
    bool all_ok = true;
    for (const Row& r : rows) {
        csv << ff::fmt_g17(r.value) << ',' << ff::fmt_g17(r.hT) << ','
            << ff::fmt_g17(r.gT) << ',' << ff::fmt_g17(r.max_u) << ','
            << ff::fmt_g17(r.max_v) << ",\"" << r.status << "\"\n";
        all_ok = all_ok && r.status == "ok";
    }
    std::filesystem::create_directories(out_dir);
    ff::spit_file(out_dir + "/summary.csv", csv.str());
    std::cout << csv.str();
    return all_ok ? 0 : 2;
}

int cmd_convergence(const std::string& config_path, int nlevels, bool refine_space,
                    bool allow_nonlipschitz) {
    const ff::ConfigMap map = ff::parse_config_file(config_path);
    const ff::ProblemConfig cfg = ff::build_problem(map, allow_nonlipschitz);
    const auto levels = ff::make_levels(cfg, nlevels, refine_space);
    const ff::ConvergenceReport rep = ff::convergence_study(cfg, levels);
    std::cout << "level   dt              N      h(T)\n";
    for (std::size_t i = 0; i < rep.levels.size(); ++i)
        std::cout << i << "       " << rep.levels[i].dt << "    " << rep.levels[i].N
                  << "    " << ff::fmt_g17(rep.h_final[i]) << "\n";
    std::cout << "order h(T): " << rep.p_h << "\norder w:    " << rep.p_w
              << "\norder z:    " << rep.p_z << "\n";
    if (!rep.monotone) std::cout << "warning: non-monotone errors, orders unreliable\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"freefront: coupled nonlocal/local free-boundary simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", param;
    std::vector<double> values;
    int levels = 3;
    bool allow_nonlipschitz = false, refine_space = false;

    app.add_flag("--allow-nonlipschitz-kernel", allow_nonlipschitz,
                 "admit kernels with jumps (uniform family)");

    auto* run = app.add_subcommand("run", "run one simulation");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory");

    auto* validate = app.add_subcommand("validate", "check hypotheses and bounds");
    validate->add_option("--config", config_path, "config file")->required();

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--param", param, "mu|rho|h0|init.u0_amp|init.v0_amp")->required();
    sweep->add_option("--values", values, "comma-separated values")
        ->required()
        ->delimiter(',');

    auto* conv = app.add_subcommand("convergence", "self-convergence study");
    conv->add_option("--config", config_path, "config file")->required();
    conv->add_option("--levels", levels, "refinement levels (>= 3)");
    conv->add_flag("--refine-space", refine_space, "also refine the grid per level");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run)) return cmd_run(config_path, out_dir, allow_nonlipschitz);
        if (app.got_subcommand(validate)) return cmd_validate(config_path, allow_nonlipschitz);
        if (app.got_subcommand(sweep))
            return cmd_sweep(config_path, out_dir, param, values, allow_nonlipschitz);
        if (app.got_subcommand(conv))
            return cmd_convergence(config_path, levels, refine_space, allow_nonlipschitz);
    } catch (const ff::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ff::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
