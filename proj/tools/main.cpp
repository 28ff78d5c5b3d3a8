// billiard-bvp: command-line front end. See README for the config schema
// and output formats.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "billiard/config.hpp"
#include "billiard/csv.hpp"
#include "billiard/degree.hpp"
#include "billiard/errors.hpp"
#include "billiard/shooting.hpp"

using namespace billiard;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
};

ProblemConfig load(const std::string& path) { return parse_config(path); }

int run_simulate(const CommonArgs& args, std::vector<double> v, const std::string& impacts_out) {
    ProblemConfig cfg = load(args.config_path);
    if (v.empty() && cfg.simulate_v) v = *cfg.simulate_v;
    if (static_cast<int>(v.size()) != cfg.table.dim()) {
        std::fprintf(stderr, "simulate: expected %d velocity component(s)\n", cfg.table.dim());
        return kExitUsage;
    }
    const Vec2 v0{v[0], cfg.table.dim() == 2 ? v[1] : 0.0};
    const Trajectory traj =
        integrate_cauchy(cfg.table, cfg.field, {0, 0}, v0, cfg.T, cfg.integrator);
    write_file(args.out_path, trajectory_csv(traj));
    if (!impacts_out.empty()) write_file(impacts_out, impacts_csv(traj));
    std::printf("status=%s impacts=%zu endpoint=%.17g", to_string(traj.status),
                traj.impacts.size(), traj.endpoint().x);
    if (cfg.table.dim() == 2) std::printf(",%.17g", traj.endpoint().y);
    std::printf("\n");
    return traj.status == TrajectoryStatus::Completed ? kExitOk : kExitNumerical;
}

int run_shoot(const CommonArgs& args, std::optional<double> v_min, std::optional<double> v_max,
              std::optional<int> grid) {
    ProblemConfig cfg = load(args.config_path);
    if (!v_min) v_min = cfg.v_min;
    if (!v_max) v_max = cfg.v_max;
    if (!grid) grid = cfg.shoot_grid;
    if (!v_min || !v_max || !grid) {
        std::fprintf(stderr, "shoot: --v-min, --v-max and --grid are required\n");
        return kExitUsage;
    }
    std::vector<ShotResult> shots;
    for (int side = 0; side < 2; ++side) {
        for (int i = 0; i <= *grid; ++i) {
            const double mag = *v_min + (*v_max - *v_min) * static_cast<double>(i) / *grid;
            const double v = side == 0 ? mag : -mag;
            shots.push_back(endpoint_map(cfg.table, cfg.field, v, cfg.T, cfg.integrator));
        }
    }
    write_file(args.out_path, shots_csv(shots));
    std::printf("shots=%zu\n", shots.size());
    return kExitOk;
}

int run_solve(const CommonArgs& args, std::optional<int> max_count, std::optional<double> v_min,
              std::optional<double> v_max) {
    ProblemConfig cfg = load(args.config_path);
    EnumerateOptions opts;
    opts.solver = cfg.solver;
    opts.v_min = v_min ? v_min : cfg.v_min;
    opts.v_max = v_max ? v_max : cfg.v_max;
    const int count = max_count ? *max_count : cfg.max_count.value_or(4);

    const EnumerationResult res = enumerate_solutions(cfg.table, cfg.field, cfg.T, count, opts);
    write_file(args.out_path, solutions_csv(res.solutions));
    for (const auto& d : res.diagnostics) std::fprintf(stderr, "solve: %s\n", d.c_str());
    if (res.trivial)
        std::printf("trivial solution: v=0 stays interior (residual=%.17g)\n",
                    res.trivial->residual);
    std::printf("solutions=%zu\n", res.solutions.size());
    for (const auto& s : res.solutions)
        std::printf("  v=%.17g residual=%.3g impacts=%zu\n", s.v, s.residual,
                    s.trajectory.impacts.size());
    return res.solutions.empty() && !res.trivial ? kExitNumerical : kExitOk;
}

int run_attainable(const CommonArgs& args, std::optional<double> d, std::optional<int> samples) {
    ProblemConfig cfg = load(args.config_path);
    if (!d) d = cfg.d;
    if (!samples) samples = cfg.samples;
    if (!d) {
        std::fprintf(stderr, "attainable: --d is required\n");
        return kExitUsage;
    }
    const auto set =
        attainable_set(cfg.table, cfg.field, cfg.T, *d, samples.value_or(64), cfg.degree);
    write_file(args.out_path, attainable_csv(set));
    std::printf("samples=%zu\n", set.size());
    return kExitOk;
}

int run_winding(const CommonArgs& args, std::optional<double> d, std::optional<int> samples) {
    ProblemConfig cfg = load(args.config_path);
    if (!d) d = cfg.d;
    if (!samples) samples = cfg.samples;
    if (!d) {
        std::fprintf(stderr, "winding: --d is required\n");
        return kExitUsage;
    }
    try {
        const WindingResult w =
            winding_number(cfg.table, cfg.field, cfg.T, *d, samples.value_or(64), cfg.degree);
        std::printf("d=%.17g winding=%d min_dist=%.17g samples=%d\n", w.d, w.winding,
                    w.min_dist_to_origin, w.samples_used);
        if (!args.out_path.empty()) {
            SweepResult one;
            one.entries.push_back({*d, w, std::nullopt, ""});
            write_file(args.out_path, sweep_csv(one));
        }
        return kExitOk;
    } catch (const OriginTooClose& e) {
        std::printf("d=%.17g winding undefined: solution candidate on this shell (min_dist=%.3g)\n",
                    e.d, e.min_dist);
        return kExitOk;
    } catch (const MeshBudgetExceeded& e) {
        std::fprintf(stderr, "winding: %s\n", e.what());
        return kExitNumerical;
    }
}

int run_sweep(const CommonArgs& args, std::vector<double> d_grid, std::optional<int> samples) {
    ProblemConfig cfg = load(args.config_path);
    if (d_grid.empty() && cfg.d_grid) d_grid = *cfg.d_grid;
    if (!samples) samples = cfg.samples;
    if (d_grid.empty()) {
        std::fprintf(stderr, "sweep: --d-grid is required\n");
        return kExitUsage;
    }
    const SweepResult sweep =
        degree_sweep(cfg.table, cfg.field, cfg.T, d_grid, samples.value_or(64), cfg.degree);
    write_file(args.out_path, sweep_csv(sweep));
    for (const double d : sweep.flags.solution_candidates)
        std::printf("solution candidate on shell d=%.17g\n", d);
    for (const auto& [d1, d2] : sweep.flags.annuli)
        std::printf("winding change: solution with |v| in (%.17g, %.17g)\n", d1, d2);
    std::printf("entries=%zu\n", sweep.entries.size());
    return kExitOk;
}

int run_normal_rays(const CommonArgs& args) {
    ProblemConfig cfg = load(args.config_path);
    if (!cfg.field.is_zero()) {
        std::fprintf(stderr, "normal-rays: requires a zero force field\n");
        return kExitUsage;
    }
    const NormalRaySolutions rays = normal_ray_solutions(cfg.table, cfg.T, 1e-8, cfg.degree);
    write_file(args.out_path, normal_rays_csv(rays));
    for (const auto& d : rays.diagnostics) std::fprintf(stderr, "normal-rays: %s\n", d.c_str());
    if (rays.continuum)
        std::printf("continuum: every direction solves; representative returned\n");
    std::printf("rays=%zu\n", rays.rays.size());
    return kExitOk;
}

int run_deviation(const CommonArgs& args, std::optional<double> d, std::optional<int> dirs) {
    ProblemConfig cfg = load(args.config_path);
    if (!d) d = cfg.d;
    if (!dirs) dirs = cfg.dirs;
    if (!d) {
        std::fprintf(stderr, "deviation: --d is required\n");
        return kExitUsage;
    }
    const DeviationReport rep =
        uniform_deviation(cfg.table, cfg.field, cfg.T, *d, dirs.value_or(16), cfg.degree);
    if (!args.out_path.empty()) write_file(args.out_path, deviation_csv(rep));
    std::printf("d=%.17g max_dev_first_impact=%.17g max_dev_full=%.17g\n", rep.d,
                rep.max_first_impact, rep.max_full);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet boundary value solver for billiard tables"};
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<double> sim_v;
    std::string impacts_out;
    std::optional<double> v_min, v_max, d;
    std::optional<int> grid, max_count, samples, dirs;
    std::vector<double> d_grid;

    auto add_common = [&](CLI::App* cmd, bool out_required = true) {
        cmd->add_option("config", args.config_path, "problem config file")->required();
        auto* o = cmd->add_option("--out", args.out_path, "output CSV path");
        if (out_required) o->required();
    };

    auto* simulate = app.add_subcommand("simulate", "integrate one trajectory");
    add_common(simulate);
    simulate->add_option("--v", sim_v, "initial velocity components")->delimiter(',');
    simulate->add_option("--impacts-out", impacts_out, "impact log CSV path");

    auto* shoot = app.add_subcommand("shoot", "scan the endpoint map on a velocity grid");
    add_common(shoot);
    shoot->add_option("--v-min", v_min);
    shoot->add_option("--v-max", v_max);
    shoot->add_option("--grid", grid);

    auto* solve = app.add_subcommand("solve", "enumerate Dirichlet solutions");
    add_common(solve);
    solve->add_option("--max-count", max_count);
    solve->add_option("--v-min", v_min);
    solve->add_option("--v-max", v_max);

    auto* attainable = app.add_subcommand("attainable", "sample the attainable set on a speed shell");
    add_common(attainable);
    attainable->add_option("--d", d);
    attainable->add_option("--samples", samples);

    auto* winding = app.add_subcommand("winding", "winding number of the endpoint loop");
    add_common(winding, false);
    winding->add_option("--d", d);
    winding->add_option("--samples", samples);

    auto* sweep = app.add_subcommand("sweep", "winding number across a grid of speeds");
    add_common(sweep);
    sweep->add_option("--d-grid", d_grid)->delimiter(',');
    sweep->add_option("--samples", samples);

    auto* rays = app.add_subcommand("normal-rays", "uniform-motion solutions along normal rays");
    add_common(rays);

    auto* deviation = app.add_subcommand("deviation", "deviation from the uniform billiard flow");
    add_common(deviation, false);
    deviation->add_option("--d", d);
    deviation->add_option("--dirs", dirs);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(args, sim_v, impacts_out);
        if (shoot->parsed()) return run_shoot(args, v_min, v_max, grid);
        if (solve->parsed()) return run_solve(args, max_count, v_min, v_max);
        if (attainable->parsed()) return run_attainable(args, d, samples);
        if (winding->parsed()) return run_winding(args, d, samples);
        if (sweep->parsed()) return run_sweep(args, d_grid, samples);
        if (rays->parsed()) return run_normal_rays(args);
        if (deviation->parsed()) return run_deviation(args, d, dirs);
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    } catch (const IoError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}
