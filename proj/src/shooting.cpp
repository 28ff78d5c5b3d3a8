#include "billiard/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "billiard/errors.hpp"
#include "billiard/parallel.hpp"

namespace billiard {

ShotResult endpoint_map(const BilliardTable& table, const ForceField& field, double v, double T,
                        const IntegratorOptions& opts) {
    if (table.dim() != 1)
        throw std::invalid_argument("endpoint_map: the shooting machinery is one-dimensional");
    const Trajectory traj = integrate_cauchy(table, field, {0.0, 0.0}, {v, 0.0}, T, opts);
    ShotResult s;
    s.v = v;
    s.endpoint = traj.endpoint1d();
    s.impact_count = static_cast<int>(traj.impacts.size());
    s.impact_times.reserve(traj.impacts.size());
    for (const auto& im : traj.impacts) s.impact_times.push_back(im.t);
    s.status = traj.status;
    return s;
}

int count_impacts(const BilliardTable& table, const ForceField& field, double v, double T,
                  const IntegratorOptions& opts) {
    return endpoint_map(table, field, v, T, opts).impact_count;
}

namespace {

void scan_side(const BilliardTable& table, const ForceField& field, double T, double lo, double hi,
               int n_grid, const SolverOptions& opts, BracketScan& out) {
    const int n_nodes = n_grid + 1;
    std::vector<ShotResult> shots(n_nodes);
    parallel_for(n_nodes, [&](std::size_t i) {
        const double v = lo + (hi - lo) * static_cast<double>(i) / n_grid;
        shots[i] = endpoint_map(table, field, v, T, opts.integrator);
    });

    const double zero_tol = 1e-13 * table.diameter();
    for (int i = 0; i < n_nodes; ++i)
        if (!shots[i].completed()) out.failed_nodes.push_back(shots[i].v);

    for (int i = 0; i + 1 < n_nodes; ++i) {
        const auto& a = shots[i];
        const auto& b = shots[i + 1];
        if (!a.completed() || !b.completed()) continue;
        if (std::fabs(a.endpoint) <= zero_tol) {
            out.brackets.push_back({a.v, a.v, a.endpoint, a.endpoint});
        } else if (std::fabs(b.endpoint) > zero_tol && a.endpoint * b.endpoint < 0.0) {
            out.brackets.push_back({a.v, b.v, a.endpoint, b.endpoint});
        }
    }
    // Tail node that is itself a root.
    if (n_nodes >= 1 && shots[n_nodes - 1].completed() &&
        std::fabs(shots[n_nodes - 1].endpoint) <= zero_tol) {
        const auto& b = shots[n_nodes - 1];
        out.brackets.push_back({b.v, b.v, b.endpoint, b.endpoint});
    }
}

}  // namespace

BracketScan find_brackets(const BilliardTable& table, const ForceField& field, double T,
                          double v_min, double v_max, int n_grid, const SolverOptions& opts,
                          bool both_signs) {
    if (!(v_min > 0.0) || !(v_max > v_min))
        throw std::invalid_argument("find_brackets: need 0 < v_min < v_max");
    if (n_grid < 2) throw std::invalid_argument("find_brackets: n_grid must be >= 2");
    BracketScan out;
    scan_side(table, field, T, v_min, v_max, n_grid, opts, out);
    if (both_signs) scan_side(table, field, T, -v_max, -v_min, n_grid, opts, out);
    return out;
}

DirichletSolution bisect_solution(const BilliardTable& table, const ForceField& field, double T,
                                  const Bracket& bracket, const SolverOptions& opts) {
    double lo = bracket.v_lo, hi = bracket.v_hi;
    double f_lo = bracket.f_lo;
    double v_best = lo;
    double f_best = std::fabs(bracket.f_lo) <= std::fabs(bracket.f_hi) ? bracket.f_lo : bracket.f_hi;
    if (std::fabs(bracket.f_hi) < std::fabs(bracket.f_lo)) v_best = hi;

    // Run the bracket all the way down to tol_v: the velocity itself is a
    // deliverable, so an early residual-based exit would leave it ~tol_residual
    // off the root.
    for (int iter = 0; iter < 200 && std::fabs(hi - lo) > opts.tol_v; ++iter) {
        double mid = 0.5 * (lo + hi);
        ShotResult shot = endpoint_map(table, field, mid, T, opts.integrator);
        if (!shot.completed()) {
            // Retry the midpoints of the two halves once each.
            const double w = hi - lo;
            ShotResult q1 = endpoint_map(table, field, lo + 0.25 * w, T, opts.integrator);
            if (q1.completed()) {
                shot = q1;
            } else {
                ShotResult q2 = endpoint_map(table, field, lo + 0.75 * w, T, opts.integrator);
                if (!q2.completed())
                    throw BracketLost("bisect_solution: shots failed across the bracket interior");
                shot = q2;
            }
            mid = shot.v;
        }
        if (std::fabs(shot.endpoint) < std::fabs(f_best)) {
            f_best = shot.endpoint;
            v_best = mid;
        }
        if ((shot.endpoint < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = shot.endpoint;
        } else {
            hi = mid;
        }
    }

    DirichletSolution sol;
    sol.v = v_best;
    sol.trajectory = integrate_cauchy(table, field, {0.0, 0.0}, {v_best, 0.0}, T, opts.integrator);
    sol.residual = std::fabs(sol.trajectory.endpoint1d());
    if (sol.trajectory.status != TrajectoryStatus::Completed)
        throw BracketLost("bisect_solution: converged velocity no longer integrates cleanly");
    if (sol.residual > opts.tol_residual)
        throw BracketLost("bisect_solution: bracket exhausted above the residual tolerance");
    return sol;
}

double scaling_escalation(const BilliardTable& table, const ForceField& field, double T, double v,
                          int target_extra, const SolverOptions& opts) {
    if (target_extra == 0) return v;
    if (target_extra < 0 || target_extra % 2 != 0)
        throw std::invalid_argument("scaling_escalation: target must be an even positive integer");
    if (v == 0.0) throw std::invalid_argument("scaling_escalation: v must be nonzero");

    ShotResult cur = endpoint_map(table, field, v, T, opts.integrator);
    if (!cur.completed() || cur.impact_count < 1)
        throw std::invalid_argument("scaling_escalation: x_v must complete with at least one impact");

    const double ml = m_l1(field, table);
    const double r = table.diameter() / 2.0;
    double cur_v = v;

    for (int level = 0; level < target_extra / 2; ++level) {
        const double speed = std::fabs(cur_v);
        const double t1 = cur.impact_times.front();
        double c = std::max(ml / speed + 6.0 * r / (speed * t1), (2.0 * ml + speed) / speed);
        c = std::max(c, 1.0) * 1.000001;

        bool ok = false;
        ShotResult next;
        for (int d = 0; d <= opts.max_escalation_doublings; ++d) {
            next = endpoint_map(table, field, c * cur_v, T, opts.integrator);
            if (next.completed() && next.impact_count >= cur.impact_count + 2) {
                ok = true;
                break;
            }
            c *= 2.0;
        }
        if (!ok)
            throw EscalationFailed("scaling_escalation: no verified scale after doubling budget");
        cur_v = c * cur_v;
        cur = next;
    }
    return cur_v;
}

namespace {

int grid_cells_for(double lo, double hi, const SolverOptions& opts) {
    const double decades = std::log10(hi / lo);
    const int n = static_cast<int>(std::ceil(opts.grid_per_decade * std::max(decades, 0.0)));
    return std::clamp(n, opts.min_grid, 16384);
}

}  // namespace

EnumerationResult enumerate_solutions(const BilliardTable& table, const ForceField& field, double T,
                                      int max_count, const EnumerateOptions& opts) {
    if (max_count < 1) throw std::invalid_argument("enumerate_solutions: max_count must be >= 1");
    const SolverOptions& sopts = opts.solver;
    EnumerationResult res;

    // The no-impact fixed point (solution staying inside the table) is a
    // separate object from the impact family; probe it once at v = 0.
    {
        ShotResult s0 = endpoint_map(table, field, 0.0, T, sopts.integrator);
        if (s0.completed() && s0.impact_count == 0 && std::fabs(s0.endpoint) <= sopts.tol_residual) {
            DirichletSolution triv;
            triv.v = 0.0;
            triv.trajectory = integrate_cauchy(table, field, {0, 0}, {0, 0}, T, sopts.integrator);
            triv.residual = std::fabs(triv.trajectory.endpoint1d());
            res.trivial = triv;
        }
    }

    auto is_distinct = [&](double v) {
        for (const auto& s : res.solutions)
            if (std::fabs(s.v - v) <= sopts.distinct_tol) return false;
        return true;
    };

    auto scan_window = [&](double lo, double hi) {
        if (!(hi > lo) || !(lo > 0.0)) return;
        BracketScan scan;
        try {
            scan = find_brackets(table, field, T, lo, hi, grid_cells_for(lo, hi, sopts), sopts);
        } catch (const std::exception& e) {
            res.diagnostics.push_back(std::string("bracket scan failed: ") + e.what());
            return;
        }
        if (!scan.failed_nodes.empty())
            res.diagnostics.push_back(std::to_string(scan.failed_nodes.size()) +
                                      " grid shots discarded (grazing or budget)");
        for (const auto& b : scan.brackets) {
            try {
                DirichletSolution sol = bisect_solution(table, field, T, b, sopts);
                if (is_distinct(sol.v)) res.solutions.push_back(std::move(sol));
            } catch (const BracketLost& e) {
                res.diagnostics.push_back(std::string("bracket lost near v=") +
                                          std::to_string(0.5 * (b.v_lo + b.v_hi)) + ": " + e.what());
            }
        }
    };

    if (opts.v_min && opts.v_max) {
        scan_window(*opts.v_min, *opts.v_max);
    } else {
        const double vscale = table.diameter() / T;
        const double lo = 1e-3 * vscale;

        // Find an impacting seed velocity for the escalation ladder.
        double u = 0.55 * vscale;
        bool impacting = false;
        for (int i = 0; i < 60; ++i) {
            ShotResult s = endpoint_map(table, field, u, T, sopts.integrator);
            if (s.completed() && s.impact_count >= 1) {
                impacting = true;
                break;
            }
            u *= 2.0;
        }
        if (!impacting) {
            res.diagnostics.push_back("no impacting velocity found; scanned the base window only");
            scan_window(lo, 0.55 * vscale);
        } else {
            scan_window(lo, u);
            const int budget =
                sopts.level_budget > 0 ? sopts.level_budget : max_count + 4;
            for (int level = 0; level < budget &&
                                static_cast<int>(res.solutions.size()) < max_count;
                 ++level) {
                double u_next;
                try {
                    u_next = std::fabs(scaling_escalation(table, field, T, u, 2, sopts));
                } catch (const std::exception& e) {
                    res.diagnostics.push_back(std::string("escalation stopped: ") + e.what());
                    break;
                }
                scan_window(u, u_next);
                u = u_next;
            }
        }
    }

    std::sort(res.solutions.begin(), res.solutions.end(),
              [](const DirichletSolution& a, const DirichletSolution& b) {
                  const double fa = std::fabs(a.v), fb = std::fabs(b.v);
                  if (fa != fb) return fa < fb;
                  return a.v < b.v;
              });
    if (static_cast<int>(res.solutions.size()) > max_count) res.solutions.resize(max_count);

    // Determinism loop: every reported solution re-integrates to within
    // twice the residual tolerance.
    for (const auto& s : res.solutions) {
        const Trajectory check =
            integrate_cauchy(table, field, {0, 0}, {s.v, 0}, T, sopts.integrator);
        if (std::fabs(check.endpoint1d()) > 2.0 * sopts.tol_residual)
            res.diagnostics.push_back("re-integration residual above 2*tol at v=" +
                                      std::to_string(s.v));
    }
    return res;
}

}  // namespace billiard
