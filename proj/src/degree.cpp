#include "billiard/degree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "billiard/errors.hpp"
#include "billiard/parallel.hpp"

namespace billiard {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kRayGrid = 4096;

AttainableSample shoot_shell(const BilliardTable& table, const ForceField& field, double T,
                             double d, double theta, const IntegratorOptions& opts) {
    AttainableSample s;
    s.theta = theta;
    s.d = d;
    if (d == 0.0) {
        // Degenerate shell: the rest trajectory.
        const Trajectory traj = integrate_cauchy(table, field, {0, 0}, {0, 0}, T, opts);
        s.endpoint = traj.endpoint();
        s.status = traj.status;
        return s;
    }
    const Trajectory traj = integrate_cauchy(table, field, {0, 0}, d * unit(theta), T, opts);
    s.endpoint = traj.endpoint();
    s.status = traj.status;
    return s;
}

}  // namespace

std::vector<AttainableSample> attainable_set(const BilliardTable& table, const ForceField& field,
                                             double T, double d, int n_samples,
                                             const DegreeOptions& opts) {
    if (table.dim() != 2) throw std::invalid_argument("attainable_set: table must be planar");
    if (d < 0.0) throw std::invalid_argument("attainable_set: d must be >= 0");
    if (n_samples < 8) throw std::invalid_argument("attainable_set: need at least 8 samples");
    std::vector<AttainableSample> out(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        const double theta = kTwoPi * static_cast<double>(i) / n_samples;
        out[i] = shoot_shell(table, field, T, d, theta, opts.integrator);
    });
    return out;
}

double winding_turns(const std::vector<Vec2>& loop) {
    double sum = 0.0;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = loop[i];
        const Vec2& b = loop[(i + 1) % n];
        sum += std::atan2(cross(a, b), dot(a, b));
    }
    return sum / kTwoPi;
}

WindingResult winding_number(const BilliardTable& table, const ForceField& field, double T,
                             double d, int n_samples, const DegreeOptions& opts) {
    if (table.dim() != 2) throw std::invalid_argument("winding_number: table must be planar");
    if (n_samples < 8) throw std::invalid_argument("winding_number: need at least 8 samples");

    // Angle-keyed so refinement keeps the loop ordered.
    std::map<double, Vec2> pts;
    auto shoot_many = [&](const std::vector<double>& angles) {
        std::vector<AttainableSample> shot(angles.size());
        parallel_for(angles.size(), [&](std::size_t i) {
            shot[i] = shoot_shell(table, field, T, d, angles[i], opts.integrator);
        });
        for (const auto& s : shot) {
            if (s.status != TrajectoryStatus::Completed)
                throw MeshBudgetExceeded("winding_number: a shell shot did not complete (" +
                                         std::string(to_string(s.status)) + " at theta=" +
                                         std::to_string(s.theta) + ")");
            pts[s.theta] = s.endpoint;
        }
    };

    {
        std::vector<double> angles(n_samples);
        for (int i = 0; i < n_samples; ++i) angles[i] = kTwoPi * static_cast<double>(i) / n_samples;
        shoot_many(angles);
    }

    const double delta = opts.delta_factor * table.diameter();
    for (int pass = 0;; ++pass) {
        double min_dist = std::numeric_limits<double>::infinity();
        for (const auto& [th, p] : pts) min_dist = std::min(min_dist, norm(p));
        if (min_dist <= delta) throw OriginTooClose(d, min_dist);

        // Arcs whose endpoint step exceeds pi/2 need a finer angular mesh.
        std::vector<double> refine;
        std::vector<std::pair<double, Vec2>> seq(pts.begin(), pts.end());
        const std::size_t n = seq.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& [th_a, pa] = seq[i];
            const auto& [th_b, pb] = seq[(i + 1) % n];
            const double step = std::fabs(std::atan2(cross(pa, pb), dot(pa, pb)));
            if (step > kPi / 2.0) {
                const double th_mid =
                    i + 1 < n ? 0.5 * (th_a + th_b) : 0.5 * (th_a + th_b + kTwoPi);
                refine.push_back(std::fmod(th_mid, kTwoPi));
            }
        }
        if (refine.empty()) {
            std::vector<Vec2> loop;
            loop.reserve(n);
            for (const auto& [th, p] : seq) loop.push_back(p);
            const double turns = winding_turns(loop);
            const int w = static_cast<int>(std::lround(turns));
            if (std::fabs(turns - w) >= opts.integer_slack)
                throw MeshBudgetExceeded("winding_number: turn sum is not near an integer");
            return WindingResult{d, w, min_dist, static_cast<int>(n)};
        }
        if (pass >= opts.max_doublings)
            throw MeshBudgetExceeded("winding_number: refinement budget exhausted");
        shoot_many(refine);
    }
}

SweepResult degree_sweep(const BilliardTable& table, const ForceField& field, double T,
                         const std::vector<double>& d_grid, int n_samples,
                         const DegreeOptions& opts) {
    if (!d_grid.empty() && d_grid.front() < 0.0)
        throw std::invalid_argument("degree_sweep: speeds must be >= 0");
    for (std::size_t i = 0; i + 1 < d_grid.size(); ++i)
        if (!(d_grid[i] < d_grid[i + 1]))
            throw std::invalid_argument("degree_sweep: d_grid must be strictly increasing");
    SweepResult out;
    for (const double d : d_grid) {
        SweepEntry e;
        e.d = d;
        try {
            e.result = winding_number(table, field, T, d, n_samples, opts);
        } catch (const OriginTooClose& ex) {
            e.note = "origin_too_close (solution candidate)";
            e.candidate_min_dist = ex.min_dist;
            out.flags.solution_candidates.push_back(d);
        } catch (const MeshBudgetExceeded& ex) {
            e.note = std::string("mesh_budget: ") + ex.what();
        }
        out.entries.push_back(std::move(e));
    }
    const SweepEntry* prev = nullptr;
    for (const auto& e : out.entries) {
        if (!e.result) continue;
        if (prev && prev->result->winding != e.result->winding)
            out.flags.annuli.emplace_back(prev->d, e.d);
        prev = &e;
    }
    return out;
}

ReducedProblem reduce_constant_force(const BilliardTable& ball, const Vec2& a, double T) {
    if (ball.kind() != TableKind::Ball || ball.dim() != 2)
        throw std::invalid_argument("reduce_constant_force: table must be a planar ball");
    const double mag = norm(a);
    if (mag == 0.0)
        throw ZeroForce("reduce_constant_force: zero force (use normal_ray_solutions)");
    ReducedProblem red{BilliardTable::interval(ball.half_width()),
                       ForceField::constant({mag, 0.0}, T, 1), a / mag};
    return red;
}

NormalRaySolutions normal_ray_solutions(const BilliardTable& table, double T, double residual_tol,
                                        const DegreeOptions& opts) {
    if (table.dim() != 2)
        throw std::invalid_argument("normal_ray_solutions: table must be planar");
    NormalRaySolutions out;
    const ForceField f0 = ForceField::zero(T, 2);

    auto verify = [&](double theta) {
        const double rho = table.kind() == TableKind::Ball ? table.half_width()
                                                           : table.profile().value(theta);
        NormalRay ray;
        ray.theta = theta;
        ray.z = rho * unit(theta);
        ray.v = (2.0 / T) * ray.z;
        const Trajectory traj =
            integrate_cauchy(table, f0, {0, 0}, ray.v, T, opts.integrator);
        ray.residual = norm(traj.endpoint());
        ray.impact_count = static_cast<int>(traj.impacts.size());
        const bool bounce_at_half = ray.impact_count == 1 &&
                                    std::fabs(traj.impacts[0].t - T / 2.0) <= 1e-9 * std::max(1.0, T);
        if (traj.status == TrajectoryStatus::Completed && ray.residual <= residual_tol &&
            bounce_at_half) {
            out.rays.push_back(ray);
        } else {
            out.diagnostics.push_back("candidate at theta=" + std::to_string(theta) +
                                      " failed verification (residual=" +
                                      std::to_string(ray.residual) + ")");
        }
    };

    if (table.kind() == TableKind::Ball) {
        out.continuum = true;
        verify(0.0);
        return out;
    }

    // Critical points of the radial profile: boundary points whose normal
    // ray passes through the origin.
    const auto& rho = table.profile();
    double max_abs_d = 0.0;
    for (int i = 0; i < kRayGrid; ++i)
        max_abs_d = std::max(max_abs_d, std::fabs(rho.derivative(kTwoPi * i / kRayGrid)));
    if (max_abs_d < 1e-12 * std::max(1.0, table.diameter())) {
        // Constant profile: the table is a disk and every direction works.
        out.continuum = true;
        verify(0.0);
        return out;
    }
    std::vector<double> roots;
    double prev_theta = 0.0;
    double prev_d = rho.derivative(0.0);
    for (int i = 1; i <= kRayGrid; ++i) {
        const double theta = kTwoPi * i / kRayGrid;
        const double dv = rho.derivative(theta);
        if (prev_d == 0.0) {
            roots.push_back(prev_theta);
        } else if (prev_d * dv < 0.0) {
            double a = prev_theta, b = theta;
            double fa = prev_d;
            while (b - a > 1e-10) {
                const double m = 0.5 * (a + b);
                const double fm = rho.derivative(m);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_theta = theta;
        prev_d = dv;
    }
    // Deduplicate (mod 2*pi).
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique_roots;
    for (const double r : roots) {
        bool dup = false;
        for (const double u : unique_roots)
            if (std::fabs(r - u) < 1e-8 || std::fabs(r - u - kTwoPi) < 1e-8) dup = true;
        if (!dup) unique_roots.push_back(r);
    }
    for (const double r : unique_roots) verify(r);
    return out;
}

DeviationReport uniform_deviation(const BilliardTable& table, const ForceField& field, double T,
                                  double d, int n_dirs, const DegreeOptions& opts) {
    if (table.dim() != 2) throw std::invalid_argument("uniform_deviation: table must be planar");
    if (!(d > 0.0)) throw std::invalid_argument("uniform_deviation: d must be positive");
    if (n_dirs < 1) throw std::invalid_argument("uniform_deviation: need at least one direction");

    const ForceField f0 = ForceField::zero(T, 2);
    DeviationReport rep;
    rep.d = d;
    rep.per_direction.resize(n_dirs);

    constexpr int kSamples = 1000;
    parallel_for(n_dirs, [&](std::size_t i) {
        const double theta = kTwoPi * static_cast<double>(i) / n_dirs;
        const Vec2 v = d * unit(theta);
        DeviationSample s;
        s.theta = theta;
        const Trajectory forced = integrate_cauchy(table, field, {0, 0}, v, T, opts.integrator);
        const Trajectory free = integrate_cauchy(table, f0, {0, 0}, v, T, opts.integrator);
        s.status = forced.status;

        double t_first = T;
        if (!forced.impacts.empty()) t_first = std::min(t_first, forced.impacts.front().t);
        if (!free.impacts.empty()) t_first = std::min(t_first, free.impacts.front().t);

        double dev_first = 0.0, dev_full = 0.0;
        for (int k = 0; k <= kSamples; ++k) {
            const double t = T * k / kSamples;
            const double dev = distance(forced.eval(t).x, free.eval(t).x);
            dev_full = std::max(dev_full, dev);
        }
        for (int k = 0; k <= kSamples; ++k) {
            const double t = t_first * k / kSamples;
            const double dev = distance(forced.eval(t).x, free.eval(t).x);
            dev_first = std::max(dev_first, dev);
        }
        s.dev_first_impact = dev_first;
        s.dev_full = dev_full;
        rep.per_direction[i] = s;
    });

    for (const auto& s : rep.per_direction) {
        rep.max_first_impact = std::max(rep.max_first_impact, s.dev_first_impact);
        rep.max_full = std::max(rep.max_full, s.dev_full);
    }
    return rep;
}

}  // namespace billiard
