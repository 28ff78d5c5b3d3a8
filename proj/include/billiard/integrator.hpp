#pragma once

#include <optional>
#include <vector>

#include "billiard/dop853.hpp"
#include "billiard/dynamics.hpp"
#include "billiard/geometry.hpp"
#include "billiard/vec2.hpp"

namespace billiard {

struct IntegratorOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_impacts = 10000;
    /// Event-scan subdivisions per accepted step (grows automatically when
    /// a step travels far relative to the table).
    int substeps = 8;
    /// Impact time is bisected until |signed_distance| <= this * diameter.
    double impact_pos_tol_factor = 1e-10;
    int bisect_max_iter = 60;
    /// A re-crossing this soon after a reflection is reported as grazing.
    double double_impact_window = 1e-12;
    ImpactLawOptions impact_law{};
};

enum class TrajectoryStatus { Completed, GrazingAborted, ImpactBudgetExceeded };

const char* to_string(TrajectoryStatus s);

struct ImpactRecord {
    double t;
    Vec2 point;
    Vec2 v_in;
    Vec2 v_out;
    int side;  // 1-d only: +1 at x = a, -1 at x = -a; 0 in 2-d
};

struct State {
    Vec2 x;
    Vec2 v;
};

/// Piecewise-smooth solution of the impulsive Cauchy problem on [0, T]
/// (or a prefix of it when aborted). Dense output is kept for every
/// accepted integrator step, so eval() is cheap at any time. At an impact
/// time eval() returns the pre-impact state.
class Trajectory {
  public:
    TrajectoryStatus status = TrajectoryStatus::Completed;
    std::vector<ImpactRecord> impacts;
    int dim = 1;

    double t_begin() const { return t_begin_; }
    double t_end() const { return t_end_; }

    State eval(double t) const;
    Vec2 endpoint() const { return eval(t_end_).x; }
    double endpoint1d() const { return endpoint().x; }

    std::size_t segment_count() const { return segments_.size(); }
    /// Index of the segment containing time t.
    std::size_t segment_index(double t) const;

  private:
    friend class IntegrationDriver;
    struct Segment {
        double t0;
        double t1;
        std::vector<DenseStep> steps;
    };
    std::vector<Segment> segments_;
    double t_begin_ = 0.0;
    double t_end_ = 0.0;
};

/// Integrate x'' = f(t, x) from x(0) = x0, x'(0) = v0 on [0, T], reflecting
/// elastically whenever the trajectory reaches the boundary of the table.
Trajectory integrate_cauchy(const BilliardTable& table, const ForceField& field, const Vec2& x0,
                            const Vec2& v0, double T, const IntegratorOptions& opts = {});

struct FirstImpact {
    double t;
    Vec2 point;
    Vec2 v_in;
};

/// Earliest boundary contact after t_from, or nullopt if none occurs
/// before t_to (t_to <= 0 means the field horizon).
std::optional<FirstImpact> first_impact(const BilliardTable& table, const ForceField& field,
                                        const Vec2& x0, const Vec2& v0, double t_from,
                                        double t_to = 0.0, const IntegratorOptions& opts = {});

}  // namespace billiard
