#include "billiard/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "billiard/errors.hpp"

namespace billiard {

const char* to_string(TrajectoryStatus s) {
    switch (s) {
        case TrajectoryStatus::Completed: return "completed";
        case TrajectoryStatus::GrazingAborted: return "grazing";
        case TrajectoryStatus::ImpactBudgetExceeded: return "impact_budget";
    }
    return "unknown";
}

State Trajectory::eval(double t) const {
    t = std::clamp(t, t_begin_, t_end_);
    const Segment& seg = segments_[segment_index(t)];
    // Find the dense step containing t.
    auto it = std::upper_bound(seg.steps.begin(), seg.steps.end(), t,
                               [](double tv, const DenseStep& s) { return tv < s.t0; });
    if (it != seg.steps.begin()) --it;
    const auto y = it->eval(std::min(t, seg.t1));
    return State{{y[0], y[1]}, {y[2], y[3]}};
}

std::size_t Trajectory::segment_index(double t) const {
    // Segments are ordered; an impact time belongs to the earlier segment.
    std::size_t lo = 0, hi = segments_.size();
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (segments_[mid].t0 < t) lo = mid;
        else hi = mid;
    }
    return lo;
}

namespace {

struct EventScanHit {
    double t_lo;  // sd <= 0
    double t_hi;  // sd > 0
};

constexpr double kTimeEps = 2.220446049250313e-16;

}  // namespace

class IntegrationDriver {
  public:
    IntegrationDriver(const BilliardTable& table, const ForceField& field,
                      const IntegratorOptions& opts)
        : table_(table),
          field_(field),
          opts_(opts),
          stepper_([this](double t, const std::array<double, 4>& y,
                          std::array<double, 4>& dy) { rhs(t, y, dy); },
                   opts.abs_tol, opts.rel_tol) {}

    Trajectory run(const Vec2& x0, const Vec2& v0, double t_from, double t_to,
                   bool stop_at_first_impact, std::optional<FirstImpact>* first_out);

  private:
    void rhs(double t, const std::array<double, 4>& y, std::array<double, 4>& dy) const {
        const Vec2 a = field_.eval(t, {y[0], y[1]});
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = a.x;
        dy[3] = a.y;
    }

    double sd_at(const DenseStep& step, double t) const {
        const auto y = step.eval(t);
        return table_.signed_distance({y[0], y[1]});
    }
    double sd_rate_at(const DenseStep& step, double t) const {
        const auto y = step.eval(t);
        return table_.sd_rate({y[0], y[1]}, {y[2], y[3]});
    }

    /// First boundary crossing within the step, if any. seg_start marks the
    /// start of the current smooth segment: the sample there is clamped to
    /// zero (the state was just snapped onto the boundary) and an all-positive
    /// scan right after a reflection means the trajectory escaped.
    std::optional<EventScanHit> scan_step(const DenseStep& step, double seg_start,
                                          bool* escaped) const;

    /// Bisect the crossing bracket down to machine resolution in time.
    double localize(const DenseStep& step, double t_lo, double t_hi) const;

    const BilliardTable& table_;
    const ForceField& field_;
    const IntegratorOptions& opts_;
    Dop853 stepper_;
};

std::optional<EventScanHit> IntegrationDriver::scan_step(const DenseStep& step, double seg_start,
                                                         bool* escaped) const {
    const double diam = table_.diameter();
    const bool fresh_segment = step.t0 == seg_start;
    *escaped = false;

    // Sample count scales with travel so that excursions cannot hide
    // between samples.
    const auto y0 = step.eval(step.t0);
    const auto y1 = step.eval(step.t_end());
    const double speed =
        std::max(std::hypot(y0[2], y0[3]), std::hypot(y1[2], y1[3]));
    int n = opts_.substeps;
    const double travel = speed * step.h;
    if (travel > 0.03 * diam * n)
        n = std::min(1024, static_cast<int>(std::ceil(travel / (0.03 * diam))));

    double t_prev = step.t0;
    double sd_prev = sd_at(step, t_prev);
    if (fresh_segment && sd_prev > 0.0) sd_prev = 0.0;
    double rate_prev = sd_rate_at(step, t_prev);
    bool all_positive = true;

    for (int i = 1; i <= n; ++i) {
        const double ti = step.t0 + step.h * i / n;
        const double sdi = sd_at(step, ti);
        const double ratei = sd_rate_at(step, ti);
        if (sdi <= 0.0) all_positive = false;

        if (sd_prev <= 0.0 && sdi > 0.0) return EventScanHit{t_prev, ti};

        // Both samples inside: look for a local maximum of sd poking out
        // between them (exit and re-entry within one sample interval).
        if (sd_prev <= 0.0 && sdi <= 0.0 && rate_prev > 0.0 && ratei <= 0.0 &&
            std::max(sd_prev, sdi) > -0.1 * diam) {
            double a = t_prev, b = ti;
            for (int it = 0; it < opts_.bisect_max_iter && b - a > 4.0 * kTimeEps * std::max(1.0, std::fabs(b)); ++it) {
                const double m = 0.5 * (a + b);
                if (sd_rate_at(step, m) > 0.0) a = m;
                else b = m;
            }
            const double tm = 0.5 * (a + b);
            if (sd_at(step, tm) > 0.0) return EventScanHit{t_prev, tm};
        }

        t_prev = ti;
        sd_prev = sdi;
        rate_prev = ratei;
    }

    if (fresh_segment && all_positive) *escaped = true;
    return std::nullopt;
}

double IntegrationDriver::localize(const DenseStep& step, double t_lo, double t_hi) const {
    for (int it = 0; it < opts_.bisect_max_iter; ++it) {
        if (t_hi - t_lo <= 4.0 * kTimeEps * std::max(1.0, std::fabs(t_hi))) break;
        const double mid = 0.5 * (t_lo + t_hi);
        if (sd_at(step, mid) > 0.0) t_hi = mid;
        else t_lo = mid;
    }
    return 0.5 * (t_lo + t_hi);
}

Trajectory IntegrationDriver::run(const Vec2& x0, const Vec2& v0, double t_from, double t_to,
                                  bool stop_at_first_impact, std::optional<FirstImpact>* first_out) {
    Trajectory traj;
    traj.dim = table_.dim();
    traj.t_begin_ = t_from;
    traj.t_end_ = t_from;
    if (first_out) *first_out = std::nullopt;

    std::array<double, 4> y{x0.x, x0.y, v0.x, v0.y};
    double t = t_from;
    double seg_start = t_from;
    stepper_.start(t, y);
    traj.segments_.push_back({seg_start, t_to, {}});

    const double sd_tol = opts_.impact_pos_tol_factor * table_.diameter();
    int impact_count = 0;

    auto finish = [&](double t_stop, TrajectoryStatus status) {
        traj.segments_.back().t1 = t_stop;
        traj.t_end_ = t_stop;
        traj.status = status;
        if (traj.segments_.back().steps.empty()) {
            // Zero-length final segment: keep a constant dense stub so that
            // eval() at t_stop works.
            DenseStep stub;
            stub.t0 = t_stop;
            stub.h = 1.0;
            const auto& ys = stepper_.state();
            for (int i = 0; i < 4; ++i) stub.r[0][i] = ys[i];
            traj.segments_.back().steps.push_back(stub);
        }
        return traj;
    };

    while (t < t_to - 4.0 * kTimeEps * std::max(1.0, std::fabs(t_to))) {
        DenseStep step;
        if (!stepper_.advance(t_to, step)) break;
        traj.segments_.back().steps.push_back(step);

        bool escaped = false;
        const auto hit = scan_step(step, seg_start, &escaped);
        if (escaped) return finish(seg_start, TrajectoryStatus::GrazingAborted);
        if (!hit) {
            t = step.t_end();
            continue;
        }

        const double t_star = localize(step, hit->t_lo, hit->t_hi);
        if (t_star - seg_start <= opts_.double_impact_window)
            return finish(t_star, TrajectoryStatus::GrazingAborted);

        const auto ys = step.eval(t_star);
        Vec2 x_hit = table_.project_to_boundary({ys[0], ys[1]});
        const Vec2 v_in{ys[2], ys[3]};
        if (std::fabs(table_.signed_distance(x_hit)) > sd_tol)
            throw std::runtime_error("integrator: impact localization failed");

        if (first_out) *first_out = FirstImpact{t_star, x_hit, v_in};
        if (stop_at_first_impact) {
            traj.segments_.back().t1 = t_star;
            traj.t_end_ = t_star;
            traj.status = TrajectoryStatus::Completed;
            return traj;
        }

        const Vec2 n = table_.outer_normal(x_hit);
        Vec2 v_out;
        try {
            v_out = apply_impact(n, v_in, opts_.impact_law);
        } catch (const GrazingImpact&) {
            return finish(t_star, TrajectoryStatus::GrazingAborted);
        }

        const int side = table_.dim() == 1 ? (x_hit.x > 0.0 ? 1 : -1) : 0;
        traj.impacts.push_back({t_star, x_hit, v_in, v_out, side});
        traj.segments_.back().t1 = t_star;

        ++impact_count;
        if (impact_count > opts_.max_impacts)
            return finish(t_star, TrajectoryStatus::ImpactBudgetExceeded);

        t = t_star;
        seg_start = t_star;
        y = {x_hit.x, x_hit.y, v_out.x, v_out.y};
        stepper_.start(t, y);
        traj.segments_.push_back({seg_start, t_to, {}});
    }

    return finish(t_to, TrajectoryStatus::Completed);
}

Trajectory integrate_cauchy(const BilliardTable& table, const ForceField& field, const Vec2& x0,
                            const Vec2& v0, double T, const IntegratorOptions& opts) {
    if (field.dim() != table.dim())
        throw std::invalid_argument("integrate_cauchy: field and table dimensions differ");
    if (!(T > 0.0)) throw std::invalid_argument("integrate_cauchy: horizon must be positive");
    if (table.signed_distance(x0) >= 0.0)
        throw std::invalid_argument("integrate_cauchy: x0 must lie in the interior of the table");
    IntegrationDriver driver(table, field, opts);
    return driver.run(x0, v0, 0.0, T, false, nullptr);
}

std::optional<FirstImpact> first_impact(const BilliardTable& table, const ForceField& field,
                                        const Vec2& x0, const Vec2& v0, double t_from, double t_to,
                                        const IntegratorOptions& opts) {
    if (field.dim() != table.dim())
        throw std::invalid_argument("first_impact: field and table dimensions differ");
    if (t_to <= 0.0) t_to = field.horizon();
    if (!(t_to > t_from)) throw std::invalid_argument("first_impact: empty time window");
    if (table.signed_distance(x0) >= 0.0)
        throw std::invalid_argument("first_impact: x0 must lie in the interior of the table");
    IntegrationDriver driver(table, field, opts);
    std::optional<FirstImpact> out;
    driver.run(x0, v0, t_from, t_to, true, &out);
    return out;
}

}  // namespace billiard
