#include "billiard/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "billiard/errors.hpp"

namespace billiard {

namespace {
constexpr int kProfileGrid = 4096;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

RadialProfile RadialProfile::trig_polynomial(double constant, std::vector<Harmonic> harmonics) {
    RadialProfile p;
    p.constant_ = constant;
    p.harmonics_ = std::move(harmonics);
    p.analytic_ = true;
    for (const auto& h : p.harmonics_) {
        if (h.k < 1) throw std::invalid_argument("radial profile: harmonic index must be >= 1");
    }
    return p;
}

RadialProfile RadialProfile::from_function(std::function<double(double)> rho) {
    RadialProfile p;
    p.fn_ = std::move(rho);
    p.analytic_ = false;
    return p;
}

double RadialProfile::value(double theta) const {
    if (!analytic_) return fn_(theta);
    double r = constant_;
    for (const auto& h : harmonics_)
        r += h.cos_coeff * std::cos(h.k * theta) + h.sin_coeff * std::sin(h.k * theta);
    return r;
}

double RadialProfile::derivative(double theta) const {
    if (!analytic_) {
        const double h = 1e-6;
        return (fn_(theta + h) - fn_(theta - h)) / (2.0 * h);
    }
    double d = 0.0;
    for (const auto& h : harmonics_)
        d += h.k * (-h.cos_coeff * std::sin(h.k * theta) + h.sin_coeff * std::cos(h.k * theta));
    return d;
}

BilliardTable BilliardTable::interval(double half_width) {
    if (!(half_width > 0.0)) throw std::invalid_argument("interval: half width must be positive");
    BilliardTable t;
    t.kind_ = TableKind::Interval;
    t.dim_ = 1;
    t.half_width_ = half_width;
    t.diameter_ = 2.0 * half_width;
    t.min_radius_ = half_width;
    return t;
}

BilliardTable BilliardTable::ball(double radius, int n) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    if (n != 1 && n != 2) throw std::invalid_argument("ball: dimension must be 1 or 2");
    if (n == 1) return interval(radius);
    BilliardTable t;
    t.kind_ = TableKind::Ball;
    t.dim_ = 2;
    t.half_width_ = radius;
    t.diameter_ = 2.0 * radius;
    t.min_radius_ = radius;
    return t;
}

BilliardTable BilliardTable::star(RadialProfile profile) {
    BilliardTable t;
    t.kind_ = TableKind::Star;
    t.dim_ = 2;
    t.profile_ = std::move(profile);

    double rho_min = t.profile_.value(0.0);
    double rho_max = rho_min;
    for (int i = 0; i < kProfileGrid; ++i) {
        const double th = kTwoPi * i / kProfileGrid;
        const double r = t.profile_.value(th);
        rho_min = std::min(rho_min, r);
        rho_max = std::max(rho_max, r);
    }
    if (!(rho_min > 0.0))
        throw std::invalid_argument("star profile: rho must be positive at every sampled angle");
    const double r0 = t.profile_.value(0.0);
    const double r2pi = t.profile_.value(kTwoPi);
    if (std::fabs(r0 - r2pi) > 1e-12 * std::max(1.0, std::fabs(r0)))
        throw std::invalid_argument("star profile: rho is not 2*pi periodic");

    t.min_radius_ = rho_min;
    t.diameter_ = 2.0 * rho_max;
    t.half_width_ = rho_max;
    return t;
}

double BilliardTable::signed_distance(const Vec2& x) const {
    switch (kind_) {
        case TableKind::Interval:
            return std::fabs(x.x) - half_width_;
        case TableKind::Ball:
            return norm(x) - half_width_;
        case TableKind::Star:
            return norm(x) - profile_.value(std::atan2(x.y, x.x));
    }
    return 0.0;
}

double BilliardTable::sd_rate(const Vec2& x, const Vec2& v) const {
    switch (kind_) {
        case TableKind::Interval:
            return (x.x > 0.0 ? v.x : (x.x < 0.0 ? -v.x : 0.0));
        case TableKind::Ball: {
            const double r = norm(x);
            return r > 0.0 ? dot(x, v) / r : 0.0;
        }
        case TableKind::Star: {
            const double r2 = norm_sq(x);
            if (r2 <= 0.0) return 0.0;
            const double r = std::sqrt(r2);
            const double theta_dot = cross(x, v) / r2;
            return dot(x, v) / r - profile_.derivative(std::atan2(x.y, x.x)) * theta_dot;
        }
    }
    return 0.0;
}

Vec2 BilliardTable::outer_normal(const Vec2& y) const {
    if (std::fabs(signed_distance(y)) > boundary_tolerance())
        throw NotOnBoundary("outer_normal: point is not on the boundary");
    switch (kind_) {
        case TableKind::Interval:
            return {y.x >= 0.0 ? 1.0 : -1.0, 0.0};
        case TableKind::Ball:
            return y / norm(y);
        case TableKind::Star: {
            const double theta = std::atan2(y.y, y.x);
            const double rho = profile_.value(theta);
            const double drho = profile_.derivative(theta);
            const double c = std::cos(theta), s = std::sin(theta);
            // Outward normal of the curve theta -> rho(theta)(cos, sin).
            Vec2 n{rho * c + drho * s, rho * s - drho * c};
            return n / norm(n);
        }
    }
    return {1.0, 0.0};
}

Vec2 BilliardTable::project_to_boundary(const Vec2& p) const {
    switch (kind_) {
        case TableKind::Interval:
            return {p.x >= 0.0 ? half_width_ : -half_width_, p.y};
        case TableKind::Ball:
            return p * (half_width_ / norm(p));
        case TableKind::Star: {
            const double rho = profile_.value(std::atan2(p.y, p.x));
            return p * (rho / norm(p));
        }
    }
    return p;
}

}  // namespace billiard
