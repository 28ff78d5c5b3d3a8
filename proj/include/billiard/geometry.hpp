#pragma once

#include <functional>
#include <vector>

#include "billiard/vec2.hpp"

namespace billiard {

/// One Fourier mode of a radial boundary profile.
struct Harmonic {
    int k;
    double cos_coeff;
    double sin_coeff;
};

/// Radius-versus-angle description of a star-shaped planar boundary,
/// rho : angle -> positive length. Trigonometric-polynomial profiles carry
/// an analytic derivative; arbitrary callables fall back to a central
/// finite difference with step 1e-6.
class RadialProfile {
  public:
    static RadialProfile trig_polynomial(double constant, std::vector<Harmonic> harmonics);
    static RadialProfile from_function(std::function<double(double)> rho);

    double value(double theta) const;
    double derivative(double theta) const;
    bool analytic() const { return analytic_; }

  private:
    friend class BilliardTable;
    RadialProfile() = default;
    double constant_ = 0.0;
    std::vector<Harmonic> harmonics_;
    std::function<double(double)> fn_;
    bool analytic_ = true;
};

enum class TableKind { Interval, Ball, Star };

/// The billiard table K: a compact region of R^1 or R^2 containing the
/// origin in its interior. Interval is [-a, a]; Ball is the disk of radius
/// r (a ball with n = 1 collapses to Interval(r)); Star is the region
/// enclosed by theta -> rho(theta) (cos theta, sin theta).
///
/// signed_distance is negative inside, zero on the boundary, positive
/// outside. For Star it is the radial gap |x| - rho(theta), not the
/// Euclidean distance; its sign and roots are what event detection needs,
/// exported values should be read accordingly.
class BilliardTable {
  public:
    static BilliardTable interval(double half_width);
    static BilliardTable ball(double radius, int n = 2);
    static BilliardTable star(RadialProfile profile);

    TableKind kind() const { return kind_; }
    int dim() const { return dim_; }

    double signed_distance(const Vec2& x) const;

    /// Time derivative of signed_distance along a state (x, v).
    double sd_rate(const Vec2& x, const Vec2& v) const;

    /// Outward unit normal at a boundary point. Throws NotOnBoundary when
    /// |signed_distance(y)| exceeds boundary_tolerance().
    Vec2 outer_normal(const Vec2& y) const;

    /// Exact for Interval (2a) and Ball (2r); for Star an upper bound
    /// 2 max rho sampled on a 4096-point grid.
    double diameter() const { return diameter_; }

    double boundary_tolerance() const { return boundary_tol_factor_ * diameter_; }
    void set_boundary_tolerance_factor(double f) { boundary_tol_factor_ = f; }

    /// Snap a near-boundary point onto the boundary along the radial
    /// direction (onto +-a for Interval).
    Vec2 project_to_boundary(const Vec2& near_boundary) const;

    /// Interval a / Ball r.
    double half_width() const { return half_width_; }

    const RadialProfile& profile() const { return profile_; }
    double min_radius() const { return min_radius_; }

  private:
    BilliardTable() = default;

    TableKind kind_ = TableKind::Interval;
    int dim_ = 1;
    double half_width_ = 1.0;
    RadialProfile profile_;
    double diameter_ = 2.0;
    double min_radius_ = 1.0;
    double boundary_tol_factor_ = 1e-9;
};

}  // namespace billiard
