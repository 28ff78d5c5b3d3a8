// Closed-form references for the 1-d impulsive problem, independent of the
// integrator: piecewise polynomial arithmetic plus explicit root finding.
// These produce the expected values the integration and shooting tests are
// checked against.
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Free flight in [-a, a] from the center: the endpoint is the triangle-wave
// fold of the traveled distance v*T (period 4a, zeros every 2a).

inline double fold_endpoint(double v, double T, double a) {
    const double s = v * T;
    double w = std::fmod(s + a, 4.0 * a);
    if (w < 0.0) w += 4.0 * a;
    return a - std::fabs(w - 2.0 * a);
}

inline int fold_impact_count(double v, double T, double a) {
    const double s = std::fabs(v) * T;
    if (s < a) return 0;
    return static_cast<int>(std::floor((s + a) / (2.0 * a)));
}

/// Zeros of the fold with 0 < v: |v| = 2ak/T, k = 1, 2, ...
inline std::vector<double> fold_zeros(double T, double a, int count) {
    std::vector<double> z;
    for (int k = 1; k <= count; ++k) z.push_back(2.0 * a * k / T);
    return z;
}

// ---------------------------------------------------------------------------
// Piecewise bouncer for x'' = f(t) with f a polynomial in t only (covers the
// constant and 6t examples). Segments are exact polynomials; impacts are
// isolated by scanning and bisection on the closed form.

struct Impact1D {
    double t;
    double x;      // +a or -a
    double v_in;   // velocity just before
};

struct Bounce1D {
    std::vector<Impact1D> impacts;
    double x_end;
    double v_end;
};

class PolyT {
  public:
    // coeffs[k] multiplies t^k.
    explicit PolyT(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    double eval(double t) const {
        double r = 0.0;
        for (std::size_t k = c_.size(); k-- > 0;) r = r * t + c_[k];
        return r;
    }

    PolyT antiderivative() const {
        std::vector<double> a(c_.size() + 1, 0.0);
        for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
        return PolyT(std::move(a));
    }

  private:
    std::vector<double> c_;
};

/// Exact solve of x'' = f(t), x(t0) = x0, x'(t0) = v0, bouncing at +-a,
/// up to time T. Impact roots are bisected on the closed-form segment
/// polynomial to ~1e-15.
inline Bounce1D bounce_poly_t(const std::vector<double>& f_coeffs, double a, double v0, double T,
                              double x0 = 0.0, double t0 = 0.0) {
    const PolyT f{f_coeffs};
    const PolyT F1 = f.antiderivative();
    const PolyT F2 = F1.antiderivative();

    Bounce1D out;
    double t_cur = t0, x_cur = x0, v_cur = v0;

    auto x_at = [&](double t) {
        return x_cur + v_cur * (t - t_cur) + F2.eval(t) - F2.eval(t_cur) -
               F1.eval(t_cur) * (t - t_cur);
    };
    auto v_at = [&](double t) { return v_cur + F1.eval(t) - F1.eval(t_cur); };

    const int scan = 1 << 15;
    for (int guard = 0; guard < 100000; ++guard) {
        // Earliest exit |x| > a in (t_cur, T]: scan then bisect.
        std::optional<double> hit_lo, hit_hi;
        double tp = t_cur, xp = x_at(tp);
        for (int i = 1; i <= scan; ++i) {
            const double ti = t_cur + (T - t_cur) * i / scan;
            const double xi = x_at(ti);
            if (std::fabs(xi) > a && std::fabs(xp) <= a) {
                hit_lo = tp;
                hit_hi = ti;
                break;
            }
            tp = ti;
            xp = xi;
        }
        if (!hit_lo) break;
        double lo = *hit_lo, hi = *hit_hi;
        const double side = x_at(hi) > 0.0 ? a : -a;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (std::fabs(x_at(mid)) > a) hi = mid;
            else lo = mid;
        }
        const double t_hit = 0.5 * (lo + hi);
        const double v_hit = v_at(t_hit);
        out.impacts.push_back({t_hit, side, v_hit});
        // Reflect and restart the segment from the boundary.
        x_cur = side;
        v_cur = -v_hit;
        t_cur = t_hit;
    }
    out.x_end = x_at(T);
    out.v_end = v_at(T);
    return out;
}

/// First impact time of x'' = g (constant), x(0) = 0, x'(0) = v in [-a, a]:
/// smallest positive root of (g/2) t^2 + v t = +-a by the quadratic formula.
inline std::optional<Impact1D> first_impact_const(double g, double a, double v,
                                                  double t_max = 1e100) {
    double best_t = 1e300;
    double best_x = 0.0;
    for (const double target : {a, -a}) {
        // (g/2) t^2 + v t - target = 0
        const double A = 0.5 * g, B = v, C = -target;
        if (A == 0.0) {
            if (B != 0.0) {
                const double t = -C / B;
                if (t > 1e-15 && t < best_t) {
                    best_t = t;
                    best_x = target;
                }
            }
            continue;
        }
        const double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        // Stable quadratic roots.
        const double q = B >= 0.0 ? -0.5 * (B + sq) : -0.5 * (B - sq);
        for (const double t : {q / A, C / q}) {
            if (t > 1e-15 && t < best_t) {
                best_t = t;
                best_x = target;
            }
        }
    }
    if (best_t > t_max) return std::nullopt;
    return Impact1D{best_t, best_x, v + g * best_t};
}

// ---------------------------------------------------------------------------
// Free flight along a ray in the disk of radius r: the radial coordinate is
// the interval fold with a = r.

inline double ball_radial_endpoint(double d, double T, double r) {
    return fold_endpoint(d, T, r);
}

}  // namespace oracle
