#pragma once

#include <array>
#include <functional>

namespace billiard {

/// One accepted step with its 7th-order continuous extension. eval() is
/// valid for t in [t0, t0 + h].
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<std::array<double, 4>, 8> r{};

    double t_end() const { return t0 + h; }

    std::array<double, 4> eval(double t) const {
        const double s = (t - t0) / h;
        const double s1 = 1.0 - s;
        std::array<double, 4> y;
        for (int i = 0; i < 4; ++i) {
            y[i] = r[0][i] +
                   s * (r[1][i] +
                        s1 * (r[2][i] +
                              s * (r[3][i] +
                                   s1 * (r[4][i] +
                                         s * (r[5][i] + s1 * (r[6][i] + s * r[7][i]))))));
        }
        return y;
    }
};

/// Adaptive 8th-order Dormand-Prince integrator for a 4-dimensional state,
/// following the classic DOP853 scheme of Hairer, Norsett and Wanner
/// (Solving Ordinary Differential Equations I, 2nd ed., Springer 1993),
/// with the 5th/3rd-order embedded error estimate and the order-7 dense
/// output. Stepping is forward only; the driver restarts the integrator
/// after every impact.
class Dop853 {
  public:
    using Deriv = std::function<void(double t, const std::array<double, 4>& y,
                                     std::array<double, 4>& dydt)>;

    Dop853(Deriv f, double abs_tol, double rel_tol);

    /// (Re)initialize at state y(t); computes the starting step size.
    void start(double t, const std::array<double, 4>& y);

    /// Advance by one accepted step, clipped so that t_end <= t_limit.
    /// Returns false when the current time has already reached t_limit.
    /// Throws on step-size underflow.
    bool advance(double t_limit, DenseStep& out);

    double time() const { return t_; }
    const std::array<double, 4>& state() const { return y_; }

  private:
    double initial_step(double h_max) const;

    Deriv f_;
    double atol_;
    double rtol_;

    double t_ = 0.0;
    std::array<double, 4> y_{};
    std::array<double, 4> k1_{};  // f(t_, y_), reused FSAL-style
    double h_ = 0.0;
    bool last_rejected_ = false;
};

}  // namespace billiard
