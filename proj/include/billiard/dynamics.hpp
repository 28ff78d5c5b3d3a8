#pragma once

#include <array>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/vec2.hpp"

namespace billiard {

/// One monomial of the right-hand side: coeff * t^t_exp * x1^x_exp[0] * x2^x_exp[1],
/// contributing to component `coord` of the force.
struct MonomialTerm {
    int coord;
    int t_exp;
    std::array<int, 2> x_exp;
    double coeff;
};

/// The right-hand side f(t, x) of x'' = f(t, x). Restricted to constants
/// and polynomials in (t, x) of total degree <= 6 so that the integrable
/// bound and the Lipschitz constant are certifiable by sampling.
class ForceField {
  public:
    static ForceField constant(const Vec2& a, double horizon, int dim = 2);
    static ForceField polynomial(std::vector<MonomialTerm> terms, double horizon, int dim);
    static ForceField zero(double horizon, int dim);

    Vec2 eval(double t, const Vec2& x) const;

    /// d f_i / d x_j, used for the Lipschitz bound.
    std::array<std::array<double, 2>, 2> jacobian_x(double t, const Vec2& x) const;

    double horizon() const { return horizon_; }
    int dim() const { return dim_; }
    bool is_constant() const { return is_constant_; }
    bool is_zero() const;
    Vec2 constant_value() const { return const_a_; }
    const std::vector<MonomialTerm>& terms() const { return terms_; }

  private:
    ForceField() = default;
    bool is_constant_ = true;
    Vec2 const_a_{0.0, 0.0};
    std::vector<MonomialTerm> terms_;
    double horizon_ = 1.0;
    int dim_ = 2;
};

/// ||m||_1 for the coarsened constant bound m(t) = m_bar: T times the
/// sampled sup of |f| over [0,T] x {|x| <= diameter/2} on a 64-per-axis
/// grid, inflated (default 10%) against undersampling.
double m_l1(const ForceField& field, const BilliardTable& table, double inflation = 1.1);

/// Pointwise Lipschitz bound L with |f(t,x)-f(t,y)| <= L |x-y|, from the
/// sampled sup of the x-Jacobian norm, inflated the same way.
double lipschitz_bound(const ForceField& field, const BilliardTable& table,
                       double inflation = 1.1);

struct ImpactLawOptions {
    double graze_eps = 1e-8;
    double graze_abs = 1e-12;
};

/// The elastic impact law: tangential component kept, normal component
/// negated, v -> v - 2 <v,n> n. Throws GrazingImpact when the normal
/// component of v is below graze_eps * max(|v|, graze_abs); that is the
/// sliding regime whose dynamics this artifact does not model.
Vec2 apply_impact(const Vec2& normal, const Vec2& v_in, const ImpactLawOptions& opts = {});

}  // namespace billiard
