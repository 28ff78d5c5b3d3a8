#include "billiard/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "billiard/errors.hpp"

namespace billiard {

namespace {

double pow_int(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

constexpr int kGridPerAxis = 64;

}  // namespace

ForceField ForceField::constant(const Vec2& a, double horizon, int dim) {
    if (!(horizon > 0.0)) throw std::invalid_argument("force field: horizon must be positive");
    if (dim != 1 && dim != 2) throw std::invalid_argument("force field: dim must be 1 or 2");
    if (dim == 1 && a.y != 0.0)
        throw std::invalid_argument("force field: 1-d constant force must have zero second component");
    ForceField f;
    f.is_constant_ = true;
    f.const_a_ = a;
    f.horizon_ = horizon;
    f.dim_ = dim;
    return f;
}

ForceField ForceField::polynomial(std::vector<MonomialTerm> terms, double horizon, int dim) {
    if (!(horizon > 0.0)) throw std::invalid_argument("force field: horizon must be positive");
    if (dim != 1 && dim != 2) throw std::invalid_argument("force field: dim must be 1 or 2");
    for (const auto& m : terms) {
        if (m.coord < 0 || m.coord >= dim)
            throw std::invalid_argument("force field: term coordinate out of range");
        if (m.t_exp < 0 || m.x_exp[0] < 0 || m.x_exp[1] < 0)
            throw std::invalid_argument("force field: negative exponent");
        if (dim == 1 && m.x_exp[1] != 0)
            throw std::invalid_argument("force field: 1-d term uses second coordinate");
        if (m.t_exp + m.x_exp[0] + m.x_exp[1] > 6)
            throw std::invalid_argument("force field: total degree exceeds 6");
    }
    ForceField f;
    f.is_constant_ = false;
    f.terms_ = std::move(terms);
    f.horizon_ = horizon;
    f.dim_ = dim;
    return f;
}

ForceField ForceField::zero(double horizon, int dim) {
    return constant({0.0, 0.0}, horizon, dim);
}

Vec2 ForceField::eval(double t, const Vec2& x) const {
    if (is_constant_) return const_a_;
    Vec2 out{0.0, 0.0};
    for (const auto& m : terms_) {
        const double v =
            m.coeff * pow_int(t, m.t_exp) * pow_int(x.x, m.x_exp[0]) * pow_int(x.y, m.x_exp[1]);
        if (m.coord == 0)
            out.x += v;
        else
            out.y += v;
    }
    return out;
}

std::array<std::array<double, 2>, 2> ForceField::jacobian_x(double t, const Vec2& x) const {
    std::array<std::array<double, 2>, 2> j{{{0.0, 0.0}, {0.0, 0.0}}};
    if (is_constant_) return j;
    for (const auto& m : terms_) {
        const double tf = m.coeff * pow_int(t, m.t_exp);
        if (m.x_exp[0] > 0)
            j[m.coord][0] +=
                tf * m.x_exp[0] * pow_int(x.x, m.x_exp[0] - 1) * pow_int(x.y, m.x_exp[1]);
        if (m.x_exp[1] > 0)
            j[m.coord][1] +=
                tf * m.x_exp[1] * pow_int(x.x, m.x_exp[0]) * pow_int(x.y, m.x_exp[1] - 1);
    }
    return j;
}

bool ForceField::is_zero() const {
    if (is_constant_) return const_a_.x == 0.0 && const_a_.y == 0.0;
    for (const auto& m : terms_)
        if (m.coeff != 0.0) return false;
    return true;
}

namespace {

// Walks the [0,T] x {|x| <= D/2} grid shared by m_l1 and lipschitz_bound.
template <typename Fn>
double grid_sup(const ForceField& field, const BilliardTable& table, Fn&& value_at) {
    const double T = field.horizon();
    const double half = table.diameter() / 2.0;
    double sup = 0.0;
    for (int it = 0; it <= kGridPerAxis; ++it) {
        const double t = T * it / kGridPerAxis;
        for (int ix = 0; ix <= kGridPerAxis; ++ix) {
            const double x1 = -half + 2.0 * half * ix / kGridPerAxis;
            if (field.dim() == 1) {
                sup = std::max(sup, value_at(t, Vec2{x1, 0.0}));
            } else {
                for (int iy = 0; iy <= kGridPerAxis; ++iy) {
                    const double x2 = -half + 2.0 * half * iy / kGridPerAxis;
                    const Vec2 x{x1, x2};
                    if (norm_sq(x) > half * half) continue;
                    sup = std::max(sup, value_at(t, x));
                }
            }
        }
    }
    return sup;
}

}  // namespace

double m_l1(const ForceField& field, const BilliardTable& table, double inflation) {
    if (field.is_constant())
        return inflation * field.horizon() * norm(field.constant_value());
    const double m_bar = grid_sup(field, table, [&](double t, const Vec2& x) {
        return norm(field.eval(t, x));
    });
    return inflation * field.horizon() * m_bar;
}

double lipschitz_bound(const ForceField& field, const BilliardTable& table, double inflation) {
    if (field.is_constant()) return 0.0;
    const double sup = grid_sup(field, table, [&](double t, const Vec2& x) {
        const auto j = field.jacobian_x(t, x);
        // Frobenius norm dominates the operator norm.
        return std::sqrt(j[0][0] * j[0][0] + j[0][1] * j[0][1] + j[1][0] * j[1][0] +
                         j[1][1] * j[1][1]);
    });
    return inflation * sup;
}

Vec2 apply_impact(const Vec2& normal, const Vec2& v_in, const ImpactLawOptions& opts) {
    const double n2 = norm_sq(normal);
    if (std::fabs(n2 - 1.0) > 3e-12)
        throw std::invalid_argument("apply_impact: normal is not a unit vector");
    const double w = dot(v_in, normal);
    if (std::fabs(w) < opts.graze_eps * std::max(norm(v_in), opts.graze_abs))
        throw GrazingImpact(w, norm(v_in));
    return v_in - 2.0 * w * normal;
}

}  // namespace billiard
