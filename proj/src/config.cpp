#include "billiard/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "billiard/errors.hpp"

namespace billiard {

namespace {

using nlohmann::json;

class Validator {
  public:
    std::vector<std::string> issues;

    void fail(const std::string& path, const std::string& msg) { issues.push_back(path + ": " + msg); }

    double number(const json& j, const std::string& path, double fallback, bool required = false) {
        if (!j.contains(last(path))) {
            if (required) fail(path, "missing");
            return fallback;
        }
        const auto& v = j.at(last(path));
        if (!v.is_number()) {
            fail(path, "expected a number");
            return fallback;
        }
        return v.get<double>();
    }

    int integer(const json& j, const std::string& path, int fallback) {
        if (!j.contains(last(path))) return fallback;
        const auto& v = j.at(last(path));
        if (!v.is_number_integer()) {
            fail(path, "expected an integer");
            return fallback;
        }
        return v.get<int>();
    }

    static std::string last(const std::string& path) {
        const auto pos = path.rfind('.');
        return pos == std::string::npos ? path : path.substr(pos + 1);
    }
};

BilliardTable parse_table(const json& j, Validator& v, int* dim_out) {
    *dim_out = 1;
    if (!j.is_object()) {
        v.fail("table", "expected an object");
        return BilliardTable::interval(1.0);
    }
    const std::string kind = j.value("kind", std::string{});
    if (kind == "interval") {
        const double a = v.number(j, "table.a", 1.0, true);
        if (!(a > 0.0)) {
            v.fail("table.a", "must be positive");
            return BilliardTable::interval(1.0);
        }
        return BilliardTable::interval(a);
    }
    if (kind == "ball") {
        const double r = v.number(j, "table.r", 1.0, true);
        const int n = v.integer(j, "table.n", 2);
        if (!(r > 0.0)) {
            v.fail("table.r", "must be positive");
            return BilliardTable::interval(1.0);
        }
        if (n != 1 && n != 2) {
            v.fail("table.n", "must be 1 or 2");
            return BilliardTable::interval(1.0);
        }
        *dim_out = n;
        return BilliardTable::ball(r, n);
    }
    if (kind == "star") {
        *dim_out = 2;
        const double c0 = v.number(j, "table.constant", 0.0, true);
        std::vector<Harmonic> harmonics;
        if (j.contains("harmonics")) {
            const auto& hs = j.at("harmonics");
            if (!hs.is_array()) {
                v.fail("table.harmonics", "expected an array of [k, cos, sin] triples");
            } else {
                for (std::size_t i = 0; i < hs.size(); ++i) {
                    const auto& h = hs[i];
                    if (!h.is_array() || h.size() != 3 || !h[0].is_number_integer() ||
                        !h[1].is_number() || !h[2].is_number()) {
                        v.fail("table.harmonics[" + std::to_string(i) + "]",
                               "expected [k, cos, sin]");
                        continue;
                    }
                    harmonics.push_back(
                        {h[0].get<int>(), h[1].get<double>(), h[2].get<double>()});
                }
            }
        }
        try {
            return BilliardTable::star(RadialProfile::trig_polynomial(c0, std::move(harmonics)));
        } catch (const std::exception& e) {
            v.fail("table", e.what());
            return BilliardTable::interval(1.0);
        }
    }
    v.fail("table.kind", "must be one of interval, ball, star");
    return BilliardTable::interval(1.0);
}

ForceField parse_force(const json& j, Validator& v, int dim, double T) {
    const ForceField fallback = ForceField::zero(T > 0.0 ? T : 1.0, dim);
    if (!j.is_object()) {
        v.fail("force", "expected an object");
        return fallback;
    }
    const bool has_const = j.contains("constant");
    const bool has_terms = j.contains("terms");
    if (has_const == has_terms) {
        v.fail("force", "exactly one of 'constant' or 'terms' is required");
        return fallback;
    }
    if (has_const) {
        const auto& c = j.at("constant");
        if (!c.is_array() || static_cast<int>(c.size()) != dim) {
            v.fail("force.constant", "expected an array of " + std::to_string(dim) + " number(s)");
            return fallback;
        }
        for (const auto& x : c)
            if (!x.is_number()) {
                v.fail("force.constant", "entries must be numbers");
                return fallback;
            }
        Vec2 a{c[0].get<double>(), dim == 2 ? c[1].get<double>() : 0.0};
        return ForceField::constant(a, T > 0.0 ? T : 1.0, dim);
    }
    const auto& terms = j.at("terms");
    if (!terms.is_array()) {
        v.fail("force.terms", "expected an array");
        return fallback;
    }
    // 1-d terms: [coord, t_exp, x1_exp, coeff]; 2-d: [coord, t_exp, x1_exp, x2_exp, coeff].
    const std::size_t width = dim == 1 ? 4 : 5;
    std::vector<MonomialTerm> parsed;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        const std::string path = "force.terms[" + std::to_string(i) + "]";
        if (!t.is_array() || t.size() != width) {
            v.fail(path, "expected " + std::to_string(width) + " entries");
            continue;
        }
        bool ok = t.back().is_number();
        for (std::size_t k = 0; k + 1 < t.size(); ++k) ok = ok && t[k].is_number_integer();
        if (!ok) {
            v.fail(path, "expected integer exponents and a numeric coefficient");
            continue;
        }
        MonomialTerm m;
        m.coord = t[0].get<int>();
        m.t_exp = t[1].get<int>();
        m.x_exp = {t[2].get<int>(), dim == 2 ? t[3].get<int>() : 0};
        m.coeff = t.back().get<double>();
        parsed.push_back(m);
    }
    try {
        return ForceField::polynomial(std::move(parsed), T > 0.0 ? T : 1.0, dim);
    } catch (const std::exception& e) {
        v.fail("force.terms", e.what());
        return fallback;
    }
}

ProblemConfig parse_json(const json& root) {
    Validator v;
    if (!root.is_object()) {
        v.fail("$", "top level must be an object");
        throw SchemaError(std::move(v.issues));
    }
    if (!root.contains("schema") || !root.at("schema").is_number_integer() ||
        root.at("schema").get<int>() != 1)
        v.fail("schema", "must be the integer 1");

    const double T = v.number(root, "T", 1.0, true);
    if (root.contains("T") && root.at("T").is_number() && !(T > 0.0)) v.fail("T", "must be positive");

    int dim = 1;
    BilliardTable table = root.contains("table")
                              ? parse_table(root.at("table"), v, &dim)
                              : (v.fail("table", "missing"), BilliardTable::interval(1.0));
    ForceField field = root.contains("force")
                           ? parse_force(root.at("force"), v, dim, T)
                           : (v.fail("force", "missing"), ForceField::zero(1.0, dim));

    ProblemConfig cfg{std::move(table), std::move(field), T};

    if (root.contains("tolerances")) {
        const auto& tj = root.at("tolerances");
        if (!tj.is_object()) {
            v.fail("tolerances", "expected an object");
        } else {
            auto& in = cfg.integrator;
            in.abs_tol = v.number(tj, "tolerances.abs_tol", in.abs_tol);
            in.rel_tol = v.number(tj, "tolerances.rel_tol", in.rel_tol);
            in.max_impacts = v.integer(tj, "tolerances.max_impacts", in.max_impacts);
            in.impact_law.graze_eps =
                v.number(tj, "tolerances.graze_eps", in.impact_law.graze_eps);
            cfg.solver.tol_v = v.number(tj, "tolerances.solver_tol_v", cfg.solver.tol_v);
            cfg.solver.tol_residual =
                v.number(tj, "tolerances.solver_tol_residual", cfg.solver.tol_residual);
            const double btf = v.number(tj, "tolerances.boundary_tol_factor", 1e-9);
            cfg.table.set_boundary_tolerance_factor(btf);
            if (!(in.abs_tol > 0.0)) v.fail("tolerances.abs_tol", "must be positive");
            if (!(in.rel_tol > 0.0)) v.fail("tolerances.rel_tol", "must be positive");
            if (in.max_impacts < 1) v.fail("tolerances.max_impacts", "must be >= 1");
            for (const auto& [key, _] : tj.items()) {
                static const char* known[] = {"abs_tol",      "rel_tol",
                                              "max_impacts",  "graze_eps",
                                              "solver_tol_v", "solver_tol_residual",
                                              "boundary_tol_factor"};
                bool found = false;
                for (const char* k : known) found = found || key == k;
                if (!found) v.fail("tolerances." + key, "unknown key");
            }
        }
        cfg.solver.integrator = cfg.integrator;
        cfg.degree.integrator = cfg.integrator;
    }

    auto opt_num = [&](const json& j, const std::string& path) -> std::optional<double> {
        if (!j.contains(Validator::last(path))) return std::nullopt;
        return v.number(j, path, 0.0);
    };
    auto opt_int = [&](const json& j, const std::string& path) -> std::optional<int> {
        if (!j.contains(Validator::last(path))) return std::nullopt;
        return v.integer(j, path, 0);
    };

    if (root.contains("solve")) {
        const auto& s = root.at("solve");
        cfg.v_min = opt_num(s, "solve.v_min");
        cfg.v_max = opt_num(s, "solve.v_max");
        cfg.max_count = opt_int(s, "solve.max_count");
    }
    if (root.contains("shoot")) {
        const auto& s = root.at("shoot");
        if (!cfg.v_min) cfg.v_min = opt_num(s, "shoot.v_min");
        if (!cfg.v_max) cfg.v_max = opt_num(s, "shoot.v_max");
        cfg.shoot_grid = opt_int(s, "shoot.grid");
    }
    if (root.contains("attainable")) {
        const auto& s = root.at("attainable");
        cfg.d = opt_num(s, "attainable.d");
        cfg.samples = opt_int(s, "attainable.samples");
    }
    if (root.contains("winding")) {
        const auto& s = root.at("winding");
        if (!cfg.d) cfg.d = opt_num(s, "winding.d");
        if (!cfg.samples) cfg.samples = opt_int(s, "winding.samples");
    }
    if (root.contains("sweep")) {
        const auto& s = root.at("sweep");
        if (s.contains("d_grid")) {
            const auto& g = s.at("d_grid");
            if (!g.is_array()) {
                v.fail("sweep.d_grid", "expected an array of numbers");
            } else {
                std::vector<double> grid;
                for (const auto& x : g) {
                    if (!x.is_number()) {
                        v.fail("sweep.d_grid", "entries must be numbers");
                        break;
                    }
                    grid.push_back(x.get<double>());
                }
                cfg.d_grid = std::move(grid);
            }
        }
        if (!cfg.samples) cfg.samples = opt_int(s, "sweep.samples");
    }
    if (root.contains("deviation")) {
        const auto& s = root.at("deviation");
        if (!cfg.d) cfg.d = opt_num(s, "deviation.d");
        cfg.dirs = opt_int(s, "deviation.dirs");
    }
    if (root.contains("simulate")) {
        const auto& s = root.at("simulate");
        if (s.contains("v")) {
            const auto& vv = s.at("v");
            if (!vv.is_array()) {
                v.fail("simulate.v", "expected an array");
            } else {
                std::vector<double> vel;
                for (const auto& x : vv) vel.push_back(x.is_number() ? x.get<double>() : 0.0);
                cfg.simulate_v = std::move(vel);
            }
        }
    }

    if (!v.issues.empty()) throw SchemaError(std::move(v.issues));
    return cfg;
}

}  // namespace

ProblemConfig parse_config_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError({origin + ": " + e.what()});
    }
    return parse_json(root);
}

ProblemConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

}  // namespace billiard
