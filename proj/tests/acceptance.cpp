// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria 1-2 exercise the CLI end to end; the rest drive the library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "billiard/config.hpp"
#include "billiard/csv.hpp"
#include "billiard/degree.hpp"
#include "billiard/errors.hpp"
#include "billiard/shooting.hpp"
#include "oracles.hpp"

using namespace billiard;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

int g_failed = 0;

void report(int id, bool pass, const std::string& label, const std::string& detail = "") {
    std::printf("criterion %2d: %s  %s%s%s\n", id, pass ? "PASS" : "FAIL", label.c_str(),
                detail.empty() ? "" : " - ", detail.c_str());
    if (!pass) ++g_failed;
}

void run_criterion(int id, const std::string& label, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool pass = false;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(id, pass, label, detail);
}

const BilliardTable kA8 = BilliardTable::interval(0.125);
const BilliardTable kA38 = BilliardTable::interval(0.375);
ForceField f_const2() { return ForceField::constant({2.0, 0.0}, 1.0, 1); }
ForceField f_six_t(double T = 1.0) { return ForceField::polynomial({{0, 1, {0, 0}, 6.0}}, T, 1); }

struct SolutionRow {
    double v;
    double residual;
    int impact_count;
    std::vector<double> times;
};

std::vector<SolutionRow> parse_solutions_csv(const fs::path& p) {
    std::vector<SolutionRow> rows;
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SolutionRow r;
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        r.v = std::atof(cell.c_str());
        std::getline(ss, cell, ',');
        r.residual = std::atof(cell.c_str());
        std::getline(ss, cell, ',');
        r.impact_count = std::atoi(cell.c_str());
        std::getline(ss, cell, ',');
        std::istringstream ts(cell);
        std::string t;
        while (std::getline(ts, t, ';'))
            if (!t.empty()) r.times.push_back(std::atof(t.c_str()));
        rows.push_back(std::move(r));
    }
    return rows;
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "billiard_acceptance";
    fs::create_directories(dir);
    return dir;
}

double run_solve_cli(const fs::path& cfg, const fs::path& out, int max_count) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string cmd = std::string(BILLIARD_CLI_PATH) + " solve " + cfg.string() +
                            " --max-count " + std::to_string(max_count) +
                            " --v-min 0.5 --v-max 2.5 --out " + out.string() + " >/dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) std::fprintf(stderr, "solve CLI run failed\n");
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

fs::path const_force_config() {
    const fs::path p = scratch() / "interval-const.json";
    std::ofstream(p) << R"({"schema": 1, "T": 1.0,
        "table": {"kind": "interval", "a": 0.125},
        "force": {"constant": [2.0]}})";
    return p;
}

// Shared random problem family for criteria 6 and 7: degree <= 3 polynomial
// force with m_bar <= 5, interval half-width in [0.05, 0.5], T = 1.
struct RandomProblem {
    BilliardTable table;
    ForceField field;
    double ml;
    double v;
};

RandomProblem draw_problem(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    std::uniform_real_distribution<double> a_dist(0.05, 0.5);
    std::uniform_real_distribution<double> extra(0.5, 10.0);
    const double a = a_dist(rng);
    auto table = BilliardTable::interval(a);
    std::vector<MonomialTerm> terms;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) terms.push_back({0, i, {j, 0}, coeff(rng)});
    auto field = ForceField::polynomial(terms, 1.0, 1);
    double ml = m_l1(field, table);
    const double m_bar = ml / 1.1;
    if (m_bar > 5.0) {
        for (auto& t : terms) t.coeff *= 4.9 / m_bar;
        field = ForceField::polynomial(terms, 1.0, 1);
        ml = m_l1(field, table);
    }
    const double v = (ml + extra(rng)) * (rng() % 2 ? 1.0 : -1.0);
    return {std::move(table), std::move(field), ml, v};
}

}  // namespace

int main() {
    // 1. Constant-force interval problem through the CLI.
    run_criterion(1, "constant-force interval: v=-0.8568, impacts {0.186475, 0.5, 0.813525}", [](std::string& d) {
        const fs::path out = scratch() / "sol1.csv";
        const double secs = run_solve_cli(const_force_config(), out, 12);
        const auto rows = parse_solutions_csv(out);
        for (const auto& r : rows) {
            if (std::fabs(r.v + 0.8568) > 1e-3) continue;
            const bool ok = r.residual <= 1e-8 && r.times.size() == 3 &&
                            std::fabs(r.times[0] - 0.186475) <= 1e-3 &&
                            std::fabs(r.times[1] - 0.5) <= 1e-3 &&
                            std::fabs(r.times[2] - 0.813525) <= 1e-3 && secs < 5.0;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "v=%.6f residual=%.2e t=(%.6f, %.6f, %.6f) in %.2fs",
                          r.v, r.residual, r.times.size() > 0 ? r.times[0] : -1,
                          r.times.size() > 1 ? r.times[1] : -1,
                          r.times.size() > 2 ? r.times[2] : -1, secs);
            d = buf;
            return ok;
        }
        d = "no solution near v=-0.8568 in the CSV";
        return false;
    });

    // 2. Second solution of the same problem, with exactly 7 impacts.
    run_criterion(2, "constant-force interval: v=-1.76579 with exactly 7 impacts", [](std::string& d) {
        const fs::path out = scratch() / "sol2.csv";
        const double secs = run_solve_cli(const_force_config(), out, 12);
        for (const auto& r : parse_solutions_csv(out)) {
            if (std::fabs(r.v + 1.76579) > 1e-3) continue;
            char buf[96];
            std::snprintf(buf, sizeof(buf), "v=%.6f impacts=%d residual=%.2e in %.2fs", r.v,
                          r.impact_count, r.residual, secs);
            d = buf;
            return r.impact_count == 7 && r.residual <= 1e-8 && secs < 5.0;
        }
        d = "no solution near v=-1.76579 in the CSV";
        return false;
    });

    // 3. Ramp-force one-bounce check.
    run_criterion(3, "ramp-force interval: one impact at t=0.5, x(1)=0.25", [](std::string& d) {
        const auto traj = integrate_cauchy(kA38, f_six_t(), {0, 0}, {-1, 0}, 1.0);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "impacts=%zu t1=%.12f x(1)=%.12f", traj.impacts.size(),
                      traj.impacts.empty() ? -1.0 : traj.impacts[0].t, traj.endpoint1d());
        d = buf;
        return traj.status == TrajectoryStatus::Completed && traj.impacts.size() == 1 &&
               std::fabs(traj.impacts[0].t - 0.5) <= 1e-9 &&
               std::fabs(traj.endpoint1d() - 0.25) <= 1e-8;
    });

    // 4. Ramp-force solver: shot value at v=-1.218 and the nearby root.
    run_criterion(4, "ramp-force interval: x(1) at v=-1.218 and root within 2e-3", [](std::string& d) {
        const auto f = f_six_t();
        const auto shot = endpoint_map(kA38, f, -1.218, 1.0);
        const bool shot_ok = std::fabs(shot.endpoint - (-0.0006379)) <= 1e-4;
        const auto scan = find_brackets(kA38, f, 1.0, 1.0, 1.5, 64);
        for (const auto& b : scan.brackets) {
            if (b.v_hi < -1.4 || b.v_lo > -1.1) continue;
            const auto sol = bisect_solution(kA38, f, 1.0, b);
            if (std::fabs(sol.v + 1.218) <= 2e-3) {
                char buf[96];
                std::snprintf(buf, sizeof(buf), "x(1)=%.7g at -1.218; root v=%.6f residual=%.2e",
                              shot.endpoint, sol.v, sol.residual);
                d = buf;
                return shot_ok && sol.residual <= 1e-8;
            }
        }
        d = "no root near v=-1.218";
        return false;
    });

    // 5. Barrier-side threshold at c = (243/256)^(1/3).
    run_criterion(5, "ramp-force interval: first-impact side flips across -c", [](std::string& d) {
        const double c = std::cbrt(243.0 / 256.0);
        const auto f = f_six_t(2.0);  // horizon 2: the slow shot hits after t=1
        const auto hi = first_impact(kA38, f, {0, 0}, {-0.98 * c, 0}, 0.0, 2.0);
        const auto lo = first_impact(kA38, f, {0, 0}, {-1.02 * c, 0}, 0.0, 2.0);
        if (!hi || !lo) {
            d = "missing first impact";
            return false;
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "side(-0.98c)=%+d at t=%.4f, side(-1.02c)=%+d at t=%.4f",
                      hi->point.x > 0 ? 1 : -1, hi->t, lo->point.x > 0 ? 1 : -1, lo->t);
        d = buf;
        return hi->point.x > 0 && lo->point.x < 0;
    });

    // 6. Alternation and speed-floor suite: 200 random trials.
    run_criterion(6, "side alternation + speed floor on 200 random problems", [](std::string& d) {
        std::mt19937_64 rng(987654321);
        int completed = 0, violations = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const RandomProblem p = draw_problem(rng);
            const auto traj = integrate_cauchy(p.table, p.field, {0, 0}, {p.v, 0}, 1.0);
            if (traj.status != TrajectoryStatus::Completed) continue;
            ++completed;
            for (std::size_t k = 0; k + 1 < traj.impacts.size(); ++k)
                if (traj.impacts[k].side * traj.impacts[k + 1].side != -1) ++violations;
            const double floor_speed = std::fabs(p.v) - p.ml;
            for (int i = 0; i <= 500; ++i)
                if (std::fabs(traj.eval(i / 500.0).v.x) < floor_speed - 1e-9) ++violations;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "completed=%d violations=%d", completed, violations);
        d = buf;
        return violations == 0 && completed >= 150;
    });

    // 7. Escalation suite: +2 impacts via scaling.
    run_criterion(7, "scaling escalation gains >= 2 impacts on 50 random problems", [](std::string& d) {
        std::mt19937_64 rng(123456789);
        int done = 0, ok = 0;
        for (int guard = 0; guard < 400 && done < 50; ++guard) {
            const RandomProblem p = draw_problem(rng);
            const auto base = endpoint_map(p.table, p.field, p.v, 1.0);
            if (!base.completed() || base.impact_count < 1) continue;
            ++done;
            try {
                const double scaled = scaling_escalation(p.table, p.field, 1.0, p.v, 2);
                const auto after = endpoint_map(p.table, p.field, scaled, 1.0);
                if (after.completed() && after.impact_count >= base.impact_count + 2) ++ok;
            } catch (const std::exception&) {
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "verified %d/%d", ok, done);
        d = buf;
        return done == 50 && ok == 50;
    });

    // 8. Free-flight enumeration against the exact fold oracle. The fold of
    // vT into [-a, a] (period 4a, starting at the center) vanishes every
    // half period, |v| = 2ak; v = 0.25 demonstrably solves the problem
    // (impact at t = 1/2, return at t = 1). The three smallest distinct |v|
    // must be the oracle zeros {0.25, 0.5, 0.75}, and the full-period
    // subfamily {0.5, 1.0, 1.5} must appear among the solutions as well.
    run_criterion(8, "free flight: enumerated |v| match the fold-oracle zeros", [](std::string& d) {
        const auto f0 = ForceField::zero(1.0, 1);
        const auto zeros = oracle::fold_zeros(1.0, 0.125, 6);  // 0.25, 0.5, ..., 1.5

        const auto res6 = enumerate_solutions(kA8, f0, 1.0, 6, {});
        std::vector<double> mags;
        for (const auto& s : res6.solutions) {
            if (std::fabs(oracle::fold_endpoint(s.v, 1.0, 0.125)) > 1e-9) {
                d = "a returned velocity is not a zero of the exact fold";
                return false;
            }
            bool seen = false;
            for (const double m : mags) seen = seen || std::fabs(m - std::fabs(s.v)) <= 1e-9;
            if (!seen) mags.push_back(std::fabs(s.v));
        }
        std::sort(mags.begin(), mags.end());
        const bool smallest_ok = mags.size() >= 3 && std::fabs(mags[0] - zeros[0]) <= 1e-9 &&
                                 std::fabs(mags[1] - zeros[1]) <= 1e-9 &&
                                 std::fabs(mags[2] - zeros[2]) <= 1e-9;

        const auto res12 = enumerate_solutions(kA8, f0, 1.0, 12, {});
        bool printed_set_ok = true;
        for (const double target : {0.5, 1.0, 1.5}) {
            bool found = false;
            for (const auto& s : res12.solutions)
                found = found || std::fabs(std::fabs(s.v) - target) <= 1e-9;
            printed_set_ok = printed_set_ok && found;
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "smallest |v| = {%.9g, %.9g, %.9g} (oracle zeros 2ak); {0.5,1,1.5} present: %s",
                      mags.size() > 0 ? mags[0] : -1, mags.size() > 1 ? mags[1] : -1,
                      mags.size() > 2 ? mags[2] : -1, printed_set_ok ? "yes" : "no");
        d = buf;
        return smallest_ok && printed_set_ok;
    });

    // 9. Uniform motion in the disk: identity / origin / antipodal shells.
    run_criterion(9, "disk shells d=1,2,3: +-identity endpoints and winding 1", [](std::string& d) {
        const auto ball = BilliardTable::ball(1.0, 2);
        const auto f0 = ForceField::zero(1.0, 2);
        double worst1 = 0.0, worst2 = 0.0, worst3 = 0.0;
        for (const auto& s : attainable_set(ball, f0, 1.0, 1.0, 64))
            worst1 = std::max(worst1, distance(s.endpoint, unit(s.theta)));
        for (const auto& s : attainable_set(ball, f0, 1.0, 2.0, 64))
            worst2 = std::max(worst2, norm(s.endpoint));
        for (const auto& s : attainable_set(ball, f0, 1.0, 3.0, 64))
            worst3 = std::max(worst3, distance(s.endpoint, -1.0 * unit(s.theta)));
        const auto w1 = winding_number(ball, f0, 1.0, 1.0, 64);
        const auto w3 = winding_number(ball, f0, 1.0, 3.0, 64);
        bool otc = false;
        try {
            winding_number(ball, f0, 1.0, 2.0, 64);
        } catch (const OriginTooClose&) {
            otc = true;
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "dev(id)=%.1e dev(origin)=%.1e dev(-id)=%.1e w1=%d w3=%d origin flag=%s",
                      worst1, worst2, worst3, w1.winding, w3.winding, otc ? "yes" : "no");
        d = buf;
        return worst1 <= 1e-8 && worst2 <= 1e-8 && worst3 <= 1e-8 && w1.winding == 1 &&
               w3.winding == 1 && otc;
    });

    // 10. Constant-force disk reduction: embedded 1-d solution stays on the line.
    run_criterion(10, "constant-force disk reduces to the 1-d problem", [](std::string& d) {
        const auto ball = BilliardTable::ball(0.125, 2);
        const auto red = reduce_constant_force(ball, {2.0, 0.0}, 1.0);
        const auto scan = find_brackets(red.interval, red.scalar_force, 1.0, 0.5, 1.2, 128);
        for (const auto& b : scan.brackets) {
            if (!(std::min(b.v_lo, b.v_hi) <= -0.8568 && -0.8568 <= std::max(b.v_lo, b.v_hi)))
                continue;
            const auto sol = bisect_solution(red.interval, red.scalar_force, 1.0, b);
            const Vec2 v2{sol.v * red.direction.x, sol.v * red.direction.y};
            const auto traj = integrate_cauchy(ball, ForceField::constant({2.0, 0.0}, 1.0, 2),
                                               {0, 0}, v2, 1.0);
            double off_line = 0.0;
            for (int i = 0; i <= 1000; ++i)
                off_line = std::max(off_line, std::fabs(traj.eval(i / 1000.0).x.y));
            char buf[96];
            std::snprintf(buf, sizeof(buf), "v=(%.6f, 0) residual=%.1e max|x2|=%.1e", sol.v,
                          norm(traj.endpoint()), off_line);
            d = buf;
            return norm(traj.endpoint()) <= 1e-6 && off_line <= 1e-8;
        }
        d = "1-d bracket near -0.8568 not found";
        return false;
    });

    // 11. Normal-ray solutions on rho = 2 + cos(3 theta).
    run_criterion(11, "three-petal table: exactly 6 one-impact ray solutions", [](std::string& d) {
        const auto star = BilliardTable::star(RadialProfile::trig_polynomial(2.0, {{3, 1.0, 0.0}}));
        const auto rays = normal_ray_solutions(star, 1.0);
        bool ok = !rays.continuum && rays.rays.size() == 6;
        double worst_res = 0.0, worst_theta = 0.0;
        for (std::size_t i = 0; i < rays.rays.size() && ok; ++i) {
            worst_res = std::max(worst_res, rays.rays[i].residual);
            worst_theta = std::max(worst_theta, std::fabs(rays.rays[i].theta - i * kPi / 3.0));
            ok = ok && rays.rays[i].impact_count == 1 && rays.rays[i].residual <= 1e-8;
        }
        char buf[96];
        std::snprintf(buf, sizeof(buf), "rays=%zu max residual=%.1e max theta err=%.1e",
                      rays.rays.size(), worst_res, worst_theta);
        d = buf;
        return ok;
    });

    // 12. Endpoint-map continuity probe on the constant-force problem.
    run_criterion(12, "endpoint-map differences shrink 3x per h decade", [](std::string& d) {
        const auto f = f_const2();
        // Locate impact-count transitions on a fine grid.
        std::vector<double> transitions;
        {
            int prev = -1;
            for (double b = -2.41; b <= -1.09; b += 1e-3) {
                const auto s = endpoint_map(kA8, f, b, 1.0);
                if (!s.completed()) {
                    prev = -1;
                    continue;
                }
                if (prev >= 0 && s.impact_count != prev) transitions.push_back(b - 5e-4);
                prev = s.impact_count;
            }
        }
        int used = 0, ok = 0;
        for (int i = 0; i < 130 && used < 20; ++i) {
            const double b = -1.1 - 1.3 * i / 129.0;
            bool near = false;
            for (const double tr : transitions) near = near || std::fabs(b - tr) < 1e-2;
            if (near) continue;
            const auto sb = endpoint_map(kA8, f, b, 1.0);
            if (!sb.completed()) continue;
            ++used;
            double dev[3];
            int k = 0;
            for (const double h : {1e-3, 1e-4, 1e-5}) {
                dev[k++] = std::max(std::fabs(endpoint_map(kA8, f, b + h, 1.0).endpoint - sb.endpoint),
                                    std::fabs(endpoint_map(kA8, f, b - h, 1.0).endpoint - sb.endpoint));
            }
            if (dev[1] <= dev[0] / 3.0 && dev[2] <= dev[1] / 3.0) ++ok;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%d/%d probes contract 3x per step", ok, used);
        d = buf;
        return used == 20 && ok == 20;
    });

    // 13. Integrator convergence on the criterion-1 solution.
    run_criterion(13, "x(T) moves <= 1e-9 when tolerances tighten to 1e-12", [](std::string& d) {
        const auto f = f_const2();
        const auto scan = find_brackets(kA8, f, 1.0, 0.5, 1.2, 128);
        for (const auto& b : scan.brackets) {
            if (!(std::min(b.v_lo, b.v_hi) <= -0.8568 && -0.8568 <= std::max(b.v_lo, b.v_hi)))
                continue;
            const auto sol = bisect_solution(kA8, f, 1.0, b);
            IntegratorOptions coarse;  // 1e-10 defaults
            IntegratorOptions tight;
            tight.abs_tol = tight.rel_tol = 1e-12;
            const double e1 = integrate_cauchy(kA8, f, {0, 0}, {sol.v, 0}, 1.0, coarse).endpoint1d();
            const double e2 = integrate_cauchy(kA8, f, {0, 0}, {sol.v, 0}, 1.0, tight).endpoint1d();
            char buf[64];
            std::snprintf(buf, sizeof(buf), "|delta x(T)| = %.2e", std::fabs(e1 - e2));
            d = buf;
            return std::fabs(e1 - e2) <= 1e-9;
        }
        d = "criterion-1 bracket not found";
        return false;
    });

    if (g_failed == 0) {
        std::printf("acceptance: all 13 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failed);
    return 1;
}
