#pragma once

#include <optional>
#include <string>
#include <vector>

#include "billiard/errors.hpp"
#include "billiard/integrator.hpp"

namespace billiard {

/// One evaluation of the endpoint map V_T(v) = x_v(T) for the
/// one-dimensional problem (x(0) = 0, x'(0) = v).
struct ShotResult {
    double v;
    double endpoint;
    int impact_count;
    std::vector<double> impact_times;
    TrajectoryStatus status;

    bool completed() const { return status == TrajectoryStatus::Completed; }
};

struct DirichletSolution {
    double v;
    Trajectory trajectory;
    double residual;  // |x_v(T)|
};

struct SolverOptions {
    IntegratorOptions integrator{};
    double tol_v = 1e-12;
    double tol_residual = 1e-8;
    /// find_brackets grid density for enumerate_solutions: cells per decade
    /// of |v| (endpoint oscillation speeds up with |v|).
    int grid_per_decade = 256;
    int min_grid = 64;
    /// Velocities closer than this are the same solution.
    double distinct_tol = 1e-6;
    int max_escalation_doublings = 20;
    int level_budget = 0;  // 0 = max_count + 4
};

ShotResult endpoint_map(const BilliardTable& table, const ForceField& field, double v, double T,
                        const IntegratorOptions& opts = {});

int count_impacts(const BilliardTable& table, const ForceField& field, double v, double T,
                  const IntegratorOptions& opts = {});

struct Bracket {
    double v_lo;
    double v_hi;
    double f_lo;
    double f_hi;
};

struct BracketScan {
    std::vector<Bracket> brackets;
    std::vector<double> failed_nodes;  // grid velocities whose shot did not complete
};

/// Scan V_T on a uniform grid over [v_min, v_max] and, mirrored, over
/// [-v_max, -v_min]; return consecutive node pairs with opposite endpoint
/// signs. Cells touching a failed shot are discarded and reported.
/// The scan is meaningful above ||m||_1 where continuity of V_T is proven,
/// but is permitted below it: sign changes between completed shots still
/// bracket roots in practice, and failures are skipped cell by cell.
BracketScan find_brackets(const BilliardTable& table, const ForceField& field, double T,
                          double v_min, double v_max, int n_grid, const SolverOptions& opts = {},
                          bool both_signs = true);

/// Bisect V_T on a bracket until |V_T(v)| <= tol_residual or the bracket
/// width falls below tol_v. When a mid-shot fails (grazing), the quarter
/// points of the bracket are tried once each; if both fail, BracketLost.
DirichletSolution bisect_solution(const BilliardTable& table, const ForceField& field, double T,
                                  const Bracket& bracket, const SolverOptions& opts = {});

/// Scale v so that the trajectory gains at least target_extra impacts
/// (target_extra even). The scale factor starts from the constructive
/// bound c0 > ||m||_1/|v| + 6r/(|v| t1(v)) and is doubled until the gain
/// is confirmed by shooting.
double scaling_escalation(const BilliardTable& table, const ForceField& field, double T, double v,
                          int target_extra, const SolverOptions& opts = {});

struct EnumerateOptions {
    SolverOptions solver{};
    std::optional<double> v_min;  // explicit scan window (absolute values)
    std::optional<double> v_max;
};

struct EnumerationResult {
    std::vector<DirichletSolution> solutions;       // sorted by |v|
    std::optional<DirichletSolution> trivial;       // v = 0, no impacts
    std::vector<std::string> diagnostics;
};

/// Enumerate Dirichlet solutions: bracket-and-bisect sweeps over velocity
/// windows whose upper ends are produced by scaling_escalation, so that
/// consecutive windows are guaranteed (impact count +2) to contain a root.
EnumerationResult enumerate_solutions(const BilliardTable& table, const ForceField& field, double T,
                                      int max_count, const EnumerateOptions& opts = {});

}  // namespace billiard
