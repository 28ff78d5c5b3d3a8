#pragma once

#include <optional>
#include <string>
#include <vector>

#include "billiard/errors.hpp"
#include "billiard/integrator.hpp"
#include "billiard/shooting.hpp"

namespace billiard {

/// One shot on the speed shell |v| = d: endpoint of the trajectory started
/// from the origin with velocity d (cos theta, sin theta).
struct AttainableSample {
    double theta;
    double d;
    Vec2 endpoint;
    TrajectoryStatus status;
};

struct WindingResult {
    double d;
    int winding;
    double min_dist_to_origin;
    int samples_used;
};

struct DegreeOptions {
    IntegratorOptions integrator{};
    /// Winding is undefined when the endpoint loop comes within
    /// delta_factor * diameter of the origin (a solution candidate).
    double delta_factor = 1e-6;
    /// Angular steps above pi/2 trigger adaptive refinement, at most this
    /// many halving passes.
    int max_doublings = 6;
    /// |raw winding - nearest integer| must stay below this.
    double integer_slack = 0.05;
};

std::vector<AttainableSample> attainable_set(const BilliardTable& table, const ForceField& field,
                                             double T, double d, int n_samples,
                                             const DegreeOptions& opts = {});

/// Total turns of a closed endpoint loop around the origin (samples in
/// angular order; the closing edge wraps around).
double winding_turns(const std::vector<Vec2>& loop);

/// Winding number of V_T^d : S^1 -> R^2 around the origin, with adaptive
/// angular refinement (re-shooting midpoints of any arc whose endpoint step
/// exceeds pi/2). Throws OriginTooClose and MeshBudgetExceeded.
WindingResult winding_number(const BilliardTable& table, const ForceField& field, double T,
                             double d, int n_samples, const DegreeOptions& opts = {});

struct SweepEntry {
    double d;
    std::optional<WindingResult> result;       // empty on OriginTooClose / budget failure
    std::optional<double> candidate_min_dist;  // set when OriginTooClose fired
    std::string note;
};

struct SweepFlags {
    std::vector<double> solution_candidates;              // OriginTooClose speeds
    std::vector<std::pair<double, double>> annuli;        // winding changed across [d1, d2]
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    SweepFlags flags;
};

/// Winding across an increasing grid of speeds; flags OriginTooClose
/// speeds as direct solution candidates and winding changes between
/// consecutive well-defined entries as existence annuli.
SweepResult degree_sweep(const BilliardTable& table, const ForceField& field, double T,
                         const std::vector<double>& d_grid, int n_samples,
                         const DegreeOptions& opts = {});

/// The constant-force problem in a disk is one-dimensional along the force
/// direction; this returns that reduction.
struct ReducedProblem {
    BilliardTable interval;
    ForceField scalar_force;
    Vec2 direction;  // unit vector a/|a|; 1-d solutions embed as s(t) * direction
};

ReducedProblem reduce_constant_force(const BilliardTable& ball, const Vec2& a, double T);

/// Uniform-motion Dirichlet solutions through boundary points whose normal
/// ray passes through the origin (critical points of the radial profile).
/// Each candidate is verified by integration: exactly one impact at T/2 and
/// residual <= tol. For a disk every direction works (a continuum); the
/// representative direction (1, 0) is returned with the flag set.
struct NormalRay {
    double theta;
    Vec2 z;       // boundary point
    Vec2 v;       // (2/T) z
    double residual;
    int impact_count;
};

struct NormalRaySolutions {
    std::vector<NormalRay> rays;
    bool continuum = false;
    std::vector<std::string> diagnostics;
};

NormalRaySolutions normal_ray_solutions(const BilliardTable& table, double T,
                                        double residual_tol = 1e-8,
                                        const DegreeOptions& opts = {});

/// Deviation of the forced trajectory from the uniform billiard flow with
/// the same initial velocity, per direction: sup |x_v(t) - z_v(t)| split
/// into the regime before either trajectory's first impact and the full
/// horizon.
struct DeviationSample {
    double theta;
    double dev_first_impact;
    double dev_full;
    TrajectoryStatus status;
};

struct DeviationReport {
    double d;
    std::vector<DeviationSample> per_direction;
    double max_first_impact = 0.0;
    double max_full = 0.0;
};

DeviationReport uniform_deviation(const BilliardTable& table, const ForceField& field, double T,
                                  double d, int n_dirs, const DegreeOptions& opts = {});

}  // namespace billiard
