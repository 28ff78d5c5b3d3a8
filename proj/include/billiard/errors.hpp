#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace billiard {

/// Query point is not within boundary tolerance of the table boundary.
struct NotOnBoundary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The incoming velocity is (numerically) tangential to the boundary.
/// Tangential contact is the sliding regime; trajectories that reach it
/// are rejected rather than continued with made-up dynamics.
struct GrazingImpact : std::runtime_error {
    GrazingImpact(double normal_speed_, double speed_)
        : std::runtime_error("grazing impact: normal velocity component is below threshold"),
          normal_speed(normal_speed_),
          speed(speed_) {}
    double normal_speed;
    double speed;
};

/// Constant-force reduction requested with a zero force vector.
struct ZeroForce : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EscalationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BracketLost : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The attainable set passes too close to the origin for a winding number
/// to be defined. This localizes a solution candidate on the shell.
struct OriginTooClose : std::runtime_error {
    OriginTooClose(double d_, double min_dist_)
        : std::runtime_error("winding number undefined: attainable set too close to the origin"),
          d(d_),
          min_dist(min_dist_) {}
    double d;
    double min_dist;
};

struct MeshBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Config validation failure; carries every issue found, not just the first.
struct SchemaError : std::runtime_error {
    explicit SchemaError(std::vector<std::string> issues_)
        : std::runtime_error(join(issues_)), issues(std::move(issues_)) {}
    std::vector<std::string> issues;

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "config schema errors:";
        for (const auto& e : v) {
            s += "\n  - ";
            s += e;
        }
        return s;
    }
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace billiard
