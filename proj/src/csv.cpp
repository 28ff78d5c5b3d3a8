#include "billiard/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "billiard/errors.hpp"

namespace billiard {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj, int samples_per_unit_time) {
    std::string out = traj.dim == 1 ? "t,x1,v1,segment\n" : "t,x1,x2,v1,v2,segment\n";
    auto row = [&](double t, std::size_t seg) {
        const State s = traj.eval(t);
        out += num(t);
        out += ',';
        out += num(s.x.x);
        if (traj.dim == 2) {
            out += ',';
            out += num(s.x.y);
        }
        out += ',';
        out += num(s.v.x);
        if (traj.dim == 2) {
            out += ',';
            out += num(s.v.y);
        }
        out += ',';
        out += std::to_string(seg);
        out += '\n';
    };

    // Per-segment uniform sampling with exact segment endpoints.
    std::vector<double> bounds{traj.t_begin()};
    for (const auto& im : traj.impacts) bounds.push_back(im.t);
    bounds.push_back(traj.t_end());
    for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
        const double t0 = bounds[seg], t1 = bounds[seg + 1];
        const int n = std::max(2, static_cast<int>(std::ceil(samples_per_unit_time * (t1 - t0))));
        for (int k = 0; k < n; ++k) row(t0 + (t1 - t0) * k / (n - 1), seg);
    }
    return out;
}

std::string impacts_csv(const Trajectory& traj) {
    std::string out = traj.dim == 1 ? "t,point1,vin1,vout1,side\n"
                                    : "t,point1,point2,vin1,vin2,vout1,vout2,side\n";
    for (const auto& im : traj.impacts) {
        out += num(im.t);
        out += ',';
        out += num(im.point.x);
        if (traj.dim == 2) {
            out += ',';
            out += num(im.point.y);
        }
        out += ',';
        out += num(im.v_in.x);
        if (traj.dim == 2) {
            out += ',';
            out += num(im.v_in.y);
        }
        out += ',';
        out += num(im.v_out.x);
        if (traj.dim == 2) {
            out += ',';
            out += num(im.v_out.y);
        }
        out += ',';
        out += std::to_string(im.side);
        out += '\n';
    }
    return out;
}

std::string shots_csv(const std::vector<ShotResult>& shots) {
    std::string out = "v,endpoint,impact_count,status\n";
    for (const auto& s : shots) {
        out += num(s.v);
        out += ',';
        out += num(s.endpoint);
        out += ',';
        out += std::to_string(s.impact_count);
        out += ',';
        out += to_string(s.status);
        out += '\n';
    }
    return out;
}

std::string solutions_csv(const std::vector<DirichletSolution>& sols) {
    std::string out = "v,residual,impact_count,impact_times\n";
    for (const auto& s : sols) {
        out += num(s.v);
        out += ',';
        out += num(s.residual);
        out += ',';
        out += std::to_string(s.trajectory.impacts.size());
        out += ',';
        bool first = true;
        for (const auto& im : s.trajectory.impacts) {
            if (!first) out += ';';
            out += num(im.t);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::string attainable_csv(const std::vector<AttainableSample>& samples) {
    std::string out = "theta,d,y1,y2,status\n";
    for (const auto& s : samples) {
        out += num(s.theta);
        out += ',';
        out += num(s.d);
        out += ',';
        out += num(s.endpoint.x);
        out += ',';
        out += num(s.endpoint.y);
        out += ',';
        out += to_string(s.status);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const SweepResult& sweep) {
    std::string out = "d,winding,min_dist,flag\n";
    for (const auto& e : sweep.entries) {
        out += num(e.d);
        out += ',';
        if (e.result) {
            out += std::to_string(e.result->winding);
            out += ',';
            out += num(e.result->min_dist_to_origin);
            out += ',';
        } else {
            out += ',';
            if (e.candidate_min_dist) out += num(*e.candidate_min_dist);
            out += ',';
        }
        if (e.candidate_min_dist) {
            out += "solution_candidate";
        } else if (!e.note.empty()) {
            out += "failed";
        }
        out += '\n';
    }
    return out;
}

std::string normal_rays_csv(const NormalRaySolutions& rays) {
    std::string out = "theta,z1,z2,v1,v2,residual,impact_count\n";
    for (const auto& r : rays.rays) {
        out += num(r.theta);
        out += ',';
        out += num(r.z.x);
        out += ',';
        out += num(r.z.y);
        out += ',';
        out += num(r.v.x);
        out += ',';
        out += num(r.v.y);
        out += ',';
        out += num(r.residual);
        out += ',';
        out += std::to_string(r.impact_count);
        out += '\n';
    }
    return out;
}

std::string deviation_csv(const DeviationReport& rep) {
    std::string out = "theta,dev_first_impact,dev_full,status\n";
    for (const auto& s : rep.per_direction) {
        out += num(s.theta);
        out += ',';
        out += num(s.dev_first_impact);
        out += ',';
        out += num(s.dev_full);
        out += ',';
        out += to_string(s.status);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << content;
    if (!out) throw IoError("failed writing output file: " + path);
}

}  // namespace billiard
