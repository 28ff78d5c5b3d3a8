#pragma once

#include <string>

#include "billiard/degree.hpp"
#include "billiard/integrator.hpp"
#include "billiard/shooting.hpp"

namespace billiard {

/// CSV exporters. Numbers are printed with 17 significant digits so that
/// round-trips are lossless; headers are fixed and documented in README.

/// Header: t,x1[,x2],v1[,v2],segment
std::string trajectory_csv(const Trajectory& traj, int samples_per_unit_time = 1000);

/// Header: t,point1[,point2],vin1[,vin2],vout1[,vout2],side
std::string impacts_csv(const Trajectory& traj);

/// Header: v,endpoint,impact_count,status
std::string shots_csv(const std::vector<ShotResult>& shots);

/// Header: v,residual,impact_count,impact_times  (times ';'-joined)
std::string solutions_csv(const std::vector<DirichletSolution>& sols);

/// Header: theta,d,y1,y2,status
std::string attainable_csv(const std::vector<AttainableSample>& samples);

/// Header: d,winding,min_dist,flag
std::string sweep_csv(const SweepResult& sweep);

/// Header: theta,z1,z2,v1,v2,residual,impact_count
std::string normal_rays_csv(const NormalRaySolutions& rays);

/// Header: theta,dev_first_impact,dev_full,status
std::string deviation_csv(const DeviationReport& rep);

void write_file(const std::string& path, const std::string& content);

}  // namespace billiard
