#pragma once

#include <vector>

#include "weylflow/flows.hpp"

namespace weylflow {

/// Cubic Hermite interpolant on [0, h] evaluated at u * h, u in [0, 1].
Vec hermite(const Vec& a, const Vec& da, const Vec& b, const Vec& db, double h, double u);

/// u in [0, 1] with hermite(s0, ds0, s1, ds1, h, u) = target for a monotone
/// scalar interpolant.
double invert_hermite(double s0, double ds0, double s1, double ds1, double h, double target);

class Metric;

/// Arc length s(t) = int |v|_g dt at every sample. g is the flow's metric
/// unless length_metric is given.
std::vector<double> arc_length(const Flow& flow, const Trajectory& traj, const Metric* length_metric = nullptr);

/// Resamples a trajectory at uniform arc-length step ds, starting at s = 0.
/// Returned states carry t = s and the unit direction v / |v|_g (flow metric);
/// positions and velocities are cubic Hermite interpolants using the flow's
/// rhs. length_metric, when given, measures s instead of the flow metric.
Trajectory resample_by_arc_length(const Flow& flow, const Trajectory& traj, double ds, double s_max = -1.0,
                                  const Metric* length_metric = nullptr);

/// Positions of all samples.
std::vector<Vec> positions(const Trajectory& traj);

/// Symmetric Hausdorff distance between two polylines (point to segment).
double hausdorff_distance(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace weylflow
