#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "subriem/ccmetric/fields.hpp"

namespace subriem::ccmetric {

struct DistanceOptions {
    int segments = 32;
    int multistart = 8;
    std::uint64_t seed = 0;
    /// Endpoint tolerance in the Koranyi gauge, relative to the gauge of the target.
    double tol = 1e-6;
    /// Penalty weights are escalated geometrically from penalty_start to penalty_end.
    double penalty_start = 10.0;
    double penalty_end = 1e5;
    /// Purely horizontal displacements are answered by the straight segment.
    bool horizontal_shortcut = true;
};

struct DistanceResult {
    double value = 0.0;
    PathControls controls;
    double endpoint_residual = 0.0;
    bool converged = false;
};

/// Upper bound on d_CC(x, y) from the best of several constant-horizon energy minimizations.
DistanceResult cc_distance(const HorizontalFields& fields, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const DistanceOptions& opts = {});

struct KoranyiBounds {
    double c_hat = 0.0;  // min d_K / d_CC
    double C_hat = 0.0;  // max d_K / d_CC
    int used = 0;
    int skipped_equal = 0;
    int nonconverged = 0;
};

using PointPair = std::pair<Eigen::VectorXd, Eigen::VectorXd>;

/// Uniform pairs in the box |x_i| <= half_width.
std::vector<PointPair> random_pairs(int dim, int count, double half_width, std::uint64_t seed);

KoranyiBounds koranyi_bounds(const HorizontalFields& fields, const std::vector<PointPair>& samples,
                             const DistanceOptions& opts = {});

} // namespace subriem::ccmetric
