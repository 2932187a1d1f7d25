/// @file metrics.hpp Position prediction-error metric over the post-reacquisition window.

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace robnav {

struct RmseBreakdown {
  double total = 0.0;  ///< north + east + down
  double north = 0.0;
  double east = 0.0;
  double down = 0.0;
};

/// Per-axis root mean square position error summed over the three axes,
/// evaluated over indices K+1..T of two equally long position sequences
/// (truth and prediction, index 0 aligned). Requires 0 <= K < T < size.
/// Throws std::invalid_argument on mismatched lengths or a bad window.
RmseBreakdown rmse_bar(const std::vector<Eigen::Vector3d>& truth,
                       const std::vector<Eigen::Vector3d>& predicted, std::size_t K,
                       std::size_t T);

}  // namespace robnav
