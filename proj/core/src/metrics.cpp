#include "robnav/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace robnav {

RmseBreakdown rmse_bar(const std::vector<Eigen::Vector3d>& truth,
                       const std::vector<Eigen::Vector3d>& predicted, std::size_t K,
                       std::size_t T) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("rmse_bar: sequence lengths differ");
  }
  if (K >= T || T >= truth.size()) {
    throw std::invalid_argument("rmse_bar: need K < T < sequence length");
  }

  Eigen::Vector3d sq_sum = Eigen::Vector3d::Zero();
  for (std::size_t t = K + 1; t <= T; ++t) {
    const Eigen::Vector3d err = truth[t] - predicted[t];
    sq_sum += err.cwiseProduct(err);
  }
  const double denom = static_cast<double>(T - K);

  RmseBreakdown out;
  out.north = std::sqrt(sq_sum(0) / denom);
  out.east = std::sqrt(sq_sum(1) / denom);
  out.down = std::sqrt(sq_sum(2) / denom);
  out.total = out.north + out.east + out.down;
  return out;
}

}  // namespace robnav
