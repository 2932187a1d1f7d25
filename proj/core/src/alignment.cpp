#include "robnav/alignment.hpp"

#include <stdexcept>

namespace robnav {

std::vector<AlignedMeasurement> zoh_align(const std::vector<FixSample>& fixes,
                                          const std::vector<double>& imu_times) {
  if (fixes.empty()) {
    throw std::invalid_argument("zoh_align: no fixes to align");
  }

  std::vector<AlignedMeasurement> out;
  out.reserve(imu_times.size());

  std::size_t j = 0;  // index of the fix currently held
  for (const double t : imu_times) {
    while (j + 1 < fixes.size() && fixes[j + 1].t <= t) {
      ++j;
    }
    const FixSample& fix = fixes[j];
    AlignedMeasurement m;
    m.t = t;
    m.y << fix.pos, fix.vel;
    // A fix from the future is not causal; it is used only to have a value at
    // all and is flagged like a held sample.
    m.held = fix.held || fix.t > t;
    out.push_back(m);
  }
  return out;
}

std::vector<SyncedSample> make_synced_stream(const std::vector<ImuSample>& imu,
                                             const std::vector<AlignedMeasurement>& aligned) {
  if (imu.size() != aligned.size()) {
    throw std::invalid_argument("make_synced_stream: stream sizes differ");
  }
  std::vector<SyncedSample> out;
  out.reserve(imu.size());
  for (std::size_t i = 0; i < imu.size(); ++i) {
    out.push_back({imu[i], aligned[i]});
  }
  return out;
}

}  // namespace robnav
