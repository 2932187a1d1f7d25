/// @file alignment.hpp Causal zero-order-hold resampling of fixes onto the IMU clock.

#pragma once

#include <vector>

#include "robnav/types.hpp"

namespace robnav {

/// For each IMU timestamp t, emits the most recent fix with fix.t <= t as a
/// [p; v] 6-vector, carrying the source fix's held flag. IMU timestamps ahead
/// of the first fix receive the first fix, flagged held. Throws
/// std::invalid_argument on an empty fix sequence.
std::vector<AlignedMeasurement> zoh_align(const std::vector<FixSample>& fixes,
                                          const std::vector<double>& imu_times);

/// Zips an IMU stream with its aligned measurements (sizes must match).
std::vector<SyncedSample> make_synced_stream(const std::vector<ImuSample>& imu,
                                             const std::vector<AlignedMeasurement>& aligned);

}  // namespace robnav
