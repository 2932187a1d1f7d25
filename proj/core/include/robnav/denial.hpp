/// @file denial.hpp GPS/barometer denial windows simulated by hold-last-value.

#pragma once

#include <vector>

#include "robnav/types.hpp"

namespace robnav {

struct DenialScenario {
  enum class Phase { Training, Validation };

  double start = 0.0;     ///< window start [s]
  double duration = 0.0;  ///< [s]; 0 disables the window
  Phase applies_to = Phase::Training;

  double end() const { return start + duration; }
};

/// Replaces pos/vel of every fix with t in [start, start + duration) by the
/// values of the last fix before the window and marks them held. Throws
/// std::invalid_argument when no fix precedes the window.
std::vector<FixSample> inject_denial(const std::vector<FixSample>& fixes,
                                     const DenialScenario& scenario);

}  // namespace robnav
