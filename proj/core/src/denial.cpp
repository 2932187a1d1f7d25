#include "robnav/denial.hpp"

#include <stdexcept>

namespace robnav {

std::vector<FixSample> inject_denial(const std::vector<FixSample>& fixes,
                                     const DenialScenario& scenario) {
  std::vector<FixSample> out = fixes;
  if (scenario.duration <= 0.0) {
    return out;
  }
  if (fixes.empty() || scenario.start < fixes.front().t) {
    throw std::invalid_argument("inject_denial: denial window starts before the first fix");
  }

  // Fix streams are time sorted; the last sample ahead of the window is the
  // value every in-window sample freezes to.
  std::size_t holder = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].t < scenario.start) {
      holder = i;
      continue;
    }
    if (out[i].t >= scenario.end()) {
      break;
    }
    if (fixes[holder].t >= scenario.start) {
      throw std::invalid_argument("inject_denial: no fix precedes the denial window");
    }
    out[i].pos = fixes[holder].pos;
    out[i].vel = fixes[holder].vel;
    out[i].held = true;
  }
  return out;
}

}  // namespace robnav
