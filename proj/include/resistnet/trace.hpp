#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace resistnet {

/// Samples recorded along one simulated sample path.
///
/// A path that stops early (error below the finite-convergence floor) has
/// fewer samples than requested; aggregation holds its last sample.
struct PathTrace {
  std::vector<std::size_t> events;  // event index of each sample, first is 0
  std::vector<double> rel_error;
  std::vector<double> comm;        // cumulative scalar transfers (D-RK only)
  std::vector<double> time;        // Poisson arrival time (timed runs only)
  std::vector<double> lobe_left;   // lobe means (gossip on barbell only)
  std::vector<double> lobe_right;
  std::optional<std::size_t> floor_event;  // first event with rel_error below the floor
  std::size_t events_run = 0;
  bool absolute_metric = false;  // error is absolute because the target is zero

  /// First sampled event with rel_error <= threshold.
  std::optional<std::size_t> first_below(double threshold) const {
    for (std::size_t k = 0; k < rel_error.size(); ++k) {
      if (rel_error[k] <= threshold) return events[k];
    }
    return std::nullopt;
  }
};

}  // namespace resistnet
