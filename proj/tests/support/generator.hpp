#pragma once

#include <cstdint>
#include <random>

#include "portnet/open_net.hpp"

namespace portnet::test {

struct GenOptions {
  std::size_t max_places = 12;
  std::size_t max_labels = 6;
  /// Upper bound on transitions added beyond the backbone.
  std::size_t max_extra = 6;
  /// Adds a send/receive race that closes into a common place.
  bool diamond_motif = false;
  /// Probability that a transition gets a label other than its channel's
  /// or touches a second channel; such nets usually fail validation.
  double noise = 0.0;
};

/// A random open net whose skeleton is an S-net workflow net over
/// p0 (init) .. p<k> (fin). Not necessarily a portnet when noise > 0.
OpenNet random_open_net(std::mt19937_64& rng, const GenOptions& opts);

/// Draws until validate_portnet accepts.
LabeledPortnet random_portnet(std::mt19937_64& rng, GenOptions opts);

/// Draws until the net is also well-formed; gives up after `attempts`.
std::optional<LabeledPortnet> random_well_formed(std::mt19937_64& rng, GenOptions opts,
                                                 std::size_t attempts = 5000);

}  // namespace portnet::test
