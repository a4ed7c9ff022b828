#pragma once

#include <string>
#include <vector>

#include "portnet/open_net.hpp"

namespace portnet {

/// Alternating place/transition sequence starting at a place; consecutive
/// nodes are connected by arcs.
struct PathWitness {
  std::vector<NodeId> nodes;

  bool operator==(const PathWitness&) const = default;
};

/// Result of one structural check. `violations` name the offending nodes;
/// `paths` holds path witnesses for the path-based checks (loop, leg).
struct Verdict {
  bool passed = true;
  std::vector<Diagnostic> violations;
  std::vector<PathWitness> paths;
};

struct LoopOptions {
  /// When set, only a communicating transition of the opposite direction
  /// breaks a path; tau transitions no longer count as "different direction".
  bool strict = false;
};

/// Every place's postset transitions share one direction.
Verdict check_choice(const LabeledPortnet& n);

/// Every path from a split (or the initial place) to a join (or the final
/// place) with at least one transition contains two communicating
/// transitions of different directions.
Verdict check_leg(const LabeledPortnet& n);

/// Distinct transitions in a place's postset carry distinct labels.
Verdict check_observable(const LabeledPortnet& n);

/// Mixed-direction conflicts can be completed to a common successor place
/// with cross-matching labels. Violations list (p, t, t', q, q').
Verdict check_diamond(const LabeledPortnet& n);

/// Paths <p, t, ..., t''> where mu(t'') = l, no interior transition is
/// labeled l, and every transition has the direction of t (or, in strict
/// mode, no transition has the opposite communicating direction). At most one
/// (shortest) witness per terminal transition t''. Throws UsageError unless
/// t is in the postset of p and mu(t) != l.
std::vector<PathWitness> pathset_violations(const LabeledPortnet& n, const NodeId& p,
                                            const NodeId& t, const Label& l,
                                            LoopOptions options = {});

/// For every place and distinct same-direction postset pair (t, t'), no
/// pathset path towards label mu(t') avoids a direction change.
Verdict check_loop(const LabeledPortnet& n, LoopOptions options = {});

struct WellFormedReport {
  Verdict observable_choices;
  Verdict diamond;
  Verdict loop;
  Verdict choice;  // informational
  Verdict leg;     // informational
  bool well_formed = false;
};

WellFormedReport check_well_formed(const LabeledPortnet& n, LoopOptions options = {});

}  // namespace portnet
