#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "portnet/bag.hpp"

namespace portnet {

/// Transition label: a non-empty identifier (letters, digits, underscore).
class Label {
 public:
  explicit Label(std::string text);

  static bool is_valid(std::string_view text);

  const std::string& str() const noexcept { return text_; }

  auto operator<=>(const Label&) const = default;

 private:
  std::string text_;
};

using NodeId = std::string;
using Arc = std::pair<NodeId, NodeId>;
using Marking = Bag<NodeId>;

/// Communication direction of a transition relative to its open net.
enum class Direction { send, receive, tau };

std::string_view to_string(Direction d);

/// A plain (unweighted) Petri net with a total transition labeling.
///
/// Places and transitions share one identifier namespace. Arcs always connect
/// a place with a transition; both endpoints must already exist.
class LabeledNet {
 public:
  void add_place(const NodeId& p);
  void add_transition(const NodeId& t, Label label);
  void add_arc(const NodeId& from, const NodeId& to);

  void remove_arc(const NodeId& from, const NodeId& to);
  /// Removes the node together with every arc touching it.
  void remove_node(const NodeId& x);
  void relabel(const NodeId& t, Label label);

  const std::set<NodeId>& places() const noexcept { return places_; }
  const std::set<NodeId>& transitions() const noexcept { return transitions_; }
  const std::set<Arc>& arcs() const noexcept { return arcs_; }
  const std::map<NodeId, Label>& labels() const noexcept { return labels_; }

  bool is_place(const NodeId& x) const { return places_.contains(x); }
  bool is_transition(const NodeId& x) const { return transitions_.contains(x); }
  bool has_node(const NodeId& x) const { return is_place(x) || is_transition(x); }
  bool has_arc(const NodeId& from, const NodeId& to) const {
    return arcs_.contains({from, to});
  }

  /// Throws NotFound for unknown ids.
  const Label& label(const NodeId& t) const;
  const std::set<NodeId>& preset(const NodeId& x) const;
  const std::set<NodeId>& postset(const NodeId& x) const;

  std::size_t node_count() const { return places_.size() + transitions_.size(); }

  bool operator==(const LabeledNet& other) const;

 private:
  std::set<NodeId> places_;
  std::set<NodeId> transitions_;
  std::set<Arc> arcs_;
  std::map<NodeId, Label> labels_;
  std::map<NodeId, std::set<NodeId>> pre_;
  std::map<NodeId, std::set<NodeId>> post_;
};

/// Throws NotFound if the marking mentions a place the net does not have.
void require_valid_marking(const LabeledNet& net, const Marking& m);

/// Transitions t with preset(t) <= m.
std::set<NodeId> enabled(const LabeledNet& net, const Marking& m);
bool is_enabled(const LabeledNet& net, const Marking& m, const NodeId& t);

/// m' = m - preset(t) + postset(t). Throws NotEnabled if t is not enabled.
Marking fire(const LabeledNet& net, const Marking& m, const NodeId& t);

struct StructureReport {
  bool is_s_net = false;
  bool is_wfn = false;
  std::optional<NodeId> initial_place;
  std::optional<NodeId> final_place;
  bool is_strongly_connected = false;
  std::set<NodeId> splits;
  std::set<NodeId> joins;
};

StructureReport analyze_structure(const LabeledNet& net);

/// Nodes reachable from `from` along arcs (including `from` itself).
std::set<NodeId> forward_reachable(const LabeledNet& net, const NodeId& from);
/// Nodes from which `to` is reachable (including `to` itself).
std::set<NodeId> backward_reachable(const LabeledNet& net, const NodeId& to);

using NodeMap = std::map<NodeId, NodeId>;

/// Searches for a sort-, label- and arc-preserving bijection from `a` onto `b`.
/// Exponential backtracking with degree/label pruning; meant for small nets.
std::optional<NodeMap> find_isomorphism(const LabeledNet& a, const LabeledNet& b);

/// Owner and direction of a transition inside a composed system.
struct TransitionTag {
  std::string owner;
  Direction direction = Direction::tau;
};

/// A net with an initial and a final marking. `tags` and `channels` are
/// optional metadata recorded by composition: which component owns each
/// transition, and which places were interface places before fusion.
struct NetSystem {
  LabeledNet net;
  Marking m0;
  Marking mf;
  std::map<NodeId, TransitionTag> tags;
  std::set<NodeId> channels;
};

}  // namespace portnet
