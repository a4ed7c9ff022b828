#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "portnet/diagnostic.hpp"
#include "portnet/net.hpp"

namespace portnet {

/// An open Petri net: a labeled net whose places are split into internal
/// places P, input places I and output places O, with distinguished initial
/// and final internal places.
///
/// Every interface place carries the label of the message it transports.
/// Structural OPN conditions (empty preset of inputs, empty postset of
/// outputs, no transition both consuming an input and producing an output)
/// are not enforced while building; `open_net_diagnostics` reports them.
class OpenNet {
 public:
  void add_place(const NodeId& p);
  void add_input(const NodeId& p, Label label);
  void add_output(const NodeId& p, Label label);
  void add_transition(const NodeId& t, Label label);
  void add_arc(const NodeId& from, const NodeId& to);
  void add_init(const NodeId& p);
  void add_fin(const NodeId& p);

  void remove_arc(const NodeId& from, const NodeId& to);
  void remove_node(const NodeId& x);

  /// The underlying Petri net over P u I u O.
  const LabeledNet& net() const noexcept { return net_; }

  const std::set<NodeId>& places() const noexcept { return places_; }
  const std::set<NodeId>& inputs() const noexcept { return inputs_; }
  const std::set<NodeId>& outputs() const noexcept { return outputs_; }
  const std::set<NodeId>& transitions() const noexcept { return net_.transitions(); }
  const std::set<NodeId>& init() const noexcept { return init_; }
  const std::set<NodeId>& fin() const noexcept { return fin_; }
  const std::set<Arc>& arcs() const noexcept { return net_.arcs(); }

  bool is_internal(const NodeId& x) const { return places_.contains(x); }
  bool is_input(const NodeId& x) const { return inputs_.contains(x); }
  bool is_output(const NodeId& x) const { return outputs_.contains(x); }
  bool is_interface(const NodeId& x) const { return is_input(x) || is_output(x); }
  bool is_transition(const NodeId& x) const { return net_.is_transition(x); }
  bool has_node(const NodeId& x) const { return net_.has_node(x); }

  const Label& label(const NodeId& t) const { return net_.label(t); }
  /// Label of the message carried by an interface place.
  const Label& channel_label(const NodeId& p) const;
  const std::map<NodeId, Label>& channel_labels() const noexcept { return channel_labels_; }

  const std::set<NodeId>& preset(const NodeId& x) const { return net_.preset(x); }
  const std::set<NodeId>& postset(const NodeId& x) const { return net_.postset(x); }

  /// Interface places adjacent to a transition.
  std::set<NodeId> interface_of(const NodeId& t) const;

  bool operator==(const OpenNet& other) const;

 private:
  LabeledNet net_;
  std::set<NodeId> places_;
  std::set<NodeId> inputs_;
  std::set<NodeId> outputs_;
  std::set<NodeId> init_;
  std::set<NodeId> fin_;
  std::map<NodeId, Label> channel_labels_;
};

/// send iff the postset meets O; receive iff the preset meets I; tau otherwise.
Direction direction(const OpenNet& n, const NodeId& t);

/// Drops interface places and their arcs.
OpenNet skeleton(const OpenNet& n);

/// Label given to closure transitions.
const Label& closure_label();

/// Adds a fresh tau transition from fin to init. Requires the skeleton to be
/// an S-net workflow net; throws StructureError otherwise.
OpenNet closure(const OpenNet& n, std::optional<NodeId> transition_id = std::nullopt);

/// Violations of the open-net conditions (codes OPN-1 .. OPN-4).
std::vector<Diagnostic> open_net_diagnostics(const OpenNet& n);

/// Violations of the labeled-portnet class conditions (codes LP-COND-1 ..
/// LP-COND-4); empty iff `n` is a labeled portnet.
std::vector<Diagnostic> validate_portnet(const OpenNet& n);

/// An open net that passed `validate_portnet`. Immutable.
class LabeledPortnet {
 public:
  /// Throws PortnetError carrying the diagnostics if `n` is not a portnet.
  static LabeledPortnet from(OpenNet n);

  const OpenNet& open() const noexcept { return net_; }
  const NodeId& init_place() const noexcept { return *net_.init().begin(); }
  const NodeId& fin_place() const noexcept { return *net_.fin().begin(); }
  Direction direction(const NodeId& t) const { return portnet::direction(net_, t); }

 private:
  explicit LabeledPortnet(OpenNet n) : net_(std::move(n)) {}
  OpenNet net_;
};

/// Diagnostics (codes COMP-1, COMP-2) explaining why two nets are not
/// composable; empty iff they are.
std::vector<Diagnostic> composable(const OpenNet& a, const OpenNet& b);

/// Fuses a non-empty set of pairwise composable nets in one step. Shared
/// interface places become internal places. Not associative.
OpenNet compose(const std::vector<OpenNet>& nets);

/// Applies `rename` to every node id (places, interface places, transitions).
OpenNet rename_nodes(const OpenNet& n, const std::function<NodeId(const NodeId&)>& rename);

/// Prefixes internal places and transitions; interface places keep their ids.
OpenNet prefix_internal(const OpenNet& n, const std::string& prefix);

/// A named participant of a composed system.
struct Component {
  std::string name;
  OpenNet net;
};

/// Composes the components and records, for each transition, its owner and
/// its direction relative to the owning component. Unless given, m0 is the
/// sum of the components' init places and mf the sum of their fin places.
NetSystem compose_system(const std::vector<Component>& components,
                         std::optional<Marking> m0 = std::nullopt,
                         std::optional<Marking> mf = std::nullopt);

/// The system (skeleton, {init}, {fin}) of an open net.
NetSystem skeleton_system(const OpenNet& n);

}  // namespace portnet
