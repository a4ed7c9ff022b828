#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "portnet/mirror.hpp"
#include "portnet/net.hpp"

namespace portnet {

/// Dense marking: token count per place index of a CompiledNet.
using State = std::vector<std::uint32_t>;

/// Index-based copy of a net for fast firing. Places and transitions are
/// numbered in ascending id order.
class CompiledNet {
 public:
  explicit CompiledNet(const LabeledNet& net);

  std::size_t place_count() const noexcept { return places_.size(); }
  std::size_t transition_count() const noexcept { return transitions_.size(); }
  const NodeId& place(std::size_t i) const { return places_.at(i); }
  const NodeId& transition(std::size_t i) const { return transitions_.at(i); }
  /// Throws NotFound for unknown ids.
  std::size_t place_index(const NodeId& p) const;
  std::size_t transition_index(const NodeId& t) const;

  const std::vector<std::uint32_t>& pre(std::size_t t) const { return pre_[t]; }
  const std::vector<std::uint32_t>& post(std::size_t t) const { return post_[t]; }

  bool enabled(const State& s, std::size_t t) const;
  /// Assumes `enabled(s, t)`.
  State fire(const State& s, std::size_t t) const;

  State encode(const Marking& m) const;
  Marking decode(const State& s) const;

 private:
  std::vector<NodeId> places_;
  std::vector<NodeId> transitions_;
  std::map<NodeId, std::size_t> place_index_;
  std::map<NodeId, std::size_t> transition_index_;
  std::vector<std::vector<std::uint32_t>> pre_;
  std::vector<std::vector<std::uint32_t>> post_;
};

struct ExplorationCaps {
  std::size_t max_states = 100000;
  std::uint32_t max_tokens_per_place = 8;
};

enum class ExplorationStatus { complete, state_bound_exceeded, token_bound_exceeded };

std::string_view to_string(ExplorationStatus s);

struct TraceStep {
  NodeId transition;
  Label label;
  Direction direction = Direction::tau;
  std::string owner;
};

/// A firing sequence from m0 with per-step annotations taken from the
/// system's transition tags.
struct Trace {
  std::vector<TraceStep> steps;

  std::vector<NodeId> firing() const;
};

Trace annotate(const NetSystem& sys, const std::vector<NodeId>& firing);

/// Fires the trace from sys.m0; throws NotEnabled if it does not replay.
Marking replay(const NetSystem& sys, const Trace& trace);

struct Edge {
  std::size_t from;
  NodeId transition;
  std::size_t to;
};

/// Breadth-first marking graph. State 0 is m0; states are numbered in
/// discovery order, so lower numbers have shorter traces.
class ReachabilityGraph {
 public:
  const NetSystem& system() const noexcept { return sys_; }
  const CompiledNet& compiled() const noexcept { return net_; }

  std::size_t root() const noexcept { return 0; }
  std::size_t size() const noexcept { return states_.size(); }
  const State& state(std::size_t i) const { return states_.at(i); }
  Marking marking(std::size_t i) const { return net_.decode(states_.at(i)); }
  std::optional<std::size_t> find(const Marking& m) const;

  /// (transition index, target state) pairs in ascending transition order.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& successors(std::size_t i) const {
    return succ_.at(i);
  }
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;

  ExplorationStatus status() const noexcept { return status_; }
  bool complete() const noexcept { return status_ == ExplorationStatus::complete; }
  /// For token_bound_exceeded: the place over the cap and the state holding it.
  const std::optional<NodeId>& offending_place() const noexcept { return offending_place_; }
  const std::optional<std::size_t>& offending_state() const noexcept { return offending_state_; }

  /// Shortest firing sequence from the root.
  Trace trace_to(std::size_t i) const;

  std::uint32_t tokens(std::size_t i, const NodeId& p) const {
    return states_.at(i)[net_.place_index(p)];
  }

 private:
  friend ReachabilityGraph explore(const NetSystem& sys, ExplorationCaps caps);
  ReachabilityGraph(NetSystem sys, CompiledNet net) : sys_(std::move(sys)), net_(std::move(net)) {}

  NetSystem sys_;
  CompiledNet net_;
  std::vector<State> states_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> succ_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> parent_;
  ExplorationStatus status_ = ExplorationStatus::complete;
  std::optional<NodeId> offending_place_;
  std::optional<std::size_t> offending_state_;
};

/// Explores from sys.m0 until closure or a cap is hit; a capped graph keeps
/// what was found and reports the reason in status().
ReachabilityGraph explore(const NetSystem& sys, ExplorationCaps caps = {});

/// Outcome of a state-space property: when violated, the first offending
/// state in discovery order and a shortest trace to it.
struct StateVerdict {
  bool ok = true;
  std::optional<std::size_t> state;
  Trace trace;
};

/// Every reachable state can reach mf. Throws Inconclusive on a truncated graph.
StateVerdict check_weak_termination(const ReachabilityGraph& g, const Marking& mf);

/// Dead states other than mf, each with a shortest trace.
std::vector<StateVerdict> find_deadlocks(const ReachabilityGraph& g, const Marking& mf);

/// Whenever fN and fM are both marked, the marking is exactly fN + fM.
StateVerdict check_proper_completion(const ReachabilityGraph& g, const NodeId& fN, const NodeId& fM);

/// First state (in discovery order) satisfying `pred`.
std::optional<std::size_t> find_state(const ReachabilityGraph& g,
                                      const std::function<bool(const Marking&)>& pred);

enum class Relation { eq, leq };

/// sum(coef * m(p)) = bound, or <= bound.
struct LinearInvariant {
  std::string name;
  std::map<NodeId, long long> terms;
  Relation relation = Relation::eq;
  long long bound = 0;

  bool holds(const Marking& m) const;
};

struct InvariantVerdict {
  std::string name;
  bool holds = true;
  std::optional<std::size_t> first_violation;
};

std::vector<InvariantVerdict> check_linear_invariants(const ReachabilityGraph& g,
                                                      const std::vector<LinearInvariant>& invs);

enum class Side { server, client };

struct CommutationOptions {
  /// Upper bound on receive sequences enumerated from one state.
  std::size_t max_sequences = 200000;
};

/// First failure of the commutation checks. `misuse` is set when the tags or
/// the partition contradict the net (e.g. a send tagged as a receive);
/// `property` then is empty.
struct CommutationVerdict {
  bool ok = true;
  bool misuse = false;
  std::string property;
  std::string detail;
  std::optional<std::size_t> state;
  std::vector<NodeId> sequence;
};

/// Checks at every state of the complete graph:
///  swap       - server receives then client receives also run client-first;
///  send-stays - a send of one side stays enabled across receives of the
///               other side, and both orders end in the same marking;
///  diamond    - after a server (or client) send t and that side's receive
///               sequence, a same-labeled send and a label-matching receive
///               sequence close the square.
/// Directions come from g.system().tags, sides from `partition`.
CommutationVerdict check_commutation(const ReachabilityGraph& g,
                                     const std::map<NodeId, Side>& partition,
                                     CommutationOptions options = {});

/// Side of each transition, read from tag owners.
std::map<NodeId, Side> partition_by_owner(const NetSystem& sys, const std::string& server_owner);

/// From every state, server receives followed by client receives reach a
/// marking {p, phi(p)} for some client place p. Node ids of the composition
/// must be those of server and client.
StateVerdict check_alignment(const ReachabilityGraph& g, const LabeledPortnet& server,
                             const LabeledPortnet& client, const MirrorMap& phi);

/// From every reachable marking {p, phi(p)}, following a shortest client
/// path to fin and firing each step together with its server mirror (send
/// first) reaches fin_server + fin_client.
StateVerdict check_homing(const ReachabilityGraph& g, const LabeledPortnet& server,
                          const LabeledPortnet& client, const MirrorMap& phi);

}  // namespace portnet
