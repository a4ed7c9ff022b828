#include <deque>
#include <unordered_map>

#include "portnet/verify.hpp"

namespace portnet {

CompiledNet::CompiledNet(const LabeledNet& net)
    : places_(net.places().begin(), net.places().end()),
      transitions_(net.transitions().begin(), net.transitions().end()) {
  for (std::size_t i = 0; i < places_.size(); ++i) place_index_[places_[i]] = i;
  for (std::size_t i = 0; i < transitions_.size(); ++i) transition_index_[transitions_[i]] = i;
  pre_.resize(transitions_.size());
  post_.resize(transitions_.size());
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    for (const auto& p : net.preset(transitions_[i]))
      pre_[i].push_back(static_cast<std::uint32_t>(place_index_.at(p)));
    for (const auto& p : net.postset(transitions_[i]))
      post_[i].push_back(static_cast<std::uint32_t>(place_index_.at(p)));
  }
}

std::size_t CompiledNet::place_index(const NodeId& p) const {
  auto it = place_index_.find(p);
  if (it == place_index_.end()) throw NotFound("place '" + p + "' does not exist");
  return it->second;
}

std::size_t CompiledNet::transition_index(const NodeId& t) const {
  auto it = transition_index_.find(t);
  if (it == transition_index_.end()) throw NotFound("transition '" + t + "' does not exist");
  return it->second;
}

bool CompiledNet::enabled(const State& s, std::size_t t) const {
  for (auto p : pre_[t])
    if (s[p] == 0) return false;
  return true;
}

State CompiledNet::fire(const State& s, std::size_t t) const {
  State r = s;
  for (auto p : pre_[t]) --r[p];
  for (auto p : post_[t]) ++r[p];
  return r;
}

State CompiledNet::encode(const Marking& m) const {
  State s(places_.size(), 0);
  for (const auto& [p, n] : m) s[place_index(p)] = static_cast<std::uint32_t>(n);
  return s;
}

Marking CompiledNet::decode(const State& s) const {
  Marking m;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > 0) m.insert(places_[i], s[i]);
  return m;
}

std::string_view to_string(ExplorationStatus s) {
  switch (s) {
    case ExplorationStatus::complete:
      return "complete";
    case ExplorationStatus::state_bound_exceeded:
      return "state bound exceeded";
    case ExplorationStatus::token_bound_exceeded:
      return "token bound exceeded";
  }
  return "?";
}

std::vector<NodeId> Trace::firing() const {
  std::vector<NodeId> out;
  for (const auto& s : steps) out.push_back(s.transition);
  return out;
}

Trace annotate(const NetSystem& sys, const std::vector<NodeId>& firing) {
  Trace tr;
  for (const auto& t : firing) {
    TraceStep step{t, sys.net.label(t), Direction::tau, ""};
    if (auto it = sys.tags.find(t); it != sys.tags.end()) {
      step.direction = it->second.direction;
      step.owner = it->second.owner;
    }
    tr.steps.push_back(std::move(step));
  }
  return tr;
}

Marking replay(const NetSystem& sys, const Trace& trace) {
  Marking m = sys.m0;
  for (const auto& s : trace.steps) m = fire(sys.net, m, s.transition);
  return m;
}

namespace {

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : s) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

void require_complete(const ReachabilityGraph& g) {
  if (!g.complete())
    throw Inconclusive("state space was truncated (" + std::string(to_string(g.status())) + ")");
}

StateVerdict violation(const ReachabilityGraph& g, std::size_t i) {
  return StateVerdict{false, i, g.trace_to(i)};
}

}  // namespace

std::optional<std::size_t> ReachabilityGraph::find(const Marking& m) const {
  State s;
  try {
    s = net_.encode(m);
  } catch (const NotFound&) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == s) return i;
  return std::nullopt;
}

std::size_t ReachabilityGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

std::vector<Edge> ReachabilityGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < succ_.size(); ++i)
    for (const auto& [t, j] : succ_[i]) out.push_back({i, net_.transition(t), j});
  return out;
}

Trace ReachabilityGraph::trace_to(std::size_t i) const {
  std::vector<NodeId> rev;
  for (std::size_t cur = i; parent_.at(cur).first != kNone; cur = parent_[cur].first)
    rev.push_back(net_.transition(parent_[cur].second));
  return annotate(sys_, {rev.rbegin(), rev.rend()});
}

ReachabilityGraph explore(const NetSystem& sys, ExplorationCaps caps) {
  if (caps.max_states < 1 || caps.max_tokens_per_place < 1)
    throw UsageError("exploration caps must be at least 1");
  require_valid_marking(sys.net, sys.m0);
  ReachabilityGraph g(sys, CompiledNet(sys.net));
  const CompiledNet& net = g.net_;

  std::unordered_map<State, std::uint32_t, StateHash> index;
  auto add = [&](State s, std::uint32_t from, std::uint32_t t) {
    const auto id = static_cast<std::uint32_t>(g.states_.size());
    index.emplace(s, id);
    g.states_.push_back(std::move(s));
    g.succ_.emplace_back();
    g.parent_.emplace_back(from, t);
    return id;
  };
  auto over_cap = [&](const State& s) -> std::optional<std::size_t> {
    for (std::size_t p = 0; p < s.size(); ++p)
      if (s[p] > caps.max_tokens_per_place) return p;
    return std::nullopt;
  };

  add(net.encode(sys.m0), kNone, kNone);
  if (auto p = over_cap(g.states_[0])) {
    g.status_ = ExplorationStatus::token_bound_exceeded;
    g.offending_place_ = net.place(*p);
    g.offending_state_ = 0;
    return g;
  }

  for (std::size_t head = 0; head < g.states_.size(); ++head) {
    for (std::size_t t = 0; t < net.transition_count(); ++t) {
      if (!net.enabled(g.states_[head], t)) continue;
      State next = net.fire(g.states_[head], t);
      auto it = index.find(next);
      std::uint32_t target;
      if (it != index.end()) {
        target = it->second;
      } else {
        if (auto p = over_cap(next)) {
          target = add(std::move(next), static_cast<std::uint32_t>(head), static_cast<std::uint32_t>(t));
          g.succ_[head].emplace_back(static_cast<std::uint32_t>(t), target);
          g.status_ = ExplorationStatus::token_bound_exceeded;
          g.offending_place_ = net.place(*p);
          g.offending_state_ = target;
          return g;
        }
        if (g.states_.size() >= caps.max_states) {
          g.status_ = ExplorationStatus::state_bound_exceeded;
          return g;
        }
        target = add(std::move(next), static_cast<std::uint32_t>(head), static_cast<std::uint32_t>(t));
      }
      g.succ_[head].emplace_back(static_cast<std::uint32_t>(t), target);
    }
  }
  return g;
}

StateVerdict check_weak_termination(const ReachabilityGraph& g, const Marking& mf) {
  require_complete(g);
  const auto target = g.find(mf);
  if (!target) return violation(g, g.root());

  std::vector<std::vector<std::uint32_t>> pred(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const auto& [t, j] : g.successors(i)) pred[j].push_back(static_cast<std::uint32_t>(i));
  std::vector<bool> reaches(g.size(), false);
  std::deque<std::size_t> queue{*target};
  reaches[*target] = true;
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    for (auto i : pred[j])
      if (!reaches[i]) {
        reaches[i] = true;
        queue.push_back(i);
      }
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!reaches[i]) return violation(g, i);
  return {};
}

std::vector<StateVerdict> find_deadlocks(const ReachabilityGraph& g, const Marking& mf) {
  require_complete(g);
  const State final_state = [&] {
    try {
      return g.compiled().encode(mf);
    } catch (const NotFound&) {
      return State{};
    }
  }();
  std::vector<StateVerdict> out;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.successors(i).empty() && g.state(i) != final_state) out.push_back(violation(g, i));
  return out;
}

StateVerdict check_proper_completion(const ReachabilityGraph& g, const NodeId& fN, const NodeId& fM) {
  require_complete(g);
  Marking expected;
  expected.insert(fN);
  expected.insert(fM);
  const std::size_t a = g.compiled().place_index(fN);
  const std::size_t b = g.compiled().place_index(fM);
  const State want = g.compiled().encode(expected);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const State& s = g.state(i);
    if (s[a] >= 1 && s[b] >= 1 && s != want) return violation(g, i);
  }
  return {};
}

std::optional<std::size_t> find_state(const ReachabilityGraph& g,
                                      const std::function<bool(const Marking&)>& pred) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (pred(g.marking(i))) return i;
  return std::nullopt;
}

bool LinearInvariant::holds(const Marking& m) const {
  long long sum = 0;
  for (const auto& [p, c] : terms) sum += c * static_cast<long long>(m.count(p));
  return relation == Relation::eq ? sum == bound : sum <= bound;
}

std::vector<InvariantVerdict> check_linear_invariants(const ReachabilityGraph& g,
                                                      const std::vector<LinearInvariant>& invs) {
  require_complete(g);
  std::vector<InvariantVerdict> out;
  for (const auto& inv : invs) {
    if (inv.terms.empty()) throw UsageError("invariant '" + inv.name + "' has no terms");
    std::vector<std::pair<std::size_t, long long>> dense;
    for (const auto& [p, c] : inv.terms) dense.emplace_back(g.compiled().place_index(p), c);
    InvariantVerdict v{inv.name, true, std::nullopt};
    for (std::size_t i = 0; i < g.size() && v.holds; ++i) {
      long long sum = 0;
      for (const auto& [p, c] : dense) sum += c * static_cast<long long>(g.state(i)[p]);
      const bool ok = inv.relation == Relation::eq ? sum == inv.bound : sum <= inv.bound;
      if (!ok) {
        v.holds = false;
        v.first_violation = i;
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace portnet
