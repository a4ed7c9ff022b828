#include <deque>
#include <set>

#include "portnet/verify.hpp"

namespace portnet {

namespace {

using Seq = std::vector<std::size_t>;

struct Groups {
  // Indexed by Side: receives and sends of each side.
  std::vector<std::size_t> receives[2];
  std::vector<std::size_t> sends[2];
};

int side_index(Side s) { return s == Side::server ? 0 : 1; }

// Enumerates every executable sequence over `allowed` from `s`, the empty
// one included. Receives consume channel tokens, so the recursion ends.
class SequenceEnumerator {
 public:
  SequenceEnumerator(const CompiledNet& net, std::size_t cap) : net_(net), cap_(cap) {}

  template <class F>
  void run(const State& s, const std::vector<std::size_t>& allowed, F&& visit) {
    count_ = 0;
    Seq seq;
    go(s, allowed, seq, visit);
  }

 private:
  template <class F>
  void go(const State& s, const std::vector<std::size_t>& allowed, Seq& seq, F& visit) {
    if (++count_ > cap_) throw Inconclusive("too many receive sequences from one state");
    visit(static_cast<const Seq&>(seq), s);
    for (auto t : allowed) {
      if (!net_.enabled(s, t)) continue;
      seq.push_back(t);
      go(net_.fire(s, t), allowed, seq, visit);
      seq.pop_back();
    }
  }

  const CompiledNet& net_;
  std::size_t cap_;
  std::size_t count_ = 0;
};

std::optional<State> run_seq(const CompiledNet& net, State s, const Seq& seq) {
  for (auto t : seq) {
    if (!net.enabled(s, t)) return std::nullopt;
    s = net.fire(s, t);
  }
  return s;
}

std::vector<NodeId> names(const CompiledNet& net, const Seq& seq) {
  std::vector<NodeId> out;
  for (auto t : seq) out.push_back(net.transition(t));
  return out;
}

bool aligned(const State& s, const CompiledNet& net, const OpenNet& client, const MirrorMap& phi) {
  std::vector<std::size_t> marked;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > 1) return false;
    if (s[i] == 1) marked.push_back(i);
  }
  if (marked.size() != 2) return false;
  for (int k = 0; k < 2; ++k) {
    const NodeId& p = net.place(marked[k]);
    const NodeId& q = net.place(marked[1 - k]);
    if (client.is_internal(p) && phi.node_map.contains(p) && phi.node_map.at(p) == q) return true;
  }
  return false;
}

std::vector<std::size_t> receives_of(const CompiledNet& net, const LabeledPortnet& pn) {
  std::vector<std::size_t> out;
  for (const auto& t : pn.open().transitions())
    if (pn.direction(t) == Direction::receive) out.push_back(net.transition_index(t));
  return out;
}

std::set<State> closure_under(const CompiledNet& net, const State& s, const std::vector<std::size_t>& ts) {
  std::set<State> seen{s};
  std::deque<State> queue{s};
  while (!queue.empty()) {
    State x = std::move(queue.front());
    queue.pop_front();
    for (auto t : ts)
      if (net.enabled(x, t)) {
        State y = net.fire(x, t);
        if (seen.insert(y).second) queue.push_back(std::move(y));
      }
  }
  return seen;
}

}  // namespace

std::map<NodeId, Side> partition_by_owner(const NetSystem& sys, const std::string& server_owner) {
  std::map<NodeId, Side> out;
  for (const auto& [t, tag] : sys.tags) out[t] = tag.owner == server_owner ? Side::server : Side::client;
  return out;
}

CommutationVerdict check_commutation(const ReachabilityGraph& g, const std::map<NodeId, Side>& partition,
                                     CommutationOptions options) {
  if (!g.complete()) throw Inconclusive("commutation checks need a complete state space");
  const NetSystem& sys = g.system();
  const CompiledNet& net = g.compiled();

  Groups groups;
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    const NodeId& id = net.transition(t);
    auto tag = sys.tags.find(id);
    auto side = partition.find(id);
    if (tag == sys.tags.end() || side == partition.end())
      return {false, true, "", "transition '" + id + "' has no tag or side", std::nullopt, {id}};
    bool touches_out = false;
    bool touches_in = false;
    for (const auto& p : sys.net.postset(id)) touches_out |= sys.channels.contains(p);
    for (const auto& p : sys.net.preset(id)) touches_in |= sys.channels.contains(p);
    const Direction d = tag->second.direction;
    const bool consistent = (d == Direction::send && touches_out && !touches_in) ||
                            (d == Direction::receive && touches_in && !touches_out) ||
                            (d == Direction::tau && !touches_in && !touches_out);
    if (!consistent)
      return {false, true, "",
              "transition '" + id + "' is tagged " + std::string(to_string(d)) +
                  " but its channel arcs say otherwise",
              std::nullopt, {id}};
    const int k = side_index(side->second);
    if (d == Direction::send) groups.sends[k].push_back(t);
    if (d == Direction::receive) groups.receives[k].push_back(t);
  }

  SequenceEnumerator outer(net, options.max_sequences);
  SequenceEnumerator inner(net, options.max_sequences);
  CommutationVerdict fail;
  auto report = [&](std::string property, std::string detail, std::size_t state, const Seq& seq) {
    fail = {false, false, std::move(property), std::move(detail), state, names(net, seq)};
  };

  for (std::size_t i = 0; i < g.size() && fail.ok; ++i) {
    const State& s = g.state(i);

    // Server receives, then client receives, also execute client-first.
    outer.run(s, groups.receives[0], [&](const Seq& sigma, const State& s1) {
      if (!fail.ok || sigma.empty()) return;
      inner.run(s1, groups.receives[1], [&](const Seq& rho, const State& s2) {
        if (!fail.ok || rho.empty()) return;
        Seq swapped = rho;
        swapped.insert(swapped.end(), sigma.begin(), sigma.end());
        auto end = run_seq(net, s, swapped);
        if (!end || *end != s2) {
          Seq both = sigma;
          both.insert(both.end(), rho.begin(), rho.end());
          report("swap", "client receives cannot be moved before server receives", i, both);
        }
      });
    });

    for (int k = 0; k < 2 && fail.ok; ++k) {
      const int other = 1 - k;
      for (auto u : groups.sends[k]) {
        if (!fail.ok) break;
        if (!net.enabled(s, u)) continue;
        const State su = net.fire(s, u);

        // A send of one side survives receives of the other side.
        outer.run(s, groups.receives[other], [&](const Seq& sigma, const State& sn) {
          if (!fail.ok || sigma.empty()) return;
          if (!net.enabled(sn, u)) {
            Seq seq = sigma;
            seq.push_back(u);
            report("send-stays", "send '" + net.transition(u) + "' was disabled by receives", i, seq);
            return;
          }
          auto end = run_seq(net, su, sigma);
          if (!end || *end != net.fire(sn, u)) {
            Seq seq{u};
            seq.insert(seq.end(), sigma.begin(), sigma.end());
            report("send-stays", "send and receives do not commute", i, seq);
          }
        });
        if (!fail.ok) break;

        // Diamond completion for a send and receives of the same side.
        const Label& lu = sys.net.label(net.transition(u));
        outer.run(s, groups.receives[k], [&](const Seq& sigma, const State& sn) {
          if (!fail.ok || sigma.empty()) return;
          std::set<State> completions;
          std::vector<State> frontier{su};
          for (auto t : sigma) {
            const Label& lt = sys.net.label(net.transition(t));
            std::vector<State> next;
            for (const auto& x : frontier)
              for (auto r : groups.receives[k])
                if (sys.net.label(net.transition(r)) == lt && net.enabled(x, r)) next.push_back(net.fire(x, r));
            frontier = std::move(next);
          }
          completions.insert(frontier.begin(), frontier.end());
          for (auto v : groups.sends[k])
            if (sys.net.label(net.transition(v)) == lu && net.enabled(sn, v) &&
                completions.contains(net.fire(sn, v)))
              return;
          Seq seq{u};
          seq.insert(seq.end(), sigma.begin(), sigma.end());
          report("diamond", "no same-labeled completion after send '" + net.transition(u) + "'", i, seq);
        });
      }
    }
  }
  return fail;
}

StateVerdict check_alignment(const ReachabilityGraph& g, const LabeledPortnet& server,
                             const LabeledPortnet& client, const MirrorMap& phi) {
  if (!g.complete()) throw Inconclusive("alignment check needs a complete state space");
  const CompiledNet& net = g.compiled();
  const auto server_rx = receives_of(net, server);
  const auto client_rx = receives_of(net, client);
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool found = false;
    for (const auto& mid : closure_under(net, g.state(i), server_rx)) {
      for (const auto& end : closure_under(net, mid, client_rx))
        if (aligned(end, net, client.open(), phi)) {
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found) return StateVerdict{false, i, g.trace_to(i)};
  }
  return {};
}

StateVerdict check_homing(const ReachabilityGraph& g, const LabeledPortnet& server,
                          const LabeledPortnet& client, const MirrorMap& phi) {
  if (!g.complete()) throw Inconclusive("homing check needs a complete state space");
  const CompiledNet& net = g.compiled();
  const OpenNet& c = client.open();
  Marking final_marking;
  final_marking.insert(server.fin_place());
  final_marking.insert(client.fin_place());
  const State want = net.encode(final_marking);

  // Shortest client skeleton path from each place to fin, as transition lists.
  std::map<NodeId, std::vector<NodeId>> to_fin;
  to_fin[client.fin_place()] = {};
  std::deque<NodeId> queue{client.fin_place()};
  while (!queue.empty()) {
    const NodeId y = queue.front();
    queue.pop_front();
    for (const auto& t : c.preset(y))
      for (const auto& x : c.preset(t))
        if (c.is_internal(x) && !to_fin.contains(x)) {
          auto path = to_fin[y];
          path.insert(path.begin(), t);
          to_fin[x] = std::move(path);
          queue.push_back(x);
        }
  }

  for (std::size_t i = 0; i < g.size(); ++i) {
    const State& s = g.state(i);
    if (!aligned(s, net, c, phi)) continue;
    NodeId p;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (s[k] == 1 && c.is_internal(net.place(k))) p = net.place(k);
    auto path = to_fin.find(p);
    if (path == to_fin.end()) return StateVerdict{false, i, g.trace_to(i)};
    Seq schedule;
    for (const auto& t : path->second) {
      const std::size_t ct = net.transition_index(t);
      const std::size_t st = net.transition_index(phi(t));
      if (client.direction(t) == Direction::send) {
        schedule.push_back(ct);
        schedule.push_back(st);
      } else {
        schedule.push_back(st);
        schedule.push_back(ct);
      }
    }
    auto end = run_seq(net, s, schedule);
    if (!end || *end != want) return StateVerdict{false, i, g.trace_to(i)};
  }
  return {};
}

}  // namespace portnet
