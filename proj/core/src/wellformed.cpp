#include <deque>
#include <map>

#include "portnet/wellformed.hpp"

namespace portnet {

namespace {

// Portnet skeletons are S-net workflow nets, so every transition has exactly
// one internal input and one internal output place. Interface places never
// continue a path (inputs have no preset, outputs no postset), so walking the
// skeleton covers every path of the whole net that starts at an internal place.
class SkeletonView {
 public:
  explicit SkeletonView(const LabeledPortnet& pn) : n_(pn.open()) {
    for (const auto& t : n_.transitions()) {
      dir_[t] = direction(n_, t);
      for (const auto& p : n_.postset(t))
        if (n_.is_internal(p)) post_[t] = p;
    }
  }

  const OpenNet& net() const { return n_; }
  Direction dir(const NodeId& t) const { return dir_.at(t); }
  const NodeId& target(const NodeId& t) const { return post_.at(t); }
  const Label& label(const NodeId& t) const { return n_.label(t); }

 private:
  const OpenNet& n_;
  std::map<NodeId, Direction> dir_;
  std::map<NodeId, NodeId> post_;
};

std::vector<std::string> with_nodes(std::initializer_list<NodeId> xs) { return {xs}; }

// Shortest paths from `start` (using at least one transition) through
// transitions accepted by `allowed`. Returns parent links of reached places.
template <class Allowed>
std::map<NodeId, std::pair<NodeId, NodeId>> reach_from(const SkeletonView& v, const NodeId& start,
                                                       Allowed&& allowed) {
  std::map<NodeId, std::pair<NodeId, NodeId>> parent;
  std::deque<NodeId> queue{start};
  bool first = true;
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    if (!first && x == start) continue;
    first = false;
    for (const auto& t : v.net().postset(x)) {
      if (!allowed(t)) continue;
      const NodeId& y = v.target(t);
      if (parent.emplace(y, std::make_pair(x, t)).second) queue.push_back(y);
    }
  }
  return parent;
}

PathWitness unwind(const std::map<NodeId, std::pair<NodeId, NodeId>>& parent, const NodeId& start,
                   const NodeId& end) {
  std::vector<NodeId> rev{end};
  NodeId cur = end;
  do {
    const auto& [x, t] = parent.at(cur);
    rev.push_back(t);
    rev.push_back(x);
    cur = x;
  } while (cur != start);
  return PathWitness{{rev.rbegin(), rev.rend()}};
}

}  // namespace

Verdict check_choice(const LabeledPortnet& pn) {
  const SkeletonView v(pn);
  Verdict r;
  for (const auto& p : v.net().places()) {
    const auto& post = v.net().postset(p);
    std::set<Direction> dirs;
    for (const auto& t : post) dirs.insert(v.dir(t));
    if (dirs.size() > 1) {
      std::vector<std::string> nodes{p};
      nodes.insert(nodes.end(), post.begin(), post.end());
      r.violations.push_back({"WF-CHOICE", "place offers transitions of different directions",
                              nodes, "let only one side take initiative in this state"});
    }
  }
  r.passed = r.violations.empty();
  return r;
}

Verdict check_observable(const LabeledPortnet& pn) {
  const SkeletonView v(pn);
  Verdict r;
  for (const auto& p : v.net().places()) {
    std::map<Label, NodeId> seen;
    for (const auto& t : v.net().postset(p)) {
      auto [it, fresh] = seen.emplace(v.label(t), t);
      if (!fresh)
        r.violations.push_back({"WF-OBSERVABLE",
                                "two transitions in the postset share label '" + v.label(t).str() + "'",
                                with_nodes({p, it->second, t}),
                                "give conflicting transitions distinct labels"});
    }
  }
  r.passed = r.violations.empty();
  return r;
}

Verdict check_diamond(const LabeledPortnet& pn) {
  const SkeletonView v(pn);
  const OpenNet& n = v.net();
  Verdict r;
  for (const auto& p : n.places()) {
    const std::vector<NodeId> post(n.postset(p).begin(), n.postset(p).end());
    for (std::size_t a = 0; a < post.size(); ++a)
      for (std::size_t b = a + 1; b < post.size(); ++b) {
        const NodeId& t = post[a];
        const NodeId& t2 = post[b];
        if (v.dir(t) == v.dir(t2)) continue;
        const NodeId& q = v.target(t);
        const NodeId& q2 = v.target(t2);
        bool found = false;
        for (const auto& u : n.postset(q)) {
          if (v.label(u) != v.label(t2)) continue;
          for (const auto& u2 : n.postset(q2)) {
            if (v.label(u2) != v.label(t)) continue;
            for (const auto& x : n.postset(u))
              if (n.postset(u2).contains(x)) found = true;
          }
        }
        if (!found)
          r.violations.push_back({"WF-DIAMOND",
                                  "race between '" + v.label(t).str() + "' and '" +
                                      v.label(t2).str() + "' cannot be completed to a common state",
                                  with_nodes({p, t, t2, q, q2}),
                                  "after either interaction, offer the other one leading to a shared state"});
      }
  }
  r.passed = r.violations.empty();
  return r;
}

Verdict check_leg(const LabeledPortnet& pn) {
  const SkeletonView v(pn);
  const OpenNet& n = v.net();
  Verdict r;
  auto is_start = [&](const NodeId& p) { return n.postset(p).size() > 1 || n.init().contains(p); };
  auto is_end = [&](const NodeId& p) { return n.preset(p).size() > 1 || n.fin().contains(p); };

  for (const auto& s : n.places()) {
    if (!is_start(s)) continue;
    std::set<NodeId> reported;
    for (Direction dropped : {Direction::send, Direction::receive}) {
      const auto parent = reach_from(v, s, [&](const NodeId& t) { return v.dir(t) != dropped; });
      for (const auto& [y, link] : parent) {
        if (!is_end(y) || reported.contains(y)) continue;
        reported.insert(y);
        r.paths.push_back(unwind(parent, s, y));
        r.violations.push_back({"WF-LEG", "path from split to join lacks a direction change",
                                with_nodes({s, y}),
                                "require both parties to interact between these places"});
      }
    }
  }
  r.passed = r.violations.empty();
  return r;
}

std::vector<PathWitness> pathset_violations(const LabeledPortnet& pn, const NodeId& p,
                                            const NodeId& t, const Label& l, LoopOptions options) {
  const SkeletonView v(pn);
  const OpenNet& n = v.net();
  if (!n.is_internal(p)) throw UsageError("'" + p + "' is not an internal place");
  if (!n.is_transition(t) || !n.postset(p).contains(t))
    throw UsageError("'" + t + "' is not in the postset of '" + p + "'");
  if (v.label(t) == l) throw UsageError("transition '" + t + "' already carries label '" + l.str() + "'");

  const Direction d = v.dir(t);
  auto allowed = [&](const NodeId& u) {
    const Direction du = v.dir(u);
    if (options.strict) return du == d || du == Direction::tau;
    return du == d;
  };

  // BFS over places reachable after t; l-labeled transitions are terminals.
  std::map<NodeId, std::pair<NodeId, NodeId>> parent;
  const NodeId& q0 = v.target(t);
  std::deque<NodeId> queue{q0};
  std::set<NodeId> visited{q0};
  std::vector<PathWitness> out;
  std::set<NodeId> terminals;
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    for (const auto& u : n.postset(x)) {
      if (!allowed(u)) continue;
      if (v.label(u) == l) {
        if (!terminals.insert(u).second) continue;
        std::vector<NodeId> rev{v.target(u), u};
        for (NodeId cur = x; cur != q0;) {
          rev.push_back(cur);
          const auto& [px, pt] = parent.at(cur);
          rev.push_back(pt);
          cur = px;
        }
        rev.push_back(q0);
        rev.push_back(t);
        rev.push_back(p);
        out.push_back(PathWitness{{rev.rbegin(), rev.rend()}});
        continue;
      }
      const NodeId& y = v.target(u);
      if (visited.insert(y).second) {
        parent.emplace(y, std::make_pair(x, u));
        queue.push_back(y);
      }
    }
  }
  return out;
}

Verdict check_loop(const LabeledPortnet& pn, LoopOptions options) {
  const SkeletonView v(pn);
  const OpenNet& n = v.net();
  Verdict r;
  for (const auto& p : n.places())
    for (const auto& t : n.postset(p))
      for (const auto& t2 : n.postset(p)) {
        if (t == t2 || v.dir(t) != v.dir(t2)) continue;
        // Equal labels are an observable-choices violation; pathset is undefined there.
        if (v.label(t) == v.label(t2)) continue;
        for (auto& w : pathset_violations(pn, p, t, v.label(t2), options)) {
          r.violations.push_back({"WF-LOOP",
                                  "after '" + v.label(t).str() + "' the competing '" +
                                      v.label(t2).str() + "' is reachable without a direction change",
                                  with_nodes({p, t, t2}),
                                  "insert an interaction of the opposite direction before '" +
                                      v.label(t2).str() + "'"});
          r.paths.push_back(std::move(w));
        }
      }
  r.passed = r.violations.empty();
  return r;
}

WellFormedReport check_well_formed(const LabeledPortnet& n, LoopOptions options) {
  WellFormedReport r;
  r.observable_choices = check_observable(n);
  r.diamond = check_diamond(n);
  r.loop = check_loop(n, options);
  r.choice = check_choice(n);
  r.leg = check_leg(n);
  r.well_formed = r.observable_choices.passed && r.diamond.passed && r.loop.passed;
  return r;
}

}  // namespace portnet
