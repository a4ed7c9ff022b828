#include "portnet/net.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace portnet {

Label::Label(std::string text) : text_(std::move(text)) {
  if (!is_valid(text_)) throw UsageError("invalid label '" + text_ + "'");
}

bool Label::is_valid(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::send:
      return "send";
    case Direction::receive:
      return "receive";
    case Direction::tau:
      return "tau";
  }
  return "?";
}

void LabeledNet::add_place(const NodeId& p) {
  if (p.empty()) throw InvalidNet("empty node id");
  if (has_node(p)) throw InvalidNet("duplicate node id '" + p + "'");
  places_.insert(p);
  pre_[p];
  post_[p];
}

void LabeledNet::add_transition(const NodeId& t, Label label) {
  if (t.empty()) throw InvalidNet("empty node id");
  if (has_node(t)) throw InvalidNet("duplicate node id '" + t + "'");
  transitions_.insert(t);
  labels_.emplace(t, std::move(label));
  pre_[t];
  post_[t];
}

void LabeledNet::add_arc(const NodeId& from, const NodeId& to) {
  if (!has_node(from)) throw NotFound("arc source '" + from + "' does not exist");
  if (!has_node(to)) throw NotFound("arc target '" + to + "' does not exist");
  const bool pt = is_place(from) && is_transition(to);
  const bool tp = is_transition(from) && is_place(to);
  if (!pt && !tp)
    throw InvalidNet("arc (" + from + ", " + to + ") must connect a place and a transition");
  arcs_.insert({from, to});
  post_[from].insert(to);
  pre_[to].insert(from);
}

void LabeledNet::remove_arc(const NodeId& from, const NodeId& to) {
  if (arcs_.erase({from, to}) == 0)
    throw NotFound("arc (" + from + ", " + to + ") does not exist");
  post_[from].erase(to);
  pre_[to].erase(from);
}

void LabeledNet::remove_node(const NodeId& x) {
  if (!has_node(x)) throw NotFound("node '" + x + "' does not exist");
  for (const auto& y : std::set<NodeId>(pre_[x])) remove_arc(y, x);
  for (const auto& y : std::set<NodeId>(post_[x])) remove_arc(x, y);
  places_.erase(x);
  transitions_.erase(x);
  labels_.erase(x);
  pre_.erase(x);
  post_.erase(x);
}

void LabeledNet::relabel(const NodeId& t, Label label) {
  auto it = labels_.find(t);
  if (it == labels_.end()) throw NotFound("transition '" + t + "' does not exist");
  it->second = std::move(label);
}

const Label& LabeledNet::label(const NodeId& t) const {
  auto it = labels_.find(t);
  if (it == labels_.end()) throw NotFound("transition '" + t + "' does not exist");
  return it->second;
}

const std::set<NodeId>& LabeledNet::preset(const NodeId& x) const {
  auto it = pre_.find(x);
  if (it == pre_.end()) throw NotFound("node '" + x + "' does not exist");
  return it->second;
}

const std::set<NodeId>& LabeledNet::postset(const NodeId& x) const {
  auto it = post_.find(x);
  if (it == post_.end()) throw NotFound("node '" + x + "' does not exist");
  return it->second;
}

bool LabeledNet::operator==(const LabeledNet& other) const {
  return places_ == other.places_ && transitions_ == other.transitions_ &&
         arcs_ == other.arcs_ && labels_ == other.labels_;
}

void require_valid_marking(const LabeledNet& net, const Marking& m) {
  for (const auto& [p, n] : m)
    if (!net.is_place(p)) throw NotFound("marking mentions unknown place '" + p + "'");
}

bool is_enabled(const LabeledNet& net, const Marking& m, const NodeId& t) {
  if (!net.is_transition(t)) throw NotFound("transition '" + t + "' does not exist");
  const auto& pre = net.preset(t);
  return std::all_of(pre.begin(), pre.end(), [&](const NodeId& p) { return m.count(p) >= 1; });
}

std::set<NodeId> enabled(const LabeledNet& net, const Marking& m) {
  require_valid_marking(net, m);
  std::set<NodeId> out;
  for (const auto& t : net.transitions())
    if (is_enabled(net, m, t)) out.insert(t);
  return out;
}

Marking fire(const LabeledNet& net, const Marking& m, const NodeId& t) {
  require_valid_marking(net, m);
  if (!is_enabled(net, m, t))
    throw NotEnabled("transition '" + t + "' is not enabled in " + to_string(m));
  Marking next = m;
  next -= Marking::from_set(net.preset(t));
  next += Marking::from_set(net.postset(t));
  return next;
}

namespace {

template <class Step>
std::set<NodeId> closure_from(const NodeId& start, Step&& step) {
  std::set<NodeId> seen{start};
  std::deque<NodeId> queue{start};
  while (!queue.empty()) {
    NodeId x = std::move(queue.front());
    queue.pop_front();
    for (const auto& y : step(x))
      if (seen.insert(y).second) queue.push_back(y);
  }
  return seen;
}

}  // namespace

std::set<NodeId> forward_reachable(const LabeledNet& net, const NodeId& from) {
  net.postset(from);
  return closure_from(from, [&](const NodeId& x) -> const std::set<NodeId>& {
    return net.postset(x);
  });
}

std::set<NodeId> backward_reachable(const LabeledNet& net, const NodeId& to) {
  net.preset(to);
  return closure_from(to, [&](const NodeId& x) -> const std::set<NodeId>& {
    return net.preset(x);
  });
}

StructureReport analyze_structure(const LabeledNet& net) {
  StructureReport r;

  r.is_s_net = std::all_of(net.transitions().begin(), net.transitions().end(),
                           [&](const NodeId& t) {
                             return net.preset(t).size() <= 1 && net.postset(t).size() <= 1;
                           });

  std::vector<NodeId> sources;
  std::vector<NodeId> sinks;
  for (const auto& p : net.places()) {
    if (net.preset(p).empty()) sources.push_back(p);
    if (net.postset(p).empty()) sinks.push_back(p);
    if (net.postset(p).size() > 1) r.splits.insert(p);
    if (net.preset(p).size() > 1) r.joins.insert(p);
  }

  if (sources.size() == 1 && sinks.size() == 1) {
    r.initial_place = sources.front();
    r.final_place = sinks.front();
    const auto fwd = forward_reachable(net, sources.front());
    const auto bwd = backward_reachable(net, sinks.front());
    r.is_wfn = true;
    for (const auto& x : net.places())
      if (!fwd.contains(x) || !bwd.contains(x)) r.is_wfn = false;
    for (const auto& x : net.transitions())
      if (!fwd.contains(x) || !bwd.contains(x)) r.is_wfn = false;
  }

  // Strongly connected iff one node reaches everything and is reached by everything.
  if (net.node_count() <= 1) {
    r.is_strongly_connected = true;
  } else {
    const NodeId& any = !net.places().empty() ? *net.places().begin() : *net.transitions().begin();
    r.is_strongly_connected = forward_reachable(net, any).size() == net.node_count() &&
                              backward_reachable(net, any).size() == net.node_count();
  }
  return r;
}

}  // namespace portnet
