#include <algorithm>
#include <map>

#include "portnet/open_net.hpp"

namespace portnet {

void OpenNet::add_place(const NodeId& p) {
  net_.add_place(p);
  places_.insert(p);
}

void OpenNet::add_input(const NodeId& p, Label label) {
  net_.add_place(p);
  inputs_.insert(p);
  channel_labels_.emplace(p, std::move(label));
}

void OpenNet::add_output(const NodeId& p, Label label) {
  net_.add_place(p);
  outputs_.insert(p);
  channel_labels_.emplace(p, std::move(label));
}

void OpenNet::add_transition(const NodeId& t, Label label) {
  net_.add_transition(t, std::move(label));
}

void OpenNet::add_arc(const NodeId& from, const NodeId& to) { net_.add_arc(from, to); }

void OpenNet::add_init(const NodeId& p) {
  if (!places_.contains(p)) throw InvalidNet("initial place '" + p + "' is not an internal place");
  init_.insert(p);
}

void OpenNet::add_fin(const NodeId& p) {
  if (!places_.contains(p)) throw InvalidNet("final place '" + p + "' is not an internal place");
  fin_.insert(p);
}

void OpenNet::remove_arc(const NodeId& from, const NodeId& to) { net_.remove_arc(from, to); }

void OpenNet::remove_node(const NodeId& x) {
  net_.remove_node(x);
  places_.erase(x);
  inputs_.erase(x);
  outputs_.erase(x);
  init_.erase(x);
  fin_.erase(x);
  channel_labels_.erase(x);
}

const Label& OpenNet::channel_label(const NodeId& p) const {
  auto it = channel_labels_.find(p);
  if (it == channel_labels_.end()) throw NotFound("'" + p + "' is not an interface place");
  return it->second;
}

std::set<NodeId> OpenNet::interface_of(const NodeId& t) const {
  std::set<NodeId> out;
  for (const auto& p : preset(t))
    if (is_interface(p)) out.insert(p);
  for (const auto& p : postset(t))
    if (is_interface(p)) out.insert(p);
  return out;
}

bool OpenNet::operator==(const OpenNet& other) const {
  return net_ == other.net_ && places_ == other.places_ && inputs_ == other.inputs_ &&
         outputs_ == other.outputs_ && init_ == other.init_ && fin_ == other.fin_ &&
         channel_labels_ == other.channel_labels_;
}

Direction direction(const OpenNet& n, const NodeId& t) {
  if (!n.is_transition(t)) throw NotFound("transition '" + t + "' does not exist");
  for (const auto& p : n.postset(t))
    if (n.is_output(p)) return Direction::send;
  for (const auto& p : n.preset(t))
    if (n.is_input(p)) return Direction::receive;
  return Direction::tau;
}

OpenNet skeleton(const OpenNet& n) {
  OpenNet s;
  for (const auto& p : n.places()) s.add_place(p);
  for (const auto& t : n.transitions()) s.add_transition(t, n.label(t));
  for (const auto& [x, y] : n.arcs())
    if (!n.is_interface(x) && !n.is_interface(y)) s.add_arc(x, y);
  for (const auto& p : n.init()) s.add_init(p);
  for (const auto& p : n.fin()) s.add_fin(p);
  return s;
}

const Label& closure_label() {
  static const Label label{"__closure"};
  return label;
}

OpenNet closure(const OpenNet& n, std::optional<NodeId> transition_id) {
  const auto report = analyze_structure(skeleton(n).net());
  if (!report.is_s_net || !report.is_wfn) {
    throw StructureError("LP-CLOSURE", "closure requires an S-net workflow skeleton",
                         {Diagnostic{"LP-CLOSURE",
                                     report.is_s_net ? "skeleton is not a workflow net"
                                                     : "skeleton is not an S-net",
                                     {},
                                     "close only open workflow nets with a state-machine skeleton"}});
  }
  NodeId id = transition_id.value_or("__close");
  if (!transition_id)
    while (n.has_node(id)) id += "_";
  OpenNet c = n;
  c.add_transition(id, closure_label());
  for (const auto& p : n.fin()) c.add_arc(p, id);
  for (const auto& p : n.init()) c.add_arc(id, p);
  return c;
}

std::vector<Diagnostic> open_net_diagnostics(const OpenNet& n) {
  std::vector<Diagnostic> out;
  for (const auto& p : n.inputs())
    if (!n.preset(p).empty()) {
      std::vector<std::string> nodes{p};
      nodes.insert(nodes.end(), n.preset(p).begin(), n.preset(p).end());
      out.push_back({"OPN-2", "input place has a non-empty preset", nodes,
                     "only consume from input places"});
    }
  for (const auto& p : n.outputs())
    if (!n.postset(p).empty()) {
      std::vector<std::string> nodes{p};
      nodes.insert(nodes.end(), n.postset(p).begin(), n.postset(p).end());
      out.push_back({"OPN-3", "output place has a non-empty postset", nodes,
                     "only produce into output places"});
    }
  for (const auto& t : n.transitions()) {
    const bool consumes_input = std::any_of(n.preset(t).begin(), n.preset(t).end(),
                                            [&](const NodeId& p) { return n.is_input(p); });
    const bool produces_output = std::any_of(n.postset(t).begin(), n.postset(t).end(),
                                             [&](const NodeId& p) { return n.is_output(p); });
    if (consumes_input && produces_output)
      out.push_back({"OPN-4", "transition both consumes an input and produces an output", {t},
                     "split the transition into a receive and a send"});
    for (const auto& x : n.interface_of(t))
      if (n.channel_label(x) != n.label(t))
        out.push_back({"OPN-5",
                       "transition label '" + n.label(t).str() + "' differs from channel label '" +
                           n.channel_label(x).str() + "'",
                       {t, x},
                       "connect transitions only to the channel of their own label"});
  }
  return out;
}

std::vector<Diagnostic> validate_portnet(const OpenNet& n) {
  std::vector<Diagnostic> out = open_net_diagnostics(n);

  // Condition 1: S-OWN with single init and fin.
  const OpenNet skel = skeleton(n);
  const auto report = analyze_structure(skel.net());
  if (!report.is_s_net) {
    std::vector<std::string> nodes;
    for (const auto& t : skel.transitions())
      if (skel.preset(t).size() > 1 || skel.postset(t).size() > 1) nodes.push_back(t);
    out.push_back({"LP-COND-1", "skeleton is not an S-net", nodes,
                   "give each transition at most one internal input and output place"});
  }
  if (!report.is_wfn) {
    std::vector<std::string> sources, sinks;
    for (const auto& p : skel.places()) {
      if (skel.preset(p).empty()) sources.push_back(p);
      if (skel.postset(p).empty()) sinks.push_back(p);
    }
    if (sources.size() != 1)
      out.push_back({"LP-COND-1", "skeleton has " + std::to_string(sources.size()) + " source places", sources,
                     "leave exactly one place without incoming transitions"});
    if (sinks.size() != 1)
      out.push_back({"LP-COND-1", "skeleton has " + std::to_string(sinks.size()) + " sink places", sinks,
                     "leave exactly one place without outgoing transitions"});
    if (sources.size() == 1 && sinks.size() == 1) {
      const auto fwd = forward_reachable(skel.net(), sources.front());
      const auto bwd = backward_reachable(skel.net(), sinks.front());
      std::vector<std::string> off;
      for (const auto* xs : {&skel.places(), &skel.transitions()})
        for (const auto& x : *xs)
          if (!fwd.contains(x) || !bwd.contains(x)) off.push_back(x);
      out.push_back({"LP-COND-1", "nodes off every path from source to sink", off,
                     "connect them between the initial and the final place or remove them"});
    }
  }
  if (n.init().size() != 1 || n.fin().size() != 1) {
    out.push_back({"LP-COND-1", "portnet needs exactly one initial and one final place", {},
                   "declare one initial and one final state"});
  } else if (report.is_wfn) {
    if (*n.init().begin() != *report.initial_place)
      out.push_back({"LP-COND-1", "initial place is not the source place of the skeleton",
                     {*n.init().begin(), *report.initial_place},
                     "make the source place the initial place"});
    if (*n.fin().begin() != *report.final_place)
      out.push_back({"LP-COND-1", "final place is not the sink place of the skeleton",
                     {*n.fin().begin(), *report.final_place},
                     "make the sink place the final place"});
  }

  // Condition 2: exactly one interface place per transition.
  for (const auto& t : n.transitions()) {
    const auto iface = n.interface_of(t);
    if (iface.size() != 1) {
      std::vector<std::string> nodes{t};
      nodes.insert(nodes.end(), iface.begin(), iface.end());
      out.push_back({"LP-COND-2",
                     "transition touches " + std::to_string(iface.size()) + " interface places",
                     nodes, "connect every transition to exactly one channel"});
    }
  }

  // Condition 3: transitions on one interface place share a label.
  for (const auto* side : {&n.inputs(), &n.outputs()})
    for (const auto& x : *side) {
      std::set<NodeId> adj = n.preset(x);
      adj.insert(n.postset(x).begin(), n.postset(x).end());
      std::set<Label> labels;
      for (const auto& t : adj) labels.insert(n.label(t));
      if (labels.size() > 1) {
        std::vector<std::string> nodes{x};
        nodes.insert(nodes.end(), adj.begin(), adj.end());
        out.push_back({"LP-COND-3", "interface place is shared by transitions with different labels",
                       nodes, "use one channel per message label"});
      }
    }

  // Condition 4: same-label transitions share their interface places.
  std::map<Label, std::vector<NodeId>> by_label;
  for (const auto& t : n.transitions()) by_label[n.label(t)].push_back(t);
  for (const auto& [label, ts] : by_label) {
    const auto first = n.interface_of(ts.front());
    for (std::size_t i = 1; i < ts.size(); ++i)
      if (n.interface_of(ts[i]) != first) {
        out.push_back({"LP-COND-4",
                       "transitions labeled '" + label.str() + "' use different interface places",
                       {ts.front(), ts[i]}, "route every '" + label.str() + "' transition through one channel"});
      }
  }

  if (out.empty()) {
    // Equal labels imply equal directions on every portnet.
    for (const auto& [label, ts] : by_label)
      for (const auto& t : ts)
        if (direction(n, t) != direction(n, ts.front()))
          out.push_back({"LP-LABEL-DIR", "equal labels with different directions",
                         {ts.front(), t}, "internal error: report this net"});
  }
  return out;
}

LabeledPortnet LabeledPortnet::from(OpenNet n) {
  auto ds = validate_portnet(n);
  if (!ds.empty()) throw PortnetError("LP-INVALID", "not a labeled portnet", std::move(ds));
  return LabeledPortnet(std::move(n));
}

OpenNet rename_nodes(const OpenNet& n, const std::function<NodeId(const NodeId&)>& rename) {
  OpenNet r;
  for (const auto& p : n.places()) r.add_place(rename(p));
  for (const auto& p : n.inputs()) r.add_input(rename(p), n.channel_label(p));
  for (const auto& p : n.outputs()) r.add_output(rename(p), n.channel_label(p));
  for (const auto& t : n.transitions()) r.add_transition(rename(t), n.label(t));
  for (const auto& [x, y] : n.arcs()) r.add_arc(rename(x), rename(y));
  for (const auto& p : n.init()) r.add_init(rename(p));
  for (const auto& p : n.fin()) r.add_fin(rename(p));
  return r;
}

OpenNet prefix_internal(const OpenNet& n, const std::string& prefix) {
  return rename_nodes(n, [&](const NodeId& x) { return n.is_interface(x) ? x : prefix + x; });
}

NetSystem skeleton_system(const OpenNet& n) {
  NetSystem sys;
  sys.net = skeleton(n).net();
  sys.m0 = Marking::from_set(n.init());
  sys.mf = Marking::from_set(n.fin());
  for (const auto& t : n.transitions()) sys.tags[t] = TransitionTag{"", direction(n, t)};
  return sys;
}

}  // namespace portnet
