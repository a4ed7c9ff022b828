#include <algorithm>
#include <iterator>

#include "portnet/open_net.hpp"

namespace portnet {

namespace {

std::set<NodeId> all_nodes(const OpenNet& n) {
  std::set<NodeId> s = n.net().places();
  s.insert(n.transitions().begin(), n.transitions().end());
  return s;
}

std::set<NodeId> interface_places(const OpenNet& n) {
  std::set<NodeId> s = n.inputs();
  s.insert(n.outputs().begin(), n.outputs().end());
  return s;
}

std::set<NodeId> intersect(const std::set<NodeId>& a, const std::set<NodeId>& b) {
  std::set<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool subset(const std::set<NodeId>& a, const std::set<NodeId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::string> as_vector(const std::set<NodeId>& s) { return {s.begin(), s.end()}; }

}  // namespace

std::vector<Diagnostic> composable(const OpenNet& a, const OpenNet& b) {
  std::vector<Diagnostic> out;

  const auto shared = intersect(all_nodes(a), all_nodes(b));
  const auto shared_iface = intersect(interface_places(a), interface_places(b));
  if (shared != shared_iface) {
    std::set<NodeId> bad;
    std::set_difference(shared.begin(), shared.end(), shared_iface.begin(), shared_iface.end(),
                        std::inserter(bad, bad.end()));
    out.push_back({"COMP-1", "nets share nodes that are not interface places of both",
                   as_vector(bad), "rename internal nodes apart before composing"});
  }

  const auto in_a_out_b = intersect(a.inputs(), b.outputs());
  const auto in_b_out_a = intersect(b.inputs(), a.outputs());
  if (!in_a_out_b.empty() || !in_b_out_a.empty()) {
    if (!subset(a.outputs(), b.inputs()) || !subset(b.outputs(), a.inputs()))
      out.push_back({"COMP-2", "connected nets must consume each other's outputs", {},
                     "every output of one net must be an input of the other"});
    const auto ii = intersect(a.inputs(), b.inputs());
    const auto oo = intersect(a.outputs(), b.outputs());
    if (!ii.empty() || !oo.empty()) {
      std::set<NodeId> both = ii;
      both.insert(oo.begin(), oo.end());
      out.push_back({"COMP-2", "connected nets share a channel in the same direction",
                     as_vector(both), "a channel must be an input on one side and an output on the other"});
    }
  }

  for (const auto& x : shared_iface)
    if (a.channel_label(x) != b.channel_label(x))
      out.push_back({"COMP-3", "shared interface place carries different labels", {x},
                     "fuse only channels transporting the same message"});
  return out;
}

OpenNet compose(const std::vector<OpenNet>& nets) {
  if (nets.empty()) throw UsageError("compose requires a non-empty set of nets");

  for (std::size_t i = 0; i < nets.size(); ++i)
    for (std::size_t j = i + 1; j < nets.size(); ++j) {
      auto ds = composable(nets[i], nets[j]);
      if (!ds.empty())
        throw CompositionError("COMP", "nets #" + std::to_string(i) + " and #" +
                                           std::to_string(j) + " are not composable",
                               std::move(ds));
    }

  std::set<NodeId> all_in;
  std::set<NodeId> all_out;
  for (const auto& n : nets) {
    all_in.insert(n.inputs().begin(), n.inputs().end());
    all_out.insert(n.outputs().begin(), n.outputs().end());
  }
  const auto fused = intersect(all_in, all_out);

  OpenNet r;
  std::set<NodeId> added;
  for (const auto& n : nets) {
    for (const auto& p : n.places()) r.add_place(p);
    for (const auto& p : interface_places(n)) {
      if (!added.insert(p).second) continue;
      if (fused.contains(p))
        r.add_place(p);
      else if (n.is_input(p))
        r.add_input(p, n.channel_label(p));
      else
        r.add_output(p, n.channel_label(p));
    }
    for (const auto& t : n.transitions()) r.add_transition(t, n.label(t));
  }
  for (const auto& n : nets) {
    for (const auto& [x, y] : n.arcs()) r.add_arc(x, y);
    for (const auto& p : n.init()) r.add_init(p);
    for (const auto& p : n.fin()) r.add_fin(p);
  }
  return r;
}

NetSystem compose_system(const std::vector<Component>& components, std::optional<Marking> m0,
                         std::optional<Marking> mf) {
  std::vector<OpenNet> nets;
  std::set<std::string> names;
  for (const auto& c : components) {
    if (!names.insert(c.name).second)
      throw UsageError("duplicate component name '" + c.name + "'");
    nets.push_back(c.net);
  }
  const OpenNet composed = compose(nets);

  NetSystem sys;
  sys.net = composed.net();
  Marking init;
  Marking fin;
  std::set<NodeId> all_in;
  std::set<NodeId> all_out;
  for (const auto& c : components) {
    for (const auto& t : c.net.transitions())
      sys.tags[t] = TransitionTag{c.name, direction(c.net, t)};
    init += Marking::from_set(c.net.init());
    fin += Marking::from_set(c.net.fin());
    all_in.insert(c.net.inputs().begin(), c.net.inputs().end());
    all_out.insert(c.net.outputs().begin(), c.net.outputs().end());
  }
  sys.channels = intersect(all_in, all_out);
  sys.m0 = m0.value_or(init);
  sys.mf = mf.value_or(fin);
  require_valid_marking(sys.net, sys.m0);
  require_valid_marking(sys.net, sys.mf);
  return sys;
}

}  // namespace portnet
