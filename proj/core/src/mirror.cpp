#include <algorithm>
#include <deque>

#include "portnet/mirror.hpp"

namespace portnet {

const NodeId& MirrorMap::operator()(const NodeId& x) const {
  auto it = node_map.find(x);
  if (it == node_map.end()) throw NotFound("'" + x + "' is not in the mirror map");
  return it->second;
}

namespace {

enum class Sort { place, input, output, transition, missing };

Sort sort_of(const OpenNet& n, const NodeId& x) {
  if (n.is_internal(x)) return Sort::place;
  if (n.is_input(x)) return Sort::input;
  if (n.is_output(x)) return Sort::output;
  if (n.is_transition(x)) return Sort::transition;
  return Sort::missing;
}

Sort mirrored(Sort s) {
  if (s == Sort::input) return Sort::output;
  if (s == Sort::output) return Sort::input;
  return s;
}

std::set<NodeId> all_nodes(const OpenNet& n) {
  std::set<NodeId> s = n.net().places();
  s.insert(n.transitions().begin(), n.transitions().end());
  return s;
}

NodeId fresh(const std::string& base, const std::set<NodeId>& taken) {
  NodeId id = base;
  while (taken.contains(id)) id += "_";
  return id;
}

}  // namespace

std::vector<Diagnostic> validate_partial_mirror(const LabeledPortnet& server_pn,
                                                const LabeledPortnet& client_pn,
                                                const MirrorMap& phi) {
  const OpenNet& n = server_pn.open();
  const OpenNet& m = client_pn.open();
  std::vector<Diagnostic> out;

  auto image = [&](const NodeId& x) -> const NodeId* {
    auto it = phi.node_map.find(x);
    return it == phi.node_map.end() ? nullptr : &it->second;
  };

  std::map<NodeId, NodeId> preimage;
  for (const auto& x : all_nodes(m)) {
    const NodeId* y = image(x);
    if (y == nullptr) {
      out.push_back({"MIR-1", "client node is not mapped", {x}, "extend phi to every client node"});
      continue;
    }
    if (sort_of(n, *y) != mirrored(sort_of(m, x)))
      out.push_back({"MIR-1", "node is mapped onto a server node of the wrong kind", {x, *y},
                     "map places to places, transitions to transitions and swap input/output"});
    auto [it, fresh_target] = preimage.emplace(*y, x);
    if (!fresh_target)
      out.push_back({"MIR-1", "mapping is not injective", {it->second, x, *y},
                     "map distinct client nodes to distinct server nodes"});
  }

  for (const auto& [x, y] : m.arcs()) {
    const NodeId* px = image(x);
    const NodeId* py = image(y);
    if (px == nullptr || py == nullptr) continue;
    const bool reversed = m.is_input(x) || m.is_output(y);
    const bool ok = reversed ? n.net().has_arc(*py, *px) : n.net().has_arc(*px, *py);
    if (!ok)
      out.push_back({"MIR-2", "client arc has no counterpart in the server", {x, y},
                     reversed ? "interface arcs must appear reversed in the server"
                              : "internal arcs must appear unchanged in the server"});
  }

  auto mapped_set = [&](const std::set<NodeId>& xs) {
    std::set<NodeId> s;
    for (const auto& x : xs)
      if (const NodeId* y = image(x)) s.insert(*y);
    return s;
  };
  if (mapped_set(m.init()) != n.init())
    out.push_back({"MIR-3", "client init is not mapped onto server init", {m.init().begin(), m.init().end()},
                   "map the initial place onto the server's initial place"});
  if (mapped_set(m.fin()) != n.fin())
    out.push_back({"MIR-3", "client fin is not mapped onto server fin", {m.fin().begin(), m.fin().end()},
                   "map the final place onto the server's final place"});

  for (const auto& t : m.transitions()) {
    const NodeId* u = image(t);
    if (u == nullptr || !n.is_transition(*u)) continue;
    if (m.label(t) != n.label(*u))
      out.push_back({"MIR-4", "label '" + m.label(t).str() + "' differs from '" + n.label(*u).str() + "'",
                     {t, *u}, "mirror transitions must keep their label"});
  }

  for (const auto& p : m.places()) {
    const NodeId* q = image(p);
    if (q == nullptr || !n.is_internal(*q)) continue;
    for (const auto& t : n.postset(*q)) {
      if (direction(n, t) != Direction::send) continue;
      const bool covered = std::any_of(m.postset(p).begin(), m.postset(p).end(), [&](const NodeId& u) {
        const NodeId* v = image(u);
        return v != nullptr && *v == t;
      });
      if (!covered)
        out.push_back({"MIR-5", "server send '" + n.label(t).str() + "' cannot be received by the client",
                       {p, *q, t}, "keep a receive of every server send offered in a mirrored state"});
    }
  }
  return out;
}

Mirror derive_full_mirror(const LabeledPortnet& server_pn) {
  const OpenNet& s = server_pn.open();
  std::set<NodeId> taken = all_nodes(s);
  MirrorMap phi;
  NodeMap to_client;
  auto assign = [&](const NodeId& x) {
    const NodeId id = fresh(x + "_c", taken);
    taken.insert(id);
    to_client[x] = id;
    phi.node_map[id] = x;
  };
  for (const auto& p : s.places()) assign(p);
  for (const auto& t : s.transitions()) assign(t);

  OpenNet c;
  for (const auto& p : s.places()) c.add_place(to_client[p]);
  for (const auto& x : s.inputs()) {
    c.add_output(x, s.channel_label(x));
    phi.node_map[x] = x;
    to_client[x] = x;
  }
  for (const auto& x : s.outputs()) {
    c.add_input(x, s.channel_label(x));
    phi.node_map[x] = x;
    to_client[x] = x;
  }
  for (const auto& t : s.transitions()) c.add_transition(to_client[t], s.label(t));
  for (const auto& [x, y] : s.arcs()) {
    if (s.is_interface(x) || s.is_interface(y))
      c.add_arc(to_client[y], to_client[x]);
    else
      c.add_arc(to_client[x], to_client[y]);
  }
  for (const auto& p : s.init()) c.add_init(to_client[p]);
  for (const auto& p : s.fin()) c.add_fin(to_client[p]);
  return Mirror{LabeledPortnet::from(std::move(c)), std::move(phi)};
}

OpenNet prune_off_path(OpenNet n, PruneOrder order) {
  for (;;) {
    const OpenNet skel = skeleton(n);
    std::set<NodeId> fwd;
    std::set<NodeId> bwd;
    for (const auto& p : n.init()) {
      auto r = forward_reachable(skel.net(), p);
      fwd.insert(r.begin(), r.end());
    }
    for (const auto& p : n.fin()) {
      auto r = backward_reachable(skel.net(), p);
      bwd.insert(r.begin(), r.end());
    }
    std::vector<NodeId> off;
    for (const auto& x : all_nodes(n))
      if (!n.is_interface(x) && !(fwd.contains(x) && bwd.contains(x))) off.push_back(x);
    if (off.empty()) return n;
    n.remove_node(order == PruneOrder::ascending ? off.front() : off.back());
  }
}

Mirror derive_partial_mirror(const LabeledPortnet& server_pn, const DropSet& drop) {
  const OpenNet& s = server_pn.open();
  std::set<NodeId> dropped;
  std::vector<Diagnostic> refusals;

  for (const auto& l : drop.labels) {
    bool seen = false;
    for (const auto& t : s.transitions()) {
      if (s.label(t) != l) continue;
      seen = true;
      if (direction(s, t) == Direction::send)
        refusals.push_back({"MIR-DROP-SEND", "label '" + l.str() + "' is a server send", {t},
                            "a client may only omit its own sends"});
      dropped.insert(t);
    }
    if (!seen)
      refusals.push_back({"MIR-DROP-UNKNOWN", "no server transition is labeled '" + l.str() + "'", {},
                          "drop labels of the server's signature"});
  }
  for (const auto& t : drop.transitions) {
    if (!s.is_transition(t)) {
      refusals.push_back({"MIR-DROP-UNKNOWN", "server has no transition '" + t + "'", {t},
                          "name an existing server transition"});
      continue;
    }
    if (direction(s, t) == Direction::send)
      refusals.push_back({"MIR-DROP-SEND", "transition '" + t + "' is a server send", {t},
                          "a client may only omit its own sends"});
    dropped.insert(t);
  }
  if (!refusals.empty()) {
    const std::string code = refusals.front().code;
    throw MirrorError(code, "cannot drop the requested transitions", std::move(refusals));
  }

  Mirror full = derive_full_mirror(server_pn);
  OpenNet c = full.client.open();
  for (const auto& [cx, sx] : full.phi.node_map)
    if (dropped.contains(sx)) c.remove_node(cx);

  const OpenNet skel = skeleton(c);
  const NodeId& init = *c.init().begin();
  const NodeId& fin = *c.fin().begin();
  if (!forward_reachable(skel.net(), init).contains(fin))
    throw MirrorError("MIR-DISCONNECTED", "dropping these sends disconnects init from fin",
                      {{"MIR-DISCONNECTED", "final place is unreachable after the drop", {init, fin},
                        "drop fewer sends so that some run still completes"}});
  c = prune_off_path(std::move(c));

  MirrorMap phi;
  for (const auto& [cx, sx] : full.phi.node_map)
    if (c.has_node(cx)) phi.node_map[cx] = sx;

  auto structural = validate_portnet(c);
  if (!structural.empty())
    throw MirrorError("MIR-INVALID", "pruned client is not a labeled portnet", std::move(structural));
  LabeledPortnet client = LabeledPortnet::from(std::move(c));
  auto ds = validate_partial_mirror(server_pn, client, phi);
  if (!ds.empty()) {
    std::string code = ds.front().code;
    throw MirrorError(std::move(code), "pruned client is not a partial mirror", std::move(ds));
  }
  return Mirror{std::move(client), std::move(phi)};
}

std::optional<MirrorMap> infer_mirror_map(const LabeledPortnet& server_pn, const OpenNet& m) {
  const OpenNet& n = server_pn.open();
  if (m.init().size() != 1) return std::nullopt;

  MirrorMap phi;
  auto bind = [&](const NodeId& x, const NodeId& y) {
    auto [it, fresh_binding] = phi.node_map.emplace(x, y);
    return fresh_binding || it->second == y;
  };
  auto opposite = [](Direction a, Direction b) {
    return (a == Direction::send && b == Direction::receive) ||
           (a == Direction::receive && b == Direction::send) ||
           (a == Direction::tau && b == Direction::tau);
  };

  const NodeId& ci = *m.init().begin();
  if (!bind(ci, server_pn.init_place())) return std::nullopt;
  std::deque<NodeId> queue{ci};
  std::set<NodeId> done{ci};
  while (!queue.empty()) {
    const NodeId p = queue.front();
    queue.pop_front();
    const NodeId& q = phi.node_map.at(p);
    for (const auto& t : m.postset(p)) {
      const Direction dt = direction(m, t);
      std::vector<NodeId> candidates;
      for (const auto& u : n.postset(q))
        if (n.label(u) == m.label(t) && opposite(dt, direction(n, u))) candidates.push_back(u);
      if (candidates.size() != 1) return std::nullopt;
      const NodeId& u = candidates.front();
      if (!bind(t, u)) return std::nullopt;

      for (const auto& x : m.interface_of(t)) {
        const auto ys = n.interface_of(u);
        if (ys.size() != 1 || !bind(x, *ys.begin())) return std::nullopt;
      }
      for (const auto& y : m.postset(t)) {
        if (!m.is_internal(y)) continue;
        NodeId target;
        for (const auto& z : n.postset(u))
          if (n.is_internal(z)) target = z;
        if (target.empty() || !bind(y, target)) return std::nullopt;
        if (done.insert(y).second) queue.push_back(y);
      }
    }
  }
  for (const auto& x : all_nodes(m))
    if (!phi.node_map.contains(x)) {
      // Isolated interface places carry no behavior; map them by channel label.
      if (!m.is_interface(x)) return std::nullopt;
      const auto& side = m.is_input(x) ? n.outputs() : n.inputs();
      auto it = std::find_if(side.begin(), side.end(), [&](const NodeId& y) {
        return n.channel_label(y) == m.channel_label(x);
      });
      if (it == side.end()) return std::nullopt;
      phi.node_map[x] = *it;
    }
  return phi;
}

OpenNet align_client_interfaces(const LabeledPortnet& server_pn, const OpenNet& c) {
  const OpenNet& s = server_pn.open();
  auto counterpart = [&](const NodeId& x) -> NodeId {
    const auto& side = c.is_input(x) ? s.outputs() : s.inputs();
    for (const auto& y : side)
      if (s.channel_label(y) == c.channel_label(x)) return y;
    throw UsageError("client channel '" + x + "' (" + c.channel_label(x).str() +
                     ") has no matching server channel");
  };

  NodeMap rename;
  std::set<NodeId> covered;
  for (const auto* side : {&c.inputs(), &c.outputs()})
    for (const auto& x : *side) {
      const NodeId y = counterpart(x);
      if (c.has_node(y) && !c.is_interface(y))
        throw UsageError("client node '" + y + "' clashes with a server channel id");
      rename[x] = y;
      covered.insert(y);
    }

  OpenNet r = rename_nodes(c, [&](const NodeId& x) {
    auto it = rename.find(x);
    return it == rename.end() ? x : it->second;
  });
  for (const auto& y : s.inputs())
    if (!covered.contains(y)) {
      if (r.has_node(y)) throw UsageError("client node '" + y + "' clashes with a server channel id");
      r.add_output(y, s.channel_label(y));
    }
  for (const auto& y : s.outputs())
    if (!covered.contains(y)) {
      if (r.has_node(y)) throw UsageError("client node '" + y + "' clashes with a server channel id");
      r.add_input(y, s.channel_label(y));
    }
  return r;
}

}  // namespace portnet
