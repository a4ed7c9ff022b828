#include <string>

#include "portnet/patterns.hpp"
#include "portnet/wellformed.hpp"

namespace portnet {

namespace {

std::string idx(const std::string& base, std::size_t j) { return base + "_" + std::to_string(j); }

OpenNet sync_server() {
  OpenNet s;
  for (const char* p : {"i", "p", "q", "r"}) s.add_place(p);
  s.add_input("a1", Label("request"));
  s.add_output("a2", Label("grant"));
  s.add_input("a3", Label("release"));
  s.add_transition("u", Label("request"));
  s.add_transition("v", Label("grant"));
  s.add_transition("w", Label("release"));
  using Arcs = std::initializer_list<std::pair<const char*, const char*>>;
  for (auto [x, y] : Arcs{{"i", "u"}, {"a1", "u"}, {"u", "p"}, {"p", "v"}, {"v", "q"}, {"v", "a2"},
                           {"q", "w"}, {"a3", "w"}, {"w", "r"}})
    s.add_arc(x, y);
  s.add_init("i");
  s.add_fin("r");
  return closure(s, "t");
}

OpenNet sync_client(std::size_t j) {
  OpenNet c;
  for (const char* p : {"i", "p", "q", "r"}) c.add_place(idx(p, j));
  c.add_output("a1", Label("request"));
  c.add_input("a2", Label("grant"));
  c.add_output("a3", Label("release"));
  c.add_transition(idx("u", j), Label("request"));
  c.add_transition(idx("v", j), Label("grant"));
  c.add_transition(idx("w", j), Label("release"));
  c.add_arc(idx("i", j), idx("u", j));
  c.add_arc(idx("u", j), idx("p", j));
  c.add_arc(idx("u", j), "a1");
  c.add_arc(idx("p", j), idx("v", j));
  c.add_arc("a2", idx("v", j));
  c.add_arc(idx("v", j), idx("q", j));
  c.add_arc(idx("q", j), idx("w", j));
  c.add_arc(idx("w", j), idx("r", j));
  c.add_arc(idx("w", j), "a3");
  c.add_init(idx("i", j));
  c.add_fin(idx("r", j));
  return c;
}

Marking handshake_m0(std::size_t n) {
  Marking m{{"i", 1}};
  for (std::size_t j = 1; j <= n; ++j) m.insert(idx("i", j));
  return m;
}

Marking handshake_mf(std::size_t n) {
  Marking m{{"i", 1}};
  for (std::size_t j = 1; j <= n; ++j) m.insert(idx("r", j));
  return m;
}

std::size_t sum_q(const Marking& m, std::size_t n) {
  std::size_t s = 0;
  for (std::size_t j = 1; j <= n; ++j) s += m.count(idx("q", j));
  return s;
}

// Internal nodes get `prefix`; interface places go through `iface`.
OpenNet embed(const OpenNet& n, const std::string& prefix, const NodeMap& iface) {
  return rename_nodes(n, [&](const NodeId& x) {
    if (!n.is_interface(x)) return prefix + x;
    auto it = iface.find(x);
    return it == iface.end() ? x : it->second;
  });
}

std::vector<Component> sync_components(const OpenNet& server, const std::vector<OpenNet>& clients) {
  std::vector<Component> cs{{"server", server}};
  for (std::size_t j = 0; j < clients.size(); ++j) cs.push_back({idx("client", j + 1), clients[j]});
  return cs;
}

}  // namespace

SyncPattern build_sync_pattern(std::size_t n) {
  if (n < 1) throw UsageError("a synchronization pattern needs at least one client");
  SyncPattern sp;
  sp.n = n;
  sp.server = sync_server();
  sp.server_refinable = "q";
  for (std::size_t j = 1; j <= n; ++j) {
    sp.clients.push_back(sync_client(j));
    sp.client_refinables.push_back(idx("q", j));
  }
  sp.system = compose_system(sync_components(sp.server, sp.clients), handshake_m0(n), handshake_mf(n));
  return sp;
}

std::vector<LinearInvariant> sync_invariants(std::size_t n) {
  std::vector<LinearInvariant> out;
  out.push_back({"1", {{"i", 1}, {"p", 1}, {"q", 1}, {"r", 1}}, Relation::eq, 1});
  for (std::size_t j = 1; j <= n; ++j)
    out.push_back({"2." + std::to_string(j),
                   {{idx("i", j), 1}, {idx("p", j), 1}, {idx("q", j), 1}, {idx("r", j), 1}},
                   Relation::eq,
                   1});
  LinearInvariant third{"3", {{"a1", -1}, {"p", -1}, {"a2", -1}}, Relation::eq, 0};
  LinearInvariant fourth{"4", {{"a2", 1}}, Relation::leq, 1};
  LinearInvariant fifth_b{"5b", {{"a2", 1}, {"a3", 1}, {"q", -1}}, Relation::eq, 0};
  for (std::size_t j = 1; j <= n; ++j) {
    third.terms[idx("p", j)] = 1;
    fourth.terms[idx("q", j)] = 1;
    fifth_b.terms[idx("q", j)] = 1;
  }
  out.push_back(third);
  out.push_back(fourth);
  out.push_back({"5a", {{"a2", 1}, {"a3", 1}}, Relation::leq, 1});
  out.push_back(fifth_b);
  return out;
}

bool sync_server_exclusive(const Marking& m, std::size_t n) {
  return m.count("q") != 1 || sum_q(m, n) <= 1;
}

bool sync_client_implies_server(const Marking& m, std::size_t n) {
  return sum_q(m, n) != 1 || m.count("q") == 1;
}

OpenNet refine_place(const OpenNet& host, const NodeId& p, const OpenNet& inner) {
  if (!host.is_internal(p))
    throw PatternError("REF-MISSING", "cannot refine '" + p + "'",
                       {{"REF-MISSING", "host has no internal place '" + p + "'", {p}, "name an internal place"}});
  if (host.init().contains(p) || host.fin().contains(p))
    throw PatternError("REF-INITFIN", "cannot refine '" + p + "'",
                       {{"REF-INITFIN", "place is an initial or final place of the host", {p},
                         "refine a place strictly between init and fin"}});
  if (inner.init().empty() || inner.fin().empty())
    throw PatternError("REF-EMPTY", "cannot refine '" + p + "'",
                       {{"REF-EMPTY", "inner net has no initial or final place", {},
                         "give the inner net init and fin places"}});
  std::vector<std::string> shared;
  for (const auto* xs : {&inner.net().places(), &inner.transitions()})
    for (const auto& x : *xs)
      if (host.has_node(x)) shared.push_back(x);
  if (!shared.empty())
    throw PatternError("REF-OVERLAP", "cannot refine '" + p + "'",
                       {{"REF-OVERLAP", "host and inner net share node ids", shared,
                         "rename the inner net apart first"}});

  OpenNet r;
  for (const auto& x : host.places())
    if (x != p) r.add_place(x);
  for (const auto& x : inner.places()) r.add_place(x);
  for (const auto& x : host.inputs()) r.add_input(x, host.channel_label(x));
  for (const auto& x : inner.inputs()) r.add_input(x, inner.channel_label(x));
  for (const auto& x : host.outputs()) r.add_output(x, host.channel_label(x));
  for (const auto& x : inner.outputs()) r.add_output(x, inner.channel_label(x));
  for (const auto& t : host.transitions()) r.add_transition(t, host.label(t));
  for (const auto& t : inner.transitions()) r.add_transition(t, inner.label(t));
  for (const auto& [x, y] : host.arcs())
    if (x != p && y != p) r.add_arc(x, y);
  for (const auto& [x, y] : inner.arcs()) r.add_arc(x, y);
  for (const auto& t : host.preset(p))
    for (const auto& s : inner.init()) r.add_arc(t, s);
  for (const auto& f : inner.fin())
    for (const auto& t : host.postset(p)) r.add_arc(f, t);
  for (const auto& x : host.init()) r.add_init(x);
  for (const auto& x : host.fin()) r.add_fin(x);
  return r;
}

std::string client_prefix(std::size_t j) { return "cl" + std::to_string(j) + "_"; }

NetSystem build_pmpp(const LabeledPortnet& server, const std::vector<Mirror>& mirrors, ExplorationCaps caps) {
  std::vector<Diagnostic> ds;
  if (mirrors.empty())
    ds.push_back({"PMPP-N", "the pattern needs at least one mirror", {}, "pass one or more clients"});

  const auto wf = check_well_formed(server);
  if (!wf.well_formed) {
    std::vector<std::string> nodes;
    for (const auto* v : {&wf.observable_choices, &wf.diamond, &wf.loop})
      for (const auto& d : v->violations) nodes.insert(nodes.end(), d.nodes.begin(), d.nodes.end());
    ds.push_back({"PMPP-SERVER-WF", "server is not well-formed", nodes,
                  "fix the observable-choice, diamond and loop violations first"});
  }
  const NetSystem skel = skeleton_system(server.open());
  const auto g = explore(skel, caps);
  if (!g.complete() || !check_weak_termination(g, skel.mf).ok)
    ds.push_back({"PMPP-SERVER-WT", "server skeleton is not weakly terminating", {},
                  "make the final state reachable from every state"});
  for (std::size_t j = 0; j < mirrors.size(); ++j) {
    auto md = validate_partial_mirror(server, mirrors[j].client, mirrors[j].phi);
    if (!md.empty())
      ds.push_back({"PMPP-MIRROR", "client #" + std::to_string(j + 1) + " is not a partial mirror (" +
                                       md.front().code + ": " + md.front().message + ")",
                    md.front().nodes, "derive clients with the mirror command"});
  }
  if (!ds.empty()) {
    std::string code = ds.front().code;
    throw PatternError(std::move(code), "pattern preconditions failed", std::move(ds));
  }

  const std::size_t n = mirrors.size();
  const OpenNet refined_server = refine_place(sync_server(), "q", embed(server.open(), kServerPrefix, {}));
  std::vector<OpenNet> refined_clients;
  for (std::size_t j = 1; j <= n; ++j) {
    const Mirror& m = mirrors[j - 1];
    NodeMap iface;
    for (const auto* side : {&m.client.open().inputs(), &m.client.open().outputs()})
      for (const auto& x : *side) iface[x] = m.phi(x);
    refined_clients.push_back(
        refine_place(sync_client(j), idx("q", j), embed(m.client.open(), client_prefix(j), iface)));
  }
  return compose_system(sync_components(refined_server, refined_clients), handshake_m0(n), handshake_mf(n));
}

NetSystem build_unsynchronized(const LabeledPortnet& server, const std::vector<Mirror>& mirrors) {
  if (mirrors.empty()) throw UsageError("at least one mirror is required");
  const OpenNet s = closure(embed(server.open(), kServerPrefix, {}));
  std::vector<Component> cs{{"server", s}};
  Marking m0 = Marking::from_set(s.init());
  Marking mf = Marking::from_set(s.init());
  for (std::size_t j = 1; j <= mirrors.size(); ++j) {
    const Mirror& m = mirrors[j - 1];
    NodeMap iface;
    for (const auto* side : {&m.client.open().inputs(), &m.client.open().outputs()})
      for (const auto& x : *side) iface[x] = m.phi(x);
    OpenNet c = embed(m.client.open(), client_prefix(j), iface);
    m0 += Marking::from_set(c.init());
    mf += Marking::from_set(c.fin());
    cs.push_back({idx("client", j), std::move(c)});
  }
  return compose_system(cs, m0, mf);
}

}  // namespace portnet
