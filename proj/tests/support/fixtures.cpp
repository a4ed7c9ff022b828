#include "fixtures.hpp"

namespace portnet::test {

void Builder::place(const NodeId& p) {
  if (!n_.has_node(p)) n_.add_place(p);
}

Builder& Builder::input(const std::string& label) {
  if (!n_.has_node("in_" + label)) n_.add_input("in_" + label, Label(label));
  return *this;
}

Builder& Builder::output(const std::string& label) {
  if (!n_.has_node("out_" + label)) n_.add_output("out_" + label, Label(label));
  return *this;
}

void Builder::step(const NodeId& t, const std::string& label, const NodeId& from, const NodeId& to) {
  place(from);
  place(to);
  n_.add_transition(t, Label(label));
  n_.add_arc(from, t);
  n_.add_arc(t, to);
}

Builder& Builder::send(const NodeId& t, const std::string& label, const NodeId& from, const NodeId& to) {
  output(label);
  step(t, label, from, to);
  n_.add_arc(t, "out_" + label);
  return *this;
}

Builder& Builder::recv(const NodeId& t, const std::string& label, const NodeId& from, const NodeId& to) {
  input(label);
  step(t, label, from, to);
  n_.add_arc("in_" + label, t);
  return *this;
}

Builder& Builder::tau(const NodeId& t, const std::string& label, const NodeId& from, const NodeId& to) {
  step(t, label, from, to);
  return *this;
}

Builder& Builder::init(const NodeId& p) {
  place(p);
  n_.add_init(p);
  return *this;
}

Builder& Builder::fin(const NodeId& p) {
  place(p);
  n_.add_fin(p);
  return *this;
}

LabeledPortnet ping() {
  return Builder().init("i").fin("f").recv("t1", "req", "i", "p").send("t2", "ack", "p", "f").build();
}

LabeledNet ping_skeleton() {
  LabeledNet n;
  for (const char* p : {"i", "p", "f"}) n.add_place(p);
  n.add_transition("t1", Label("req"));
  n.add_transition("t2", Label("ack"));
  n.add_arc("i", "t1");
  n.add_arc("t1", "p");
  n.add_arc("p", "t2");
  n.add_arc("t2", "f");
  return n;
}

LabeledPortnet race() {
  return Builder()
      .init("r")
      .fin("f")
      .send("t_n1", "notify", "r", "a")
      .recv("t_c1", "cmd", "r", "b")
      .recv("t_c2", "cmd", "a", "c")
      .send("t_n2", "notify", "b", "c")
      .send("t_d", "done", "c", "f")
      .build();
}

LabeledPortnet race_broken_diamond() {
  return Builder()
      .init("r")
      .fin("f")
      .send("t_n1", "notify", "r", "a")
      .recv("t_c1", "cmd", "r", "b")
      .recv("t_c2", "cmd", "a", "c")
      .send("t_n2", "notify", "b", "c2")
      .send("t_d", "done", "c", "f")
      .send("t_o", "other", "c2", "f")
      .build();
}

LabeledPortnet loopviol() {
  return Builder()
      .init("p")
      .fin("f")
      .send("ta", "a", "p", "x")
      .send("tb", "b", "p", "y")
      .send("tb2", "b", "x", "z")
      .recv("tc", "c", "z", "f")
      .recv("tc2", "c", "y", "f")
      .build();
}

LabeledPortnet loopviol_sync() {
  return Builder()
      .init("p")
      .fin("f")
      .send("ta", "a", "p", "x")
      .send("tb", "b", "p", "y")
      .recv("ts", "sync", "x", "x2")
      .send("tb2", "b", "x2", "z")
      .recv("tc", "c", "z", "f")
      .recv("tc2", "c", "y", "f")
      .build();
}

LabeledPortnet with_prefix(const LabeledPortnet& pn, std::size_t k) {
  if (k == 0) return pn;
  const OpenNet& n = pn.open();
  const NodeId old_init = pn.init_place();
  OpenNet r;
  for (const auto& p : n.places()) r.add_place(p);
  for (const auto& p : n.inputs()) r.add_input(p, n.channel_label(p));
  for (const auto& p : n.outputs()) r.add_output(p, n.channel_label(p));
  for (const auto& t : n.transitions()) r.add_transition(t, n.label(t));
  for (const auto& [x, y] : n.arcs()) r.add_arc(x, y);
  r.add_fin(pn.fin_place());
  NodeId cur = "h0";
  r.add_place(cur);
  r.add_init(cur);
  for (std::size_t j = 1; j <= k; ++j) {
    const std::string e = "e" + std::to_string(j), f = "f" + std::to_string(j);
    const NodeId mid = "m" + std::to_string(j);
    const NodeId next = j == k ? old_init : "h" + std::to_string(j);
    if (!r.has_node(mid)) r.add_place(mid);
    if (!r.has_node(next)) r.add_place(next);
    r.add_input("in_" + e, Label(e));
    r.add_output("out_" + f, Label(f));
    r.add_transition("pe" + std::to_string(j), Label(e));
    r.add_transition("pf" + std::to_string(j), Label(f));
    r.add_arc(cur, "pe" + std::to_string(j));
    r.add_arc("in_" + e, "pe" + std::to_string(j));
    r.add_arc("pe" + std::to_string(j), mid);
    r.add_arc(mid, "pf" + std::to_string(j));
    r.add_arc("pf" + std::to_string(j), next);
    r.add_arc("pf" + std::to_string(j), "out_" + f);
    cur = next;
  }
  return LabeledPortnet::from(std::move(r));
}

LabeledPortnet drop_example() {
  return Builder()
      .init("i")
      .fin("f")
      .recv("tgo", "go", "i", "p")
      .send("ta1", "a", "p", "f")
      .recv("tb", "b", "p", "q")
      .send("ta2", "a", "q", "f")
      .build();
}

LabeledPortnet partial_mirror_witness() {
  return Builder()
      .init("p")
      .fin("f")
      .send("sp", "s", "p", "a")
      .recv("rp", "r", "p", "b")
      .recv("ra", "r", "a", "c")
      .recv("xa", "x", "a", "f")
      .send("sb", "s", "b", "c")
      .send("dc", "done", "c", "f")
      .build();
}

LabeledPortnet unobservable() {
  return Builder()
      .init("p")
      .fin("f")
      .send("t1", "x", "p", "q")
      .send("t2", "x", "p", "r")
      .recv("t3", "y", "q", "f")
      .recv("t4", "z", "r", "f")
      .build();
}

Triple non_associative_triple() {
  Triple tr;
  tr.a.add_place("a0");
  tr.a.add_input("x", Label("x"));
  tr.a.add_transition("ta", Label("x"));
  tr.a.add_arc("x", "ta");
  tr.a.add_arc("a0", "ta");

  tr.b.add_place("b0");
  tr.b.add_output("x", Label("x"));
  tr.b.add_transition("tb", Label("x"));
  tr.b.add_arc("b0", "tb");
  tr.b.add_arc("tb", "x");

  tr.c.add_place("c0");
  tr.c.add_input("x", Label("x"));
  tr.c.add_transition("tc", Label("x"));
  tr.c.add_arc("x", "tc");
  tr.c.add_arc("c0", "tc");
  return tr;
}

}  // namespace portnet::test
