#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "generator.hpp"
#include "portnet/net.hpp"

using namespace portnet;
using portnet::test::ping_skeleton;

TEST_CASE("bag arithmetic") {
  using B = Bag<std::string>;
  CHECK(B{{"p", 1}} + B{{"p", 2}} == B{{"p", 3}});
  CHECK(B{{"p", 1}}.leq(B{{"p", 1}, {"q", 1}}));
  CHECK_FALSE(B{{"p", 2}}.leq(B{{"p", 1}, {"q", 1}}));
  CHECK_THROWS_AS((B{{"p", 1}} - B{{"p", 2}}), BagUnderflow);

  B a{{"p", 1}};
  CHECK_THROWS_AS((a -= B{{"p", 1}, {"q", 1}}), BagUnderflow);
  CHECK(a == B{{"p", 1}});

  B z{{"p", 0}, {"q", 2}};
  CHECK(z.distinct() == 1);
  CHECK((B{{"p", 2}} - B{{"p", 2}}).empty());
  CHECK(B{{"p", 2}, {"q", 1}}.total() == 3);
}

TEST_CASE("bag laws on random bags") {
  using B = Bag<std::string>;
  std::mt19937_64 rng(7);
  auto rnd = [&] {
    B b;
    for (const char* k : {"a", "b", "c"}) b.insert(k, rng() % 3);
    return b;
  };
  for (int i = 0; i < 200; ++i) {
    const B x = rnd(), y = rnd(), z = rnd();
    CHECK(x + y == y + x);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x.leq(x));
    if (x.leq(y) && y.leq(x)) CHECK(x == y);
    if (x.leq(y) && y.leq(z)) CHECK(x.leq(z));
    CHECK((x + y) - y == x);
  }
}

TEST_CASE("labels are identifiers") {
  CHECK(Label::is_valid("req_1"));
  CHECK_FALSE(Label::is_valid(""));
  CHECK_FALSE(Label::is_valid("a-b"));
  CHECK_THROWS_AS(Label("a b"), UsageError);
}

TEST_CASE("net construction rejects malformed input") {
  LabeledNet n;
  n.add_place("p");
  n.add_transition("t", Label("x"));
  CHECK_THROWS(n.add_place("t"));
  CHECK_THROWS(n.add_arc("p", "p"));
  CHECK_THROWS(n.add_arc("p", "missing"));
  CHECK_THROWS_AS(n.preset("missing"), NotFound);
}

TEST_CASE("preset and postset on the ping skeleton") {
  const LabeledNet n = ping_skeleton();
  CHECK(n.preset("t1") == std::set<NodeId>{"i"});
  CHECK(n.postset("p") == std::set<NodeId>{"t2"});
  CHECK(n.preset("i").empty());
}

TEST_CASE("enabledness and firing") {
  const LabeledNet n = ping_skeleton();
  CHECK(enabled(n, {{"i", 1}}) == std::set<NodeId>{"t1"});
  CHECK(enabled(n, {{"f", 1}}).empty());
  // t1 needs i, t2 needs p: both are covered.
  CHECK(enabled(n, {{"i", 1}, {"p", 1}}) == std::set<NodeId>{"t1", "t2"});

  CHECK(fire(n, {{"i", 1}}, "t1") == Marking{{"p", 1}});
  CHECK_THROWS_AS(fire(n, {{"i", 1}}, "t2"), NotEnabled);
  CHECK(fire(n, {{"i", 2}}, "t1") == Marking{{"i", 1}, {"p", 1}});
  CHECK_THROWS_AS(require_valid_marking(n, {{"zz", 1}}), NotFound);
}

TEST_CASE("firing satisfies the marking equation and preserves S-net token count") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto pn = test::random_portnet(rng, {});
    const OpenNet sk = skeleton(pn.open());
    const LabeledNet& net = sk.net();
    Marking m;
    for (const auto& p : net.places()) m.insert(p, rng() % 2);
    for (const auto& t : enabled(net, m)) {
      const Marking m2 = fire(net, m, t);
      for (const auto& p : net.places()) {
        const long long expect = static_cast<long long>(m.count(p)) - (net.preset(t).contains(p) ? 1 : 0) +
                                 (net.postset(t).contains(p) ? 1 : 0);
        CHECK(static_cast<long long>(m2.count(p)) == expect);
      }
      CHECK(m2.total() == m.total());
    }
  }
}

TEST_CASE("structure report") {
  const LabeledNet n = ping_skeleton();
  const auto r = analyze_structure(n);
  CHECK(r.is_s_net);
  CHECK(r.is_wfn);
  CHECK(r.initial_place == NodeId("i"));
  CHECK(r.final_place == NodeId("f"));
  CHECK(r.splits.empty());
  CHECK(r.joins.empty());
  CHECK_FALSE(r.is_strongly_connected);

  LabeledNet wide = n;
  wide.add_place("g");
  wide.add_arc("t2", "g");
  CHECK_FALSE(analyze_structure(wide).is_s_net);

  // f feeds t1: no place is left without outgoing arcs.
  LabeledNet looped = n;
  looped.add_arc("f", "t1");
  const auto lr = analyze_structure(looped);
  CHECK_FALSE(lr.is_wfn);
  CHECK_FALSE(lr.final_place.has_value());

  LabeledNet cyc = n;
  cyc.add_transition("back", Label("back"));
  cyc.add_arc("f", "back");
  cyc.add_arc("back", "i");
  CHECK(analyze_structure(cyc).is_strongly_connected);
}

TEST_CASE("isomorphism") {
  const LabeledNet n = ping_skeleton();
  const auto id = find_isomorphism(n, n);
  REQUIRE(id);
  for (const auto& [x, y] : *id) CHECK(x == y);

  LabeledNet nack = n;
  nack.relabel("t2", Label("nack"));
  CHECK_FALSE(find_isomorphism(n, nack));

  LabeledNet renamed;
  for (const char* p : {"A", "B", "C"}) renamed.add_place(p);
  renamed.add_transition("X", Label("req"));
  renamed.add_transition("Y", Label("ack"));
  renamed.add_arc("A", "X");
  renamed.add_arc("X", "B");
  renamed.add_arc("B", "Y");
  renamed.add_arc("Y", "C");
  const auto psi = find_isomorphism(n, renamed);
  REQUIRE(psi);
  CHECK(*psi == NodeMap{{"i", "A"}, {"p", "B"}, {"f", "C"}, {"t1", "X"}, {"t2", "Y"}});
}

TEST_CASE("isomorphism is reflexive and symmetric on random nets") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 60; ++k) {
    const LabeledNet a = test::random_portnet(rng, {}).open().net();
    const LabeledNet b = test::random_portnet(rng, {}).open().net();
    CHECK(find_isomorphism(a, a).has_value());
    CHECK(find_isomorphism(a, b).has_value() == find_isomorphism(b, a).has_value());
    const OpenNet copy = rename_nodes(test::random_portnet(rng, {}).open(), [](const NodeId& x) { return "z_" + x; });
    const LabeledNet& c = copy.net();
    LabeledNet orig;
    for (const auto& p : c.places()) orig.add_place(p.substr(2));
    for (const auto& t : c.transitions()) orig.add_transition(t.substr(2), c.label(t));
    for (const auto& [x, y] : c.arcs()) orig.add_arc(x.substr(2), y.substr(2));
    const auto psi = find_isomorphism(orig, c);
    REQUIRE(psi);
    for (const auto& [x, y] : orig.arcs()) CHECK(c.has_arc(psi->at(x), psi->at(y)));
    for (const auto& t : orig.transitions()) CHECK(c.label(psi->at(t)) == orig.label(t));
  }
}
