#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "generator.hpp"
#include "oracles.hpp"
#include "portnet/patterns.hpp"
#include "portnet/verify.hpp"
#include "portnet/wellformed.hpp"

using namespace portnet;

namespace {

NetSystem with_mirror(const LabeledPortnet& s, const Mirror& m) {
  return compose_system({{"server", s.open()}, {"client", m.client.open()}});
}

NetSystem with_full_mirror(const LabeledPortnet& s) { return with_mirror(s, derive_full_mirror(s)); }

}  // namespace

TEST_CASE("explore the ping composition") {
  const NetSystem sys = with_full_mirror(test::ping());
  const auto g = explore(sys, {1000, 4});
  CHECK(g.complete());
  CHECK(g.size() == 5);
  CHECK(g.edge_count() == 4);
  CHECK(g.marking(g.root()) == sys.m0);

  const auto o = test::oracle::reach(sys.net, sys.m0);
  CHECK(o.states.size() == g.size());

  for (const auto& e : g.edges()) CHECK(fire(sys.net, g.marking(e.from), e.transition) == g.marking(e.to));

  CHECK(explore(skeleton_system(test::ping().open())).size() == 3);

  const auto capped = explore(sys, {2, 4});
  CHECK_FALSE(capped.complete());
  CHECK(capped.status() == ExplorationStatus::state_bound_exceeded);
  CHECK_THROWS_AS(check_weak_termination(capped, sys.mf), Inconclusive);
  CHECK_THROWS_AS(explore(sys, {0, 4}), UsageError);
  CHECK_THROWS_AS(explore(sys, {10, 0}), UsageError);
}

TEST_CASE("token cap reports the offending place") {
  // A generator loop: g keeps adding tokens to x.
  NetSystem sys;
  sys.net.add_place("p");
  sys.net.add_place("x");
  sys.net.add_transition("g", Label("gen"));
  sys.net.add_arc("p", "g");
  sys.net.add_arc("g", "p");
  sys.net.add_arc("g", "x");
  sys.m0 = {{"p", 1}};
  const auto g = explore(sys, {1000, 3});
  CHECK(g.status() == ExplorationStatus::token_bound_exceeded);
  REQUIRE(g.offending_place());
  CHECK(*g.offending_place() == "x");
  REQUIRE(g.offending_state());
  const Trace t = g.trace_to(*g.offending_state());
  CHECK(t.steps.size() == 4);
  CHECK(replay(sys, t).count("x") == 4);
}

TEST_CASE("exploration is deterministic") {
  const NetSystem sys = with_full_mirror(test::race());
  const auto a = explore(sys), b = explore(sys);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.state(i) == b.state(i));
  const auto ea = a.edges(), eb = b.edges();
  REQUIRE(ea.size() == eb.size());
  for (std::size_t i = 0; i < ea.size(); ++i) CHECK(ea[i].transition == eb[i].transition);
}

TEST_CASE("weak termination") {
  const NetSystem ping = with_full_mirror(test::ping());
  CHECK(check_weak_termination(explore(ping), ping.mf).ok);

  const NetSystem lv = with_full_mirror(test::loopviol());
  const auto g = explore(lv);
  const auto v = check_weak_termination(g, lv.mf);
  CHECK_FALSE(v.ok);
  REQUIRE(v.state);
  CHECK(replay(lv, v.trace) == g.marking(*v.state));
  CHECK_FALSE(test::oracle::weakly_terminating(lv.net, lv.m0, lv.mf));

  const NetSystem empty;
  CHECK(check_weak_termination(explore(empty), empty.mf).ok);
}

TEST_CASE("deadlocks") {
  const NetSystem ping = with_full_mirror(test::ping());
  CHECK(find_deadlocks(explore(ping), ping.mf).empty());

  const NetSystem lv = with_full_mirror(test::loopviol());
  const auto g = explore(lv);
  const auto dls = find_deadlocks(g, lv.mf);
  REQUIRE_FALSE(dls.empty());
  for (const auto& d : dls) {
    const Marking stuck = replay(lv, d.trace);
    CHECK(stuck == g.marking(*d.state));
    CHECK(enabled(lv.net, stuck).empty());
  }
  CHECK(dls.size() == test::oracle::dead_markings(lv.net, lv.m0, lv.mf).size());

  // Cyclic race server with two unsynchronized full mirrors.
  const auto race = test::race();
  const NetSystem cyclic = build_unsynchronized(race, {derive_full_mirror(race), derive_full_mirror(race)});
  CHECK_FALSE(find_deadlocks(explore(cyclic), cyclic.mf).empty());
  const auto ping_s = test::ping();
  const NetSystem two_pings =
      build_unsynchronized(ping_s, {derive_full_mirror(ping_s), derive_full_mirror(ping_s)});
  CHECK(find_deadlocks(explore(two_pings), two_pings.mf).empty());
}

TEST_CASE("shortest traces") {
  const NetSystem lv = with_full_mirror(test::loopviol());
  const auto g = explore(lv);
  const auto o = test::oracle::reach(lv.net, lv.m0);
  // BFS depth from the oracle graph.
  std::vector<int> depth(o.states.size(), -1);
  depth[0] = 0;
  std::vector<std::size_t> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& [t, j] : o.succ[queue[k]])
      if (depth[j] < 0) {
        depth[j] = depth[queue[k]] + 1;
        queue.push_back(j);
      }
  for (std::size_t i = 0; i < o.states.size(); ++i) {
    const auto gi = g.find(o.states[i]);
    REQUIRE(gi);
    CHECK(static_cast<int>(g.trace_to(*gi).steps.size()) == depth[i]);
  }
}

TEST_CASE("trace annotations") {
  const NetSystem sys = with_full_mirror(test::ping());
  const auto g = explore(sys);
  const auto f = g.find(sys.mf);
  REQUIRE(f);
  const Trace t = g.trace_to(*f);
  REQUIRE(t.steps.size() == 4);
  CHECK(t.steps[0].owner == "client");
  CHECK(t.steps[0].direction == Direction::send);
  CHECK(t.steps[0].label == Label("req"));
  CHECK(t.steps[1].owner == "server");
  CHECK(t.steps[1].direction == Direction::receive);
  CHECK(annotate(sys, t.firing()).steps.size() == 4);
  CHECK(replay(sys, t) == sys.mf);
  Trace bad = t;
  std::swap(bad.steps[0], bad.steps[1]);
  CHECK_THROWS_AS(replay(sys, bad), NotEnabled);
}

TEST_CASE("proper completion") {
  const NetSystem ping = with_full_mirror(test::ping());
  std::vector<NodeId> fins;
  for (const auto& [p, k] : ping.mf) fins.push_back(p);
  REQUIRE(fins.size() == 2);
  CHECK(check_proper_completion(explore(ping), fins[0], fins[1]).ok);

  // One extra token appears once the server has finished.
  NetSystem leaky = ping;
  leaky.net.add_place("ready");
  leaky.net.add_place("x");
  leaky.net.add_transition("leak", Label("leak"));
  leaky.net.add_arc("f", "leak");
  leaky.net.add_arc("ready", "leak");
  leaky.net.add_arc("leak", "f");
  leaky.net.add_arc("leak", "x");
  leaky.m0.insert("ready");
  const auto g = explore(leaky);
  const auto v = check_proper_completion(g, fins[0], fins[1]);
  CHECK_FALSE(v.ok);
  REQUIRE(v.state);
  const Marking bad = g.marking(*v.state);
  CHECK(bad.count(fins[0]) == 1);
  CHECK(bad.count(fins[1]) == 1);
  CHECK(bad.count("ready") + bad.count("x") == 1);
  CHECK(replay(leaky, v.trace) == bad);

  const NetSystem skel = skeleton_system(test::ping().open());
  CHECK(check_proper_completion(explore(skel), "i", "f").ok);
}

TEST_CASE("linear invariants") {
  const NetSystem skel = skeleton_system(test::ping().open());
  const auto g = explore(skel);
  const auto vs = check_linear_invariants(
      g, {{"two", {{"i", 1}}, Relation::eq, 2}, {"one", {{"i", 1}, {"p", 1}, {"f", 1}}, Relation::eq, 1}});
  REQUIRE(vs.size() == 2);
  CHECK_FALSE(vs[0].holds);
  CHECK(vs[0].first_violation == std::size_t{0});
  CHECK(vs[1].holds);
  CHECK_THROWS_AS(check_linear_invariants(g, {{"empty", {}, Relation::leq, 0}}), UsageError);
}

TEST_CASE("commutation properties") {
  for (const auto& s : {test::ping(), test::race()}) {
    const NetSystem sys = with_full_mirror(s);
    const auto g = explore(sys);
    const auto v = check_commutation(g, partition_by_owner(sys, "server"));
    CHECK(v.ok);
    CHECK_FALSE(v.misuse);
  }

  // A send tagged as a receive.
  NetSystem sys = with_full_mirror(test::ping());
  sys.tags["t2"].direction = Direction::receive;
  const auto v = check_commutation(explore(sys), partition_by_owner(sys, "server"));
  CHECK_FALSE(v.ok);
  CHECK(v.misuse);
}

TEST_CASE("commutation finds broken diamonds") {
  const NetSystem sys = with_full_mirror(test::race_broken_diamond());
  const auto v = check_commutation(explore(sys), partition_by_owner(sys, "server"));
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.misuse);
  CHECK(v.property == "diamond");
}

TEST_CASE("well-formed server and mirror: termination, alignment, homing") {
  std::mt19937_64 rng(2024);
  test::GenOptions opts;
  opts.diamond_motif = true;
  int checked = 0;
  for (int k = 0; k < 25; ++k) {
    const auto s = test::random_well_formed(rng, opts);
    REQUIRE(s);
    const Mirror m = derive_full_mirror(*s);
    const NetSystem sys = with_mirror(*s, m);
    const auto g = explore(sys);
    REQUIRE(g.complete());
    CHECK(check_weak_termination(g, sys.mf).ok);
    CHECK(check_proper_completion(g, s->fin_place(), m.client.fin_place()).ok);
    CHECK(check_alignment(g, *s, m.client, m.phi).ok);
    CHECK(check_homing(g, *s, m.client, m.phi).ok);
    CHECK(check_commutation(g, partition_by_owner(sys, "server")).ok);
    CHECK(test::oracle::weakly_terminating(sys.net, sys.m0, sys.mf));
    ++checked;
  }
  CHECK(checked == 25);
}

TEST_CASE("alignment fails without well-formedness") {
  const auto lv = test::loopviol();
  const Mirror m = derive_full_mirror(lv);
  const auto g = explore(with_mirror(lv, m));
  CHECK_FALSE(check_alignment(g, lv, m.client, m.phi).ok);
}

TEST_CASE("find_state") {
  const NetSystem sys = with_full_mirror(test::ping());
  const auto g = explore(sys);
  const auto i = find_state(g, [](const Marking& m) { return m.count("out_ack") == 1; });
  REQUIRE(i);
  CHECK(g.trace_to(*i).steps.size() == 3);
  CHECK_FALSE(find_state(g, [](const Marking& m) { return m.total() == 0; }));
}
