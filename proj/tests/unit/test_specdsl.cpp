#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "portnet/specdsl.hpp"
#include "portnet/wellformed.hpp"

using namespace portnet;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return slurp(std::filesystem::path(PORTNET_TEST_DATA) / name); }

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(PORTNET_TEST_DATA) / "corpus"))
    if (e.path().extension() == ".ifs") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

const char* kPing = R"(signature IPing {
  signals req
  notifications ack
}
interface Ping {
  initial state Idle { on req do ack goto Done }
  final state Done {}
}
)";

Diagnostic first_error(std::string_view text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    REQUIRE_FALSE(e.diagnostics().empty());
    return e.diagnostics().front();
  }
  FAIL("expected a parse error");
  return {};
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse the ping interface") {
  const auto s = parse_spec(kPing);
  CHECK(s.signature == "IPing");
  CHECK(s.name == "Ping");
  CHECK(s.signals == std::vector<Label>{Label("req")});
  CHECK(s.notifications == std::vector<Label>{Label("ack")});
  REQUIRE(s.states.size() == 2);
  CHECK(s.initial == "Idle");
  CHECK(s.final_state == "Done");
  REQUIRE(s.states[0].transitions.size() == 1);
  const auto& t = s.states[0].transitions[0];
  CHECK(t.kind == TransitionKind::triggered);
  CHECK(t.trigger == Label("req"));
  CHECK(t.effects == std::vector<Label>{Label("ack")});
  CHECK(t.next == "Done");
  CHECK(t.line == 6);
  CHECK(check_spec(s).empty());
  CHECK(parse_spec(data("ping.ifs")) == s);
}

TEST_CASE("parse errors carry codes and positions") {
  auto d = first_error(R"(signature S { signals a notifications b }
interface I {
  initial state A { on zz goto F }
  final state F {}
})");
  CHECK(d.code == "DSL-UNKNOWN-EVENT");
  CHECK(d.line == 3);
  CHECK(d.column > 0);

  d = first_error(R"(signature S { signals a notifications b }
interface I {
  initial state A { on a goto F }
  initial state B { on a goto F }
  final state F {}
})");
  CHECK(d.code == "DSL-INITIAL");
  CHECK(d.line == 4);
  CHECK(d.nodes == std::vector<std::string>{"B"});

  d = first_error("signature S { signals a notifications b }\ninterface I {\n  initial state A { on a goto }\n}");
  CHECK(d.code == "DSL-SYNTAX");
  CHECK(d.line == 3);
  CHECK(d.column == 31);

  CHECK(first_error("signature S { signals a notifications b } /* open").code == "DSL-LEX");
  CHECK(first_error("signature S { signals a notifications a }\ninterface I { initial state A { on a goto F } final state F {} }").code ==
        "DSL-OVERLAP");
  CHECK(first_error(R"(signature S { signals a notifications b }
interface I { initial state A { on b goto F } final state F {} })")
            .code == "DSL-KIND");
  CHECK(first_error(R"(signature S { signals a notifications b }
interface I { initial state A { on a goto G } final state F {} })")
            .code == "DSL-UNKNOWN-STATE");
  CHECK(first_error(R"(signature S { signals a notifications b }
interface I { initial state A { on a goto F } final state F { do b goto A } })")
            .code == "DSL-FINAL-OUT");
}

TEST_CASE("check_spec on hand-built specs") {
  InterfaceSpec s = parse_spec(kPing);
  s.initial.clear();
  REQUIRE_FALSE(check_spec(s).empty());
  CHECK(check_spec(s).front().code == "DSL-INITIAL");
  CHECK_THROWS_AS(lower(s), ParseError);
  s = parse_spec(kPing);
  s.states.push_back(s.states[1]);
  CHECK(check_spec(s).front().code == "DSL-DUP-STATE");
}

TEST_CASE("lowering ping") {
  const auto n = lower(parse_spec(kPing));
  const OpenNet& o = n.open();
  CHECK(o.places() == std::set<NodeId>{"Idle", "Idle__req__1", "Done"});
  CHECK(o.inputs() == std::set<NodeId>{input_place_id(Label("req"))});
  CHECK(o.outputs() == std::set<NodeId>{output_place_id(Label("ack"))});
  CHECK(input_place_id(Label("req")) == "in_req");
  CHECK(output_place_id(Label("ack")) == "out_ack");
  CHECK(o.transitions().size() == 2);
  CHECK(n.init_place() == "Idle");
  CHECK(n.fin_place() == "Done");
  CHECK(validate_portnet(o).empty());
  CHECK(check_well_formed(n).well_formed);
  CHECK(n.direction("t1") == Direction::receive);
  CHECK(n.direction("t2") == Direction::send);
}

TEST_CASE("effects chain through intermediate places") {
  const auto n = lower(parse_spec(R"(signature S { signals go notifications a, b }
interface I {
  initial state A { on go do a, b goto F }
  final state F {}
})"));
  CHECK(n.open().transitions().size() == 3);
  CHECK(n.open().places().size() == 4);
  CHECK(n.open().places().contains("A__go__1"));
  CHECK(n.open().places().contains("A__go__2"));
}

TEST_CASE("duplicate triggers make an unobservable choice") {
  const auto n = lower(parse_spec(R"(signature S { signals go notifications a, b }
interface I {
  initial state A {
    on go do a goto F
    on go do b goto F
  }
  final state F {}
})"));
  const auto r = check_well_formed(n);
  CHECK_FALSE(r.observable_choices.passed);
  CHECK_FALSE(r.well_formed);
}

TEST_CASE("lowering is deterministic") {
  for (const auto& p : corpus()) {
    CAPTURE(p);
    const auto s = parse_spec(slurp(p));
    const auto a = lower(s), b = lower(s);
    CHECK(a.open().net().arcs() == b.open().net().arcs());
    for (const auto& t : a.open().transitions()) CHECK(a.open().label(t) == b.open().label(t));
  }
}

TEST_CASE("round trip over the corpus") {
  const auto files = corpus();
  CHECK(files.size() >= 10);
  for (const auto& p : files) {
    CAPTURE(p);
    const auto s = parse_spec(slurp(p));
    const std::string text = emit_dsl(s);
    const auto back = parse_spec(text);
    CHECK(back == s);
    CHECK(emit_dsl(back) == text);
    CHECK(find_isomorphism(lower(s).open().net(), lower(back).open().net()).has_value());
  }
}

TEST_CASE("to_spec reads a lowered net back") {
  for (const auto& p : corpus()) {
    CAPTURE(p);
    const auto n = lower(parse_spec(slurp(p)));
    const auto s = to_spec(n, "Back");
    CHECK(check_spec(s).empty());
    CHECK(find_isomorphism(lower(s).open().net(), n.open().net()).has_value());
  }
}

TEST_CASE("comments, empty lists and in all states") {
  const auto s = parse_spec(R"(// leading comment
signature S {
  signals a, stop /* inline */
  notifications
}
interface I {
  initial state A { on a goto B }
  state B { on a goto B }
  final state F {}
  in all states { on stop goto F }
})");
  CHECK(s.notifications.empty());
  CHECK(s.states[0].transitions.size() == 2);
  CHECK(s.states[1].transitions.size() == 2);
  CHECK(s.states[2].transitions.empty());
  CHECK(parse_spec(emit_dsl(s)) == s);
}

TEST_CASE("dot export") {
  const auto n = lower(parse_spec(kPing));
  const std::string dot = emit_dot(n.open(), "Ping");
  CHECK(dot.rfind("digraph \"Ping\" {", 0) == 0);
  const OpenNet& o = n.open();
  const std::size_t nodes = o.places().size() + o.inputs().size() + o.outputs().size() + o.transitions().size();
  CHECK(count(dot, "shape=") == nodes);
  CHECK(count(dot, " -> ") == o.arcs().size());
  CHECK(count(dot, "style=dashed") == o.inputs().size() + o.outputs().size() + 2);
  CHECK(count(dot, "style=bold") == 2);
  CHECK(dot.find("label=\"req?\"") != std::string::npos);
  CHECK(dot.find("label=\"ack!\"") != std::string::npos);
}

TEST_CASE("sequence diagram of the happy path") {
  const auto server = lower(parse_spec(kPing));
  const Mirror m = derive_full_mirror(server);
  const NetSystem sys = compose_system({{"server", server.open()}, {"client", m.client.open()}});
  const auto g = explore(sys);
  const auto f = g.find(sys.mf);
  REQUIRE(f);
  const std::string d = emit_seqdiag(g.trace_to(*f), sys, "done");
  CHECK(d.rfind("sequenceDiagram\n", 0) == 0);
  CHECK(count(d, "->>") == 2);
  CHECK(d.find("client->>server: req") != std::string::npos);
  CHECK(d.find("server->>client: ack") != std::string::npos);
  CHECK(d.find("client->>server: req") < d.find("server->>client: ack"));
  CHECK(d.find("participant server") < d.find("participant client"));
  CHECK(d.find("Note over server,client: done") != std::string::npos);

  // A send nobody consumes is drawn as a lost message.
  const Trace half = annotate(sys, {g.trace_to(*f).steps.front().transition});
  const std::string h = emit_seqdiag(half, sys);
  CHECK(count(h, "-x") == 1);
  CHECK(count(h, "->>") == 0);
}
