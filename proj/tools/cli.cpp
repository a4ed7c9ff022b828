#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "portnet/mirror.hpp"
#include "portnet/patterns.hpp"
#include "portnet/specdsl.hpp"
#include "portnet/verify.hpp"
#include "portnet/wellformed.hpp"

namespace portnet::cli {

namespace {

struct Io {
  std::ostream& out;
  std::ostream& err;
  bool color;

  std::string paint(const char* sgr, const std::string& s) const {
    return color ? std::string("\x1b[") + sgr + "m" + s + "\x1b[0m" : s;
  }
  void error(const std::string& msg) const { err << paint("1;31", "error") << ": " << msg << "\n"; }
  void note(const std::string& msg) const { err << paint("1;36", "note") << ": " << msg << "\n"; }
  void diagnostics(const std::vector<Diagnostic>& ds) const {
    for (const auto& d : ds) err << "  " << paint("33", to_string(d)) << "\n";
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IO", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  InterfaceSpec spec;
  LabeledPortnet net;
};

Loaded load(const std::string& path) {
  InterfaceSpec spec = parse_spec(read_file(path));
  LabeledPortnet net = lower(spec);
  return {std::move(spec), std::move(net)};
}

std::string render(const Marking& m) {
  if (m.empty()) return "(empty)";
  std::string s;
  for (const auto& [p, k] : m) {
    if (!s.empty()) s += " + ";
    if (k > 1) s += std::to_string(k) + "*";
    s += p;
  }
  return s;
}

std::string render(const Trace& t) {
  if (t.steps.empty()) return "(empty)";
  std::string s;
  for (const auto& st : t.steps) {
    if (!s.empty()) s += ", ";
    s += (st.owner.empty() ? "" : st.owner + ":") + st.label.str();
    s += st.direction == Direction::send ? "!" : st.direction == Direction::receive ? "?" : "";
  }
  return s;
}

ReachabilityGraph explore_or_throw(const NetSystem& sys, ExplorationCaps caps) {
  auto g = explore(sys, caps);
  if (!g.complete()) {
    std::string msg = "exploration stopped: " + std::string(to_string(g.status())) + " after " +
                      std::to_string(g.size()) + " states";
    if (g.offending_place())
      msg += "; place '" + *g.offending_place() + "' reached " + std::to_string(caps.max_tokens_per_place + 1) +
             " tokens via " + render(g.trace_to(*g.offending_state()));
    throw Inconclusive(msg);
  }
  return g;
}

/// Prints weak termination and deadlocks; returns whether both are clean.
bool report_termination(const Io& io, const ReachabilityGraph& g) {
  const Marking& mf = g.system().mf;
  const auto wt = check_weak_termination(g, mf);
  io.out << "weak termination: " << (wt.ok ? "ok" : "violated") << "\n";
  const auto dls = find_deadlocks(g, mf);
  io.out << "deadlocks: " << dls.size() << "\n";
  for (const auto& d : dls)
    io.out << "  deadlock at " << render(g.marking(*d.state)) << "\n    trace: " << render(d.trace) << "\n";
  if (!wt.ok && dls.empty())
    io.out << "  livelock at " << render(g.marking(*wt.state)) << "\n    trace: " << render(wt.trace) << "\n";
  return wt.ok;
}

void print_verdict(const Io& io, const char* name, const Verdict& v) {
  io.out << name << ": " << (v.passed ? "pass" : "fail") << "\n";
  io.diagnostics(v.violations);
}

int cmd_check(const Io& io, const std::string& file, bool strict, ExplorationCaps caps) {
  const Loaded l = load(file);
  io.out << "portnet '" << l.spec.name << "': valid\n";

  const NetSystem skel = skeleton_system(l.net.open());
  const auto sg = explore_or_throw(skel, caps);
  const auto swt = check_weak_termination(sg, skel.mf);
  io.out << "skeleton weak termination: " << (swt.ok ? "ok" : "violated") << "\n";
  if (!swt.ok) {
    io.error("skeleton is not weakly terminating; stuck after " + render(swt.trace));
    return violation;
  }

  const auto wf = check_well_formed(l.net, {strict});
  print_verdict(io, "observable choices", wf.observable_choices);
  print_verdict(io, "diamond", wf.diamond);
  print_verdict(io, "loop", wf.loop);
  io.out << "choice (informational): " << (wf.choice.passed ? "pass" : "fail") << "\n";
  io.out << "leg (informational): " << (wf.leg.passed ? "pass" : "fail") << "\n";
  io.out << "well-formed: " << (wf.well_formed ? "yes" : "no") << "\n";
  if (wf.well_formed) return ok;

  io.error("'" + l.spec.name + "' is not well-formed");
  const Mirror m = derive_full_mirror(l.net);
  const NetSystem sys = compose_system({{"server", l.net.open()}, {"client", m.client.open()}});
  const auto g = explore(sys, caps);
  if (!g.complete()) {
    io.note("composition with the full mirror exceeds the exploration caps; no diagram");
    return violation;
  }
  const auto dls = find_deadlocks(g, sys.mf);
  if (!dls.empty()) {
    const auto& d = dls.front();
    io.note("composition with the full mirror deadlocks; sequence diagram follows");
    io.out << emit_seqdiag(d.trace, sys, "deadlock at " + render(g.marking(*d.state)));
    return violation;
  }
  const auto wt = check_weak_termination(g, sys.mf);
  if (!wt.ok) {
    io.note("composition with the full mirror cannot terminate; sequence diagram follows");
    io.out << emit_seqdiag(wt.trace, sys, "cannot terminate from " + render(g.marking(*wt.state)));
  } else {
    io.note("composition with the full mirror happens to terminate");
  }
  return violation;
}

int cmd_mirror(const Io& io, const std::string& file, const std::vector<std::string>& drop,
               const std::string& out_path) {
  const Loaded l = load(file);
  DropSet ds;
  for (const auto& d : drop) {
    if (!Label::is_valid(d)) throw UsageError("'" + d + "' is not a label");
    ds.labels.insert(Label(d));
  }
  const Mirror m = derive_partial_mirror(l.net, ds);
  InterfaceSpec cs = to_spec(m.client, l.spec.name + "Client");
  cs.signature = l.spec.signature + "Client";
  const std::string text = emit_dsl(cs);
  if (out_path.empty()) {
    io.out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!(f << text)) throw Error("IO", "cannot write '" + out_path + "'");
  }
  return ok;
}

int cmd_verify(const Io& io, const std::vector<std::string>& files, bool cyclic, ExplorationCaps caps) {
  const Loaded server = load(files.front());
  NetSystem sys;
  bool pairwise = false;
  if (files.size() == 1) {
    sys = skeleton_system(server.net.open());
  } else {
    cyclic = cyclic || files.size() > 2;
    OpenNet s = prefix_internal(server.net.open(), kServerPrefix);
    std::vector<Component> cs;
    Marking m0 = Marking::from_set(s.init());
    Marking mf = Marking::from_set(cyclic ? s.init() : s.fin());
    if (cyclic) s = closure(s);
    cs.push_back({"server", s});
    for (std::size_t j = 1; j < files.size(); ++j) {
      const Loaded c = load(files[j]);
      OpenNet cn = prefix_internal(align_client_interfaces(server.net, c.net.open()), client_prefix(j));
      m0 += Marking::from_set(cn.init());
      mf += Marking::from_set(cn.fin());
      cs.push_back({"client_" + std::to_string(j), std::move(cn)});
    }
    // All clients in one composition: compose is not associative.
    sys = compose_system(cs, m0, mf);
    pairwise = files.size() == 2 && !cyclic;
  }

  const auto g = explore_or_throw(sys, caps);
  io.out << g.size() << " states explored\n";
  bool good = report_termination(io, g);
  if (pairwise) {
    std::vector<NodeId> fins;
    for (const auto& [p, k] : sys.mf) fins.push_back(p);
    if (fins.size() == 2) {
      const auto pc = check_proper_completion(g, fins[0], fins[1]);
      io.out << "proper completion: " << (pc.ok ? "ok" : "violated") << "\n";
      if (!pc.ok)
        io.out << "  extra tokens at " << render(g.marking(*pc.state)) << "\n    trace: " << render(pc.trace)
               << "\n";
      good = good && pc.ok;
    }
  }
  return good ? ok : violation;
}

int cmd_pattern(const Io& io, const std::string& file, const std::vector<std::string>& clients,
                std::size_t full_mirrors, ExplorationCaps caps) {
  const Loaded server = load(file);
  std::vector<Mirror> mirrors;
  for (const auto& path : clients) {
    const Loaded c = load(path);
    auto phi = infer_mirror_map(server.net, c.net.open());
    if (!phi) throw UsageError("'" + path + "' does not follow the server as a mirror");
    mirrors.push_back({c.net, *phi});
  }
  for (std::size_t k = 0; k < full_mirrors; ++k) mirrors.push_back(derive_full_mirror(server.net));
  if (mirrors.empty()) throw UsageError("pass --clients or --full-mirrors");

  const NetSystem sys = build_pmpp(server.net, mirrors, caps);
  const auto g = explore_or_throw(sys, caps);
  io.out << "pattern with " << mirrors.size() << " client(s): " << g.size() << " states explored\n";
  return report_termination(io, g) ? ok : violation;
}

int cmd_export(const Io& io, const std::string& file, const std::string& format, ExplorationCaps caps) {
  const Loaded l = load(file);
  if (format == "ifs") {
    io.out << emit_dsl(l.spec);
  } else if (format == "dot") {
    io.out << emit_dot(l.net.open(), l.spec.name);
  } else {
    // Happy path: a shortest run of server and full mirror to both final places.
    const Mirror m = derive_full_mirror(l.net);
    const NetSystem sys = compose_system({{"server", l.net.open()}, {"client", m.client.open()}});
    const auto g = explore_or_throw(sys, caps);
    const auto f = g.find(sys.mf);
    if (!f) throw UsageError("the composition with the full mirror never terminates");
    io.out << emit_seqdiag(g.trace_to(*f), sys);
  }
  return ok;
}

}  // namespace

bool color_enabled(bool stream_is_tty) {
  const char* v = std::getenv("PORTNET_COLOR");
  const std::string mode = v ? v : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return stream_is_tty;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  const Io io{out, err, color};

  CLI::App app{"Labeled portnet checker: well-formedness, mirrors, composition and verification", "portnet"};
  app.require_subcommand(1);

  ExplorationCaps caps;
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-states", caps.max_states, "state cap for exploration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max-tokens", caps.max_tokens_per_place, "token cap per place")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  std::string file;
  std::vector<std::string> files, drop, clients;
  std::string out_path, format = "dot";
  bool strict = false, cyclic = false;
  std::size_t full_mirrors = 0;

  auto* check = app.add_subcommand("check", "validate an .ifs interface and check well-formedness");
  check->add_option("file", file, "interface file")->required();
  check->add_flag("--strict-loop", strict, "only opposite communication breaks a loop path");
  add_caps(check);

  auto* mirror = app.add_subcommand("mirror", "derive a (partial) mirror client as .ifs");
  mirror->add_option("file", file, "server interface")->required();
  mirror->add_option("--drop", drop, "client send labels to leave out")->delimiter(',');
  mirror->add_option("--out", out_path, "write to this file instead of standard output");

  auto* verify = app.add_subcommand("verify", "compose a server with clients and verify the system");
  verify->add_option("files", files, "server first, then clients")->required();
  verify->add_flag("--cyclic-server", cyclic, "close the server (implied by two or more clients)");
  add_caps(verify);

  auto* pattern = app.add_subcommand("pattern", "build and verify the mirrored portnet pattern");
  pattern->add_option("server", file, "server interface")->required();
  pattern->add_option("--clients", clients, "client interfaces");
  pattern->add_option("--full-mirrors", full_mirrors, "number of derived full mirrors to add");
  add_caps(pattern);

  auto* exp = app.add_subcommand("export", "render an interface as dot, mermaid or canonical .ifs");
  exp->add_option("file", file, "interface file")->required();
  exp->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"dot", "mermaid", "ifs"}))
      ->capture_default_str();
  add_caps(exp);

  std::vector<const char*> argv{"portnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? ok : input_error;
  }

  try {
    if (*check) return cmd_check(io, file, strict, caps);
    if (*mirror) return cmd_mirror(io, file, drop, out_path);
    if (*verify) return cmd_verify(io, files, cyclic, caps);
    if (*pattern) return cmd_pattern(io, file, clients, full_mirrors, caps);
    return cmd_export(io, file, format, caps);
  } catch (const Inconclusive& e) {
    err << io.paint("1;35", "inconclusive") << ": " << e.what() << "\n";
    return inconclusive;
  } catch (const DiagnosticError& e) {
    const std::string what = e.what();
    io.error("[" + e.code() + "] " + what.substr(0, what.find('\n')));
    io.diagnostics(e.diagnostics());
    return input_error;
  } catch (const Error& e) {
    io.error(std::string("[") + e.code() + "] " + e.what());
    return input_error;
  }
}

}  // namespace portnet::cli
