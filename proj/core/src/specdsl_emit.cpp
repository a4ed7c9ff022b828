#include <algorithm>
#include <sstream>

#include "portnet/specdsl.hpp"

namespace portnet {

namespace {

std::string join(const std::vector<Label>& ls) {
  std::string out;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) out += ", ";
    out += ls[i].str();
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string mermaid_id(const std::string& owner) { return owner.empty() ? "net" : owner; }

}  // namespace

std::string emit_dsl(const InterfaceSpec& spec) {
  std::ostringstream os;
  os << "signature " << spec.signature << " {\n";
  os << "  signals" << (spec.signals.empty() ? "" : " ") << join(spec.signals) << "\n";
  os << "  notifications" << (spec.notifications.empty() ? "" : " ") << join(spec.notifications) << "\n";
  os << "}\n\ninterface " << spec.name << " {\n";
  for (const auto& s : spec.states) {
    os << "  ";
    if (s.name == spec.initial) os << "initial ";
    if (s.name == spec.final_state) os << "final ";
    os << "state " << s.name << " {";
    if (s.transitions.empty()) {
      os << "}\n";
      continue;
    }
    os << "\n";
    for (const auto& t : s.transitions) {
      os << "    ";
      if (t.kind == TransitionKind::triggered) {
        os << "on " << t.trigger->str();
        if (!t.effects.empty()) os << " do " << join(t.effects);
      } else {
        os << "do " << join(t.effects);
      }
      os << " goto " << t.next << "\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_dot(const OpenNet& n, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
  for (const auto& p : n.places()) {
    os << "  " << quote(p) << " [shape=ellipse, label=" << quote(p);
    if (n.init().contains(p) || n.fin().contains(p)) os << ", style=bold";
    os << "];\n";
  }
  for (const auto* side : {&n.inputs(), &n.outputs()})
    for (const auto& p : *side)
      os << "  " << quote(p) << " [shape=ellipse, style=dashed, label=" << quote(p) << "];\n";
  for (const auto& t : n.transitions()) {
    const Direction d = direction(n, t);
    const std::string mark = d == Direction::send ? "!" : d == Direction::receive ? "?" : "";
    os << "  " << quote(t) << " [shape=box, label=" << quote(n.label(t).str() + mark) << "];\n";
  }
  for (const auto& [x, y] : n.arcs()) {
    os << "  " << quote(x) << " -> " << quote(y);
    if (n.is_interface(x) || n.is_interface(y)) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_seqdiag(const Trace& trace, const NetSystem& sys, std::string_view closing_note) {
  std::vector<std::string> owners;
  auto add_owner = [&](const std::string& o) {
    if (std::find(owners.begin(), owners.end(), o) == owners.end()) owners.push_back(o);
  };
  for (const auto& [t, tag] : sys.tags)
    if (tag.owner == "server") add_owner(tag.owner);
  for (const auto& s : trace.steps) add_owner(s.owner);
  for (const auto& [t, tag] : sys.tags) add_owner(tag.owner);

  auto owner_of = [&](const NodeId& t) {
    auto it = sys.tags.find(t);
    return it == sys.tags.end() ? std::string() : it->second.owner;
  };

  std::ostringstream os;
  os << "sequenceDiagram\n";
  for (const auto& o : owners) os << "  participant " << mermaid_id(o) << "\n";

  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& s = trace.steps[k];
    const std::string from = mermaid_id(s.owner);
    if (s.direction == Direction::send) {
      // Channels written by this step; the receiver is whoever consumes from
      // one of them later in the trace, else any potential consumer.
      std::set<NodeId> channels;
      for (const auto& p : sys.net.postset(s.transition))
        if (sys.channels.contains(p)) channels.insert(p);
      std::optional<std::string> to;
      for (std::size_t j = k + 1; j < trace.steps.size() && !to; ++j)
        for (const auto& p : sys.net.preset(trace.steps[j].transition))
          if (channels.contains(p)) to = trace.steps[j].owner;
      const bool consumed = to.has_value();
      if (!to)
        for (const auto& p : channels)
          for (const auto& u : sys.net.postset(p))
            if (!to) to = owner_of(u);
      os << "  " << from << (consumed ? "->>" : "-x") << mermaid_id(to.value_or(s.owner)) << ": "
         << s.label.str() << "\n";
    } else if (s.direction == Direction::receive) {
      os << "  Note over " << from << ": consumes " << s.label.str() << "\n";
    } else {
      os << "  Note over " << from << ": " << s.label.str() << " (internal)\n";
    }
  }
  if (!closing_note.empty()) {
    os << "  Note over " << mermaid_id(owners.empty() ? std::string() : owners.front());
    if (owners.size() > 1) os << "," << mermaid_id(owners.back());
    os << ": " << closing_note << "\n";
  }
  return os.str();
}

}  // namespace portnet
