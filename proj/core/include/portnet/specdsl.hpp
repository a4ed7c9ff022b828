#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "portnet/open_net.hpp"
#include "portnet/verify.hpp"

namespace portnet {

enum class TransitionKind { triggered, nontriggered };

/// `on trigger do effects goto next` (triggered) or `do effect goto next`
/// (nontriggered, exactly one effect).
struct SpecTransition {
  TransitionKind kind = TransitionKind::triggered;
  std::optional<Label> trigger;
  std::vector<Label> effects;
  std::string next;
  int line = 0;
  int column = 0;

  /// Ignores source positions.
  bool operator==(const SpecTransition& o) const {
    return kind == o.kind && trigger == o.trigger && effects == o.effects && next == o.next;
  }
};

struct SpecState {
  std::string name;
  std::vector<SpecTransition> transitions;
  int line = 0;
  int column = 0;

  bool operator==(const SpecState& o) const { return name == o.name && transitions == o.transitions; }
};

/// A server interface: signals are received, notifications are sent.
struct InterfaceSpec {
  std::string signature;
  std::string name;
  std::vector<Label> signals;
  std::vector<Label> notifications;
  std::vector<SpecState> states;
  std::string initial;
  std::string final_state;

  bool operator==(const InterfaceSpec&) const = default;
  const SpecState* find_state(std::string_view n) const;
};

/// Parses `.ifs` text. Shorthands are expanded here:
///  - `in all states { ... }` adds its transitions to every non-final state;
///  - `on X do a goto s1 or do b, c goto s2` receives X into a synthesized
///    state `<state>__<X>__or` that offers the alternatives, with further
///    synthesized states `<state>__<X>__or_b<k>_<i>` between chained effects.
/// Throws ParseError whose diagnostics carry line and column.
InterfaceSpec parse_spec(std::string_view text);

/// Semantic diagnostics of a spec (unknown events or states, initial/final
/// count, outgoing transitions of the final state, ...). Empty iff valid.
std::vector<Diagnostic> check_spec(const InterfaceSpec& spec);

/// Interface place ids used by lowering.
std::string input_place_id(const Label& l);
std::string output_place_id(const Label& l);

/// One place per state, one input place per signal and one output place per
/// notification; transitions t1, t2, ... in declaration order. A triggered
/// transition with k effects becomes a receive followed by k sends through
/// places `<state>__<trigger>__<i>`. Throws PortnetError (DSL-LOWER) if the
/// result is not a labeled portnet.
LabeledPortnet lower(const InterfaceSpec& spec);

/// Reads a portnet back as a spec: receives become `on L goto`, sends
/// `do L goto`, one state per internal place. Throws UsageError for tau
/// transitions or ids that are not identifiers.
InterfaceSpec to_spec(const LabeledPortnet& n, const std::string& name);

/// Canonical text; parse_spec(emit_dsl(s)) == s for every valid spec.
std::string emit_dsl(const InterfaceSpec& spec);

/// Graphviz digraph: places as ellipses, transitions as boxes, interface
/// places dashed, initial and final places bold.
std::string emit_dot(const OpenNet& n, const std::string& name = "portnet");

/// Mermaid sequence diagram of a trace. One arrow per send, from its owner to
/// the owner consuming the message (`-x` if nothing in the trace consumes
/// it); receives and tau steps appear as notes.
std::string emit_seqdiag(const Trace& trace, const NetSystem& sys, std::string_view closing_note = {});

}  // namespace portnet
