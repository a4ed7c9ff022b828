#include <cctype>

#include "portnet/specdsl.hpp"

namespace portnet {

std::string input_place_id(const Label& l) { return "in_" + l.str(); }
std::string output_place_id(const Label& l) { return "out_" + l.str(); }

LabeledPortnet lower(const InterfaceSpec& spec) {
  auto ds = check_spec(spec);
  if (!ds.empty()) {
    std::string code = ds.front().code;
    throw ParseError(std::move(code), "invalid interface specification", std::move(ds));
  }

  OpenNet n;
  std::set<NodeId> taken;
  for (const auto& s : spec.states) taken.insert(s.name);
  auto clash = [&](const NodeId& id) {
    if (taken.contains(id))
      throw PortnetError("DSL-LOWER", "cannot lower interface '" + spec.name + "'",
                         {{"DSL-LOWER", "state name '" + id + "' collides with a channel id", {id},
                           "rename the state"}});
    taken.insert(id);
  };
  for (const auto& s : spec.states) n.add_place(s.name);
  for (const auto& l : spec.signals) {
    clash(input_place_id(l));
    n.add_input(input_place_id(l), l);
  }
  for (const auto& l : spec.notifications) {
    clash(output_place_id(l));
    n.add_output(output_place_id(l), l);
  }

  std::size_t counter = 0;
  auto fresh_transition = [&] {
    NodeId id;
    do id = "t" + std::to_string(++counter);
    while (taken.contains(id));
    taken.insert(id);
    return id;
  };
  auto fresh_place = [&](const std::string& base) {
    NodeId id = base;
    while (taken.contains(id)) id += "_";
    taken.insert(id);
    n.add_place(id);
    return id;
  };
  auto send = [&](const NodeId& from, const Label& l, const NodeId& to) {
    const NodeId t = fresh_transition();
    n.add_transition(t, l);
    n.add_arc(from, t);
    n.add_arc(t, to);
    n.add_arc(t, output_place_id(l));
  };

  for (const auto& s : spec.states)
    for (const auto& tr : s.transitions) {
      if (tr.kind == TransitionKind::nontriggered) {
        send(s.name, tr.effects.front(), tr.next);
        continue;
      }
      const Label& trig = *tr.trigger;
      std::vector<NodeId> chain;
      for (std::size_t k = 1; k <= tr.effects.size(); ++k)
        chain.push_back(fresh_place(s.name + "__" + trig.str() + "__" + std::to_string(k)));
      const NodeId t = fresh_transition();
      n.add_transition(t, trig);
      n.add_arc(s.name, t);
      n.add_arc(input_place_id(trig), t);
      n.add_arc(t, chain.empty() ? tr.next : chain.front());
      for (std::size_t k = 0; k < chain.size(); ++k)
        send(chain[k], tr.effects[k], k + 1 < chain.size() ? chain[k + 1] : tr.next);
    }
  n.add_init(spec.initial);
  n.add_fin(spec.final_state);

  auto invalid = validate_portnet(n);
  if (!invalid.empty())
    throw PortnetError("DSL-LOWER", "interface '" + spec.name + "' does not lower to a labeled portnet",
                       std::move(invalid));
  return LabeledPortnet::from(std::move(n));
}

InterfaceSpec to_spec(const LabeledPortnet& pn, const std::string& name) {
  const OpenNet& n = pn.open();
  auto ident = [](const NodeId& id) {
    if (!Label::is_valid(id) || std::isdigit(static_cast<unsigned char>(id.front())))
      throw UsageError("'" + id + "' is not an identifier and cannot name a state");
    return id;
  };

  InterfaceSpec spec;
  spec.signature = name;
  spec.name = name;
  for (const auto& x : n.inputs()) spec.signals.push_back(n.channel_label(x));
  for (const auto& x : n.outputs()) spec.notifications.push_back(n.channel_label(x));
  spec.initial = ident(pn.init_place());
  spec.final_state = ident(pn.fin_place());

  // States in breadth-first order from init; a valid portnet reaches every place.
  std::vector<NodeId> order{pn.init_place()};
  std::set<NodeId> seen{pn.init_place()};
  for (std::size_t k = 0; k < order.size(); ++k)
    for (const auto& t : n.postset(order[k]))
      for (const auto& y : n.postset(t))
        if (n.is_internal(y) && seen.insert(y).second) order.push_back(y);

  for (const auto& p : order) {
    SpecState s{ident(p), {}, 0, 0};
    for (const auto& t : n.postset(p)) {
      NodeId next;
      for (const auto& y : n.postset(t))
        if (n.is_internal(y)) next = y;
      switch (pn.direction(t)) {
        case Direction::receive:
          s.transitions.push_back({TransitionKind::triggered, n.label(t), {}, ident(next), 0, 0});
          break;
        case Direction::send:
          s.transitions.push_back({TransitionKind::nontriggered, std::nullopt, {n.label(t)}, ident(next), 0, 0});
          break;
        case Direction::tau:
          throw UsageError("tau transition '" + t + "' has no interface syntax");
      }
    }
    spec.states.push_back(std::move(s));
  }
  return spec;
}

}  // namespace portnet
