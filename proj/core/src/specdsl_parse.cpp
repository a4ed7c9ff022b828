#include <cctype>
#include <set>

#include "portnet/specdsl.hpp"

namespace portnet {

const SpecState* InterfaceSpec::find_state(std::string_view n) const {
  for (const auto& s : states)
    if (s.name == n) return &s;
  return nullptr;
}

namespace {

enum class Tok { word, lbrace, rbrace, comma, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

[[noreturn]] void fail(std::string code, const std::string& msg, int line, int column, std::string hint = {}) {
  Diagnostic d{code, msg, {}, std::move(hint), line, column};
  throw ParseError(code, "cannot parse interface specification", {d});
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance();
    } else if (src.substr(i, 2) == "/*") {
      const int l0 = line;
      const int c0 = col;
      advance(2);
      while (i < src.size() && src.substr(i, 2) != "*/") advance();
      if (i >= src.size()) fail("DSL-LEX", "unterminated comment", l0, c0, "close it with */");
      advance(2);
    } else if (c == '{' || c == '}' || c == ',') {
      out.push_back({c == '{' ? Tok::lbrace : c == '}' ? Tok::rbrace : Tok::comma, std::string(1, c), line, col});
      advance();
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      Token t{Tok::word, "", line, col};
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
      out.push_back(std::move(t));
    } else {
      fail("DSL-LEX", std::string("unexpected character '") + c + "'", line, col,
           "identifiers use letters, digits and underscores");
    }
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

struct Branch {
  std::vector<Label> effects;
  std::string next;
};

struct RawTransition {
  std::optional<Label> trigger;
  std::vector<Branch> branches;
  int line;
  int column;
};

struct RawState {
  std::string name;
  bool initial = false;
  bool final = false;
  std::vector<RawTransition> transitions;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::word:
      return "'" + t.text + "'";
    case Tok::lbrace:
      return "'{'";
    case Tok::rbrace:
      return "'}'";
    case Tok::comma:
      return "','";
    case Tok::end:
      return "end of input";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  InterfaceSpec run() {
    InterfaceSpec spec;
    keyword("signature");
    spec.signature = word("signature name");
    expect(Tok::lbrace, "'{'");
    keyword("signals");
    spec.signals = labels_until("notifications");
    keyword("notifications");
    spec.notifications = labels_until("");
    expect(Tok::rbrace, "'}'");
    keyword("interface");
    spec.name = word("interface name");
    expect(Tok::lbrace, "'{'");

    std::vector<RawState> states;
    std::vector<RawTransition> everywhere;
    while (peek().kind != Tok::rbrace) {
      if (at_word("in")) {
        next();
        keyword("all");
        keyword("states");
        expect(Tok::lbrace, "'{'");
        while (peek().kind != Tok::rbrace) everywhere.push_back(transition());
        next();
      } else {
        states.push_back(state());
      }
    }
    next();
    if (peek().kind != Tok::end) error_here("expected end of input");

    std::vector<Diagnostic> ds;
    const RawState* init = nullptr;
    const RawState* fin = nullptr;
    for (const auto& s : states) {
      if (s.initial) {
        if (init)
          ds.push_back({"DSL-INITIAL", "second initial state '" + s.name + "' (first is '" + init->name + "')",
                        {s.name}, "mark exactly one state initial", s.line, s.column});
        else
          init = &s;
      }
      if (s.final) {
        if (fin)
          ds.push_back({"DSL-FINAL", "second final state '" + s.name + "' (first is '" + fin->name + "')",
                        {s.name}, "mark exactly one state final", s.line, s.column});
        else
          fin = &s;
      }
    }
    if (init) spec.initial = init->name;
    if (fin) spec.final_state = fin->name;

    for (auto& s : states) {
      if (!s.final) s.transitions.insert(s.transitions.end(), everywhere.begin(), everywhere.end());
      expand(s, spec.states, ds);
    }
    auto more = check_spec(spec);
    ds.insert(ds.end(), more.begin(), more.end());
    if (!ds.empty()) {
      const std::string code = ds.front().code;
      throw ParseError(code, "invalid interface specification", std::move(ds));
    }
    return spec;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::word && peek().text == w; }

  [[noreturn]] void error_here(const std::string& msg) {
    fail("DSL-SYNTAX", msg + ", found " + describe(peek()), peek().line, peek().column);
  }

  void keyword(std::string_view w) {
    if (!at_word(w)) error_here("expected '" + std::string(w) + "'");
    next();
  }

  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) error_here("expected " + what);
    next();
  }

  std::string word(const std::string& what) {
    if (peek().kind != Tok::word) error_here("expected " + what);
    return next().text;
  }

  std::vector<Label> idlist() {
    std::vector<Label> out{Label(word("identifier"))};
    while (peek().kind == Tok::comma) {
      next();
      out.emplace_back(word("identifier"));
    }
    return out;
  }

  // Possibly empty list, ended by `stop` (a keyword) or by '}'.
  std::vector<Label> labels_until(std::string_view stop) {
    if (peek().kind != Tok::word || (!stop.empty() && at_word(stop))) return {};
    return idlist();
  }

  RawState state() {
    RawState s{"", false, false, {}, peek().line, peek().column};
    if (at_word("initial")) {
      s.initial = true;
      next();
    } else if (at_word("final")) {
      s.final = true;
      next();
    }
    keyword("state");
    s.name = word("state name");
    expect(Tok::lbrace, "'{'");
    while (peek().kind != Tok::rbrace) s.transitions.push_back(transition());
    next();
    return s;
  }

  RawTransition transition() {
    RawTransition t{std::nullopt, {}, peek().line, peek().column};
    if (at_word("on")) {
      next();
      t.trigger = Label(word("signal name"));
      Branch b;
      if (at_word("do")) {
        next();
        b.effects = idlist();
      }
      keyword("goto");
      b.next = word("state name");
      t.branches.push_back(std::move(b));
      while (at_word("or")) {
        next();
        keyword("do");
        Branch alt;
        alt.effects = idlist();
        keyword("goto");
        alt.next = word("state name");
        t.branches.push_back(std::move(alt));
      }
    } else if (at_word("do")) {
      next();
      const Token& at = peek();
      Branch b;
      b.effects = idlist();
      if (b.effects.size() != 1)
        fail("DSL-SYNTAX", "a transition without trigger sends exactly one notification", at.line, at.column,
             "split the sends over intermediate states");
      keyword("goto");
      b.next = word("state name");
      t.branches.push_back(std::move(b));
    } else {
      error_here("expected 'on', 'do' or '}'");
    }
    return t;
  }

  static void expand(const RawState& s, std::vector<SpecState>& out, std::vector<Diagnostic>& ds) {
    SpecState core{s.name, {}, s.line, s.column};
    std::vector<SpecState> extra;
    for (const auto& t : s.transitions) {
      auto mk = [&](TransitionKind k, std::optional<Label> trig, std::vector<Label> eff, std::string next) {
        return SpecTransition{k, std::move(trig), std::move(eff), std::move(next), t.line, t.column};
      };
      if (!t.trigger) {
        core.transitions.push_back(mk(TransitionKind::nontriggered, std::nullopt, t.branches[0].effects,
                                      t.branches[0].next));
        continue;
      }
      if (t.branches.size() == 1) {
        core.transitions.push_back(mk(TransitionKind::triggered, t.trigger, t.branches[0].effects,
                                      t.branches[0].next));
        continue;
      }
      const std::string hub = s.name + "__" + t.trigger->str() + "__or";
      core.transitions.push_back(mk(TransitionKind::triggered, t.trigger, {}, hub));
      SpecState hub_state{hub, {}, t.line, t.column};
      const std::size_t hub_pos = extra.size();
      for (std::size_t b = 0; b < t.branches.size(); ++b) {
        const auto& br = t.branches[b];
        if (br.effects.empty()) {
          ds.push_back({"DSL-OR-EFFECTS", "every alternative of 'on " + t.trigger->str() + "' needs a notification",
                        {s.name}, "start each 'or do' branch with a notification", t.line, t.column});
          continue;
        }
        auto step = [&](std::size_t i) {
          return hub + "_b" + std::to_string(b + 1) + "_" + std::to_string(i);
        };
        const std::size_t k = br.effects.size();
        hub_state.transitions.push_back(
            mk(TransitionKind::nontriggered, std::nullopt, {br.effects[0]}, k == 1 ? br.next : step(1)));
        for (std::size_t i = 1; i < k; ++i) {
          SpecState mid{step(i), {}, t.line, t.column};
          mid.transitions.push_back(
              mk(TransitionKind::nontriggered, std::nullopt, {br.effects[i]}, i + 1 == k ? br.next : step(i + 1)));
          extra.push_back(std::move(mid));
        }
      }
      extra.insert(extra.begin() + static_cast<std::ptrdiff_t>(hub_pos), std::move(hub_state));
    }
    out.push_back(std::move(core));
    for (auto& e : extra) out.push_back(std::move(e));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Diagnostic> check_spec(const InterfaceSpec& spec) {
  std::vector<Diagnostic> ds;
  std::set<Label> signals;
  std::set<Label> notifications;
  for (const auto& l : spec.signals)
    if (!signals.insert(l).second)
      ds.push_back({"DSL-DUP-EVENT", "signal '" + l.str() + "' declared twice", {l.str()}, "declare each event once"});
  for (const auto& l : spec.notifications) {
    if (!notifications.insert(l).second)
      ds.push_back({"DSL-DUP-EVENT", "notification '" + l.str() + "' declared twice", {l.str()},
                    "declare each event once"});
    if (signals.contains(l))
      ds.push_back({"DSL-OVERLAP", "'" + l.str() + "' is both a signal and a notification", {l.str()},
                    "an event travels in one direction only"});
  }

  std::set<std::string> names;
  for (const auto& s : spec.states)
    if (!names.insert(s.name).second)
      ds.push_back({"DSL-DUP-STATE", "state '" + s.name + "' declared twice", {s.name},
                    "rename one of the states", s.line, s.column});
  if (spec.initial.empty())
    ds.push_back({"DSL-INITIAL", "no initial state", {}, "mark one state 'initial'"});
  else if (!names.contains(spec.initial))
    ds.push_back({"DSL-INITIAL", "initial state '" + spec.initial + "' is not declared", {spec.initial},
                  "declare the initial state"});
  if (spec.final_state.empty())
    ds.push_back({"DSL-FINAL", "no final state", {}, "mark one state 'final'"});
  else if (!names.contains(spec.final_state))
    ds.push_back({"DSL-FINAL", "final state '" + spec.final_state + "' is not declared", {spec.final_state},
                  "declare the final state"});

  auto event = [&](const Label& l, bool want_signal, const SpecTransition& t, const std::string& state) {
    const auto& own = want_signal ? signals : notifications;
    const auto& other = want_signal ? notifications : signals;
    if (own.contains(l)) return;
    if (other.contains(l))
      ds.push_back({"DSL-KIND",
                    "'" + l.str() + "' is a " + (want_signal ? "notification" : "signal") + " but is used as a " +
                        (want_signal ? "trigger" : "notification"),
                    {state}, want_signal ? "only signals can trigger transitions" : "only notifications can be sent",
                    t.line, t.column});
    else
      ds.push_back({"DSL-UNKNOWN-EVENT", "event '" + l.str() + "' is not declared", {state},
                    "add it to the signature", t.line, t.column});
  };

  for (const auto& s : spec.states) {
    if (s.name == spec.final_state && !s.transitions.empty())
      ds.push_back({"DSL-FINAL-OUT", "final state '" + s.name + "' has outgoing transitions", {s.name},
                    "end the protocol in a state without transitions", s.line, s.column});
    for (const auto& t : s.transitions) {
      if (t.kind == TransitionKind::triggered) {
        if (!t.trigger)
          ds.push_back({"DSL-SYNTAX", "triggered transition without trigger", {s.name}, "", t.line, t.column});
        else
          event(*t.trigger, true, t, s.name);
      } else if (t.trigger || t.effects.size() != 1) {
        ds.push_back({"DSL-SYNTAX", "a transition without trigger sends exactly one notification", {s.name}, "",
                      t.line, t.column});
      }
      for (const auto& e : t.effects) event(e, false, t, s.name);
      if (!names.contains(t.next))
        ds.push_back({"DSL-UNKNOWN-STATE", "target state '" + t.next + "' is not declared", {s.name},
                      "declare the state or fix the name", t.line, t.column});
    }
  }
  return ds;
}

InterfaceSpec parse_spec(std::string_view text) { return Parser(lex(text)).run(); }

}  // namespace portnet
