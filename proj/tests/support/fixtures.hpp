#pragma once

#include <string>

#include "portnet/open_net.hpp"

namespace portnet::test {

/// Small helper for hand-built portnets. Places are created on first use;
/// interface places are named in_<label> / out_<label>.
class Builder {
 public:
  Builder& send(const NodeId& t, const std::string& label, const NodeId& from, const NodeId& to);
  Builder& recv(const NodeId& t, const std::string& label, const NodeId& from, const NodeId& to);
  Builder& tau(const NodeId& t, const std::string& label, const NodeId& from, const NodeId& to);
  Builder& init(const NodeId& p);
  Builder& fin(const NodeId& p);
  Builder& input(const std::string& label);
  Builder& output(const std::string& label);

  const OpenNet& open() const { return n_; }
  LabeledPortnet build() const { return LabeledPortnet::from(n_); }

 private:
  void step(const NodeId& t, const std::string& label, const NodeId& from, const NodeId& to);
  void place(const NodeId& p);
  OpenNet n_;
};

/// i --req?--> p --ack!--> f with t1, t2, in_req, out_ack.
LabeledPortnet ping();
/// Places {i, p, f}, transitions t1 "req" i->p and t2 "ack" p->f.
LabeledNet ping_skeleton();

/// r: notify! -> a, cmd? -> b; a: cmd? -> c; b: notify! -> c; c: done! -> f.
LabeledPortnet race();
/// RACE whose b branch goes b --notify!--> c2 --other!--> f.
LabeledPortnet race_broken_diamond();

/// p: a! -> x, b! -> y; x: b! -> z; z: c? -> f; y: c? -> f.
LabeledPortnet loopviol();
/// loopviol with x --sync?--> x2 inserted before the b! from x.
LabeledPortnet loopviol_sync();

/// Prepends k request/response exchanges (e<j>? then f<j>!) in front of init.
LabeledPortnet with_prefix(const LabeledPortnet& n, std::size_t k);

/// i --go?--> p; p --a!--> f; p --b?--> q; q --a!--> f.
LabeledPortnet drop_example();

/// Well-formed server whose mirror, without the client counterpart of the
/// receive "r" at a (transition ra), breaks the diamond property:
/// p: s! -> a, r? -> b; a: r? -> c, x? -> f; b: s! -> c; c: done! -> f.
LabeledPortnet partial_mirror_witness();

/// Place p with two sends labeled x.
LabeledPortnet unobservable();

/// A (inputs x), B (outputs x), C (inputs x): fine all at once, but
/// composing B with C first internalizes x.
struct Triple {
  OpenNet a, b, c;
};
Triple non_associative_triple();

}  // namespace portnet::test
