#pragma once

#include <cstddef>
#include <vector>

#include "portnet/mirror.hpp"
#include "portnet/verify.hpp"

namespace portnet {

/// Request/grant/release handshake between one cyclic server and n clients.
///
/// Server: i -u-> p -v-> q -w-> r -t-> i, where u receives on a1 (request),
/// v sends on a2 (grant), w receives on a3 (release) and t is the closure.
/// Client j: i_j -u_j-> p_j -v_j-> q_j -w_j-> r_j with the opposite
/// directions. a1, a2, a3 are internal places of the composition.
struct SyncPattern {
  std::size_t n = 0;
  OpenNet server;
  std::vector<OpenNet> clients;
  NodeId server_refinable;
  std::vector<NodeId> client_refinables;
  /// Composition with m0 = i + sum i_j and mf = i + sum r_j.
  NetSystem system;
};

/// Throws UsageError for n < 1.
SyncPattern build_sync_pattern(std::size_t n);

/// The place invariants of the handshake for n clients, named "1", "2.<j>",
/// "3", "4", "5a" and "5b".
std::vector<LinearInvariant> sync_invariants(std::size_t n);

/// m(q) = 1 implies that at most one client holds its q_j.
bool sync_server_exclusive(const Marking& m, std::size_t n);
/// Some client holding q_j implies that the server holds q.
bool sync_client_implies_server(const Marking& m, std::size_t n);

/// Replaces internal place p of host by inner: preset(p) feeds inner's init
/// places, inner's fin places feed postset(p). Throws PatternError with
/// REF-MISSING, REF-OVERLAP (shared node ids), REF-INITFIN (p is an initial
/// or final place of host) or REF-EMPTY (inner lacks init or fin).
OpenNet refine_place(const OpenNet& host, const NodeId& p, const OpenNet& inner);

/// Node-id prefixes used when embedding server and clients.
inline constexpr const char* kServerPrefix = "srv_";
std::string client_prefix(std::size_t j);

/// Handshake with q refined by the server and each q_j by mirror j. Mirror
/// interface places are renamed through phi to the server's ids. Throws
/// PatternError (PMPP-*) naming the failed precondition.
NetSystem build_pmpp(const LabeledPortnet& server, const std::vector<Mirror>& mirrors,
                     ExplorationCaps caps = {});

/// closure(server) composed with the mirrors directly, no handshake.
/// m0 = init_server + sum init_j, mf = init_server + sum fin_j.
NetSystem build_unsynchronized(const LabeledPortnet& server, const std::vector<Mirror>& mirrors);

}  // namespace portnet
