#pragma once

#include <optional>
#include <set>
#include <vector>

#include "portnet/open_net.hpp"

namespace portnet {

/// Injective mapping phi from client node ids to server node ids.
struct MirrorMap {
  NodeMap node_map;

  const NodeId& operator()(const NodeId& x) const;
  bool operator==(const MirrorMap&) const = default;
};

/// Violations of the partial-mirror conditions, coded MIR-1 (sorts and
/// injectivity) through MIR-5 (unreceivable server sends). Empty iff
/// (client, phi) is a partial mirror of server.
std::vector<Diagnostic> validate_partial_mirror(const LabeledPortnet& server,
                                                const LabeledPortnet& client,
                                                const MirrorMap& phi);

struct Mirror {
  LabeledPortnet client;
  MirrorMap phi;
};

/// Client with every send turned into a receive and vice versa. Internal
/// nodes get fresh ids (suffix "_c"); interface places keep the server's ids
/// with their side swapped, so server and client compose directly.
Mirror derive_full_mirror(const LabeledPortnet& server);

/// What to leave out of the client. `labels` drops every client send with
/// that label; `transitions` drops the mirrors of individual server receive
/// transitions.
struct DropSet {
  std::set<Label> labels;
  std::set<NodeId> transitions;
};

enum class PruneOrder { ascending, descending };

/// Repeatedly removes one node (the first in `order`) that lies on no
/// init-to-fin path of the skeleton until none is left. Interface places are
/// kept even when they become isolated.
OpenNet prune_off_path(OpenNet n, PruneOrder order = PruneOrder::ascending);

/// Full mirror minus the dropped sends, pruned to the init-to-fin paths.
/// Throws MirrorError: MIR-DROP-SEND when a dropped label or transition is a
/// server send, MIR-DROP-UNKNOWN for names the server lacks,
/// MIR-DISCONNECTED when pruning separates init from fin, MIR-5 when a
/// mirrored server send lost its counterpart.
Mirror derive_partial_mirror(const LabeledPortnet& server, const DropSet& drop);

/// Reconstructs phi for an independently written client by walking both
/// skeletons from init along equal labels of opposite direction. Absent if
/// the walk is ambiguous or leaves client nodes unmapped.
std::optional<MirrorMap> infer_mirror_map(const LabeledPortnet& server, const OpenNet& client);

/// Renames the client's interface places to the server's ids with the same
/// channel label and adds the server channels the client never touches as
/// isolated places. Throws UsageError if a client channel has no server
/// counterpart or an id is taken by a client internal node.
OpenNet align_client_interfaces(const LabeledPortnet& server, const OpenNet& client);

}  // namespace portnet
