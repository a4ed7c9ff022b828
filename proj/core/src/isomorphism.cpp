#include <algorithm>
#include <tuple>

#include "portnet/net.hpp"

namespace portnet {

namespace {

// Invariant signature of a node used to prune candidate pairs.
struct Signature {
  bool is_place;
  std::string label;
  std::size_t in_degree;
  std::size_t out_degree;

  auto operator<=>(const Signature&) const = default;
};

Signature signature_of(const LabeledNet& net, const NodeId& x) {
  const bool place = net.is_place(x);
  return Signature{place, place ? std::string{} : net.label(x).str(), net.preset(x).size(),
                   net.postset(x).size()};
}

class Matcher {
 public:
  Matcher(const LabeledNet& a, const LabeledNet& b) : a_(a), b_(b) {
    // Breadth-first over the undirected structure, so every node after the
    // first of its component has an already-mapped neighbour to prune against.
    std::set<NodeId> seen;
    std::vector<NodeId> roots(a.transitions().begin(), a.transitions().end());
    roots.insert(roots.end(), a.places().begin(), a.places().end());
    for (const auto& root : roots) {
      if (!seen.insert(root).second) continue;
      std::size_t head = order_.size();
      order_.push_back(root);
      while (head < order_.size()) {
        const NodeId x = order_[head++];
        for (const auto* adj : {&a.preset(x), &a.postset(x)})
          for (const auto& y : *adj)
            if (seen.insert(y).second) order_.push_back(y);
      }
    }
    for (const auto& x : b.places()) sig_b_[x] = signature_of(b, x);
    for (const auto& x : b.transitions()) sig_b_[x] = signature_of(b, x);
  }

  std::optional<NodeMap> run() {
    if (a_.places().size() != b_.places().size() ||
        a_.transitions().size() != b_.transitions().size() ||
        a_.arcs().size() != b_.arcs().size())
      return std::nullopt;
    std::map<Signature, std::size_t> ca;
    std::map<Signature, std::size_t> cb;
    for (const auto& x : order_) ++ca[signature_of(a_, x)];
    for (const auto& [x, s] : sig_b_) ++cb[s];
    if (ca != cb) return std::nullopt;
    if (search(0)) return forward_;
    return std::nullopt;
  }

 private:
  bool consistent(const NodeId& x, const NodeId& y) const {
    // Every arc between x and an already-mapped node must exist in b, and vice versa.
    for (const auto& pre : a_.preset(x)) {
      auto it = forward_.find(pre);
      if (it != forward_.end() && !b_.has_arc(it->second, y)) return false;
    }
    for (const auto& post : a_.postset(x)) {
      auto it = forward_.find(post);
      if (it != forward_.end() && !b_.has_arc(y, it->second)) return false;
    }
    for (const auto& pre : b_.preset(y)) {
      auto it = backward_.find(pre);
      if (it != backward_.end() && !a_.has_arc(it->second, x)) return false;
    }
    for (const auto& post : b_.postset(y)) {
      auto it = backward_.find(post);
      if (it != backward_.end() && !a_.has_arc(x, it->second)) return false;
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == order_.size()) return true;
    const NodeId& x = order_[depth];
    const Signature sx = signature_of(a_, x);
    const auto& pool = sx.is_place ? b_.places() : b_.transitions();
    for (const auto& y : pool) {
      if (backward_.contains(y)) continue;
      if (sig_b_.at(y) != sx) continue;
      if (!consistent(x, y)) continue;
      forward_.emplace(x, y);
      backward_.emplace(y, x);
      if (search(depth + 1)) return true;
      forward_.erase(x);
      backward_.erase(y);
    }
    return false;
  }

  const LabeledNet& a_;
  const LabeledNet& b_;
  std::vector<NodeId> order_;
  std::map<NodeId, Signature> sig_b_;
  NodeMap forward_;
  NodeMap backward_;
};

}  // namespace

std::optional<NodeMap> find_isomorphism(const LabeledNet& a, const LabeledNet& b) {
  return Matcher(a, b).run();
}

}  // namespace portnet
