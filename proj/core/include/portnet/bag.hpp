#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "portnet/diagnostic.hpp"

namespace portnet {

/// A finite multiset. Only non-zero counts are stored, so two bags compare
/// equal iff they agree on every element.
template <class Key>
class Bag {
 public:
  using container_type = std::map<Key, std::size_t>;
  using const_iterator = typename container_type::const_iterator;

  Bag() = default;

  Bag(std::initializer_list<std::pair<const Key, std::size_t>> init) {
    for (const auto& [k, n] : init) insert(k, n);
  }

  /// Sets are read as bags where every element occurs once.
  static Bag from_set(const std::set<Key>& s) {
    Bag b;
    for (const auto& k : s) b.insert(k);
    return b;
  }

  std::size_t count(const Key& k) const {
    auto it = counts_.find(k);
    return it == counts_.end() ? 0 : it->second;
  }

  void insert(const Key& k, std::size_t n = 1) {
    if (n == 0) return;
    counts_[k] += n;
  }

  /// Removes `n` occurrences of `k`; throws BagUnderflow if fewer are present.
  void erase(const Key& k, std::size_t n = 1) {
    if (n == 0) return;
    auto it = counts_.find(k);
    const std::size_t have = it == counts_.end() ? 0 : it->second;
    if (have < n) {
      std::ostringstream os;
      os << "bag underflow: removing " << n << " occurrence(s) of '" << k << "' but only "
         << have << " present";
      throw BagUnderflow(os.str());
    }
    if (have == n)
      counts_.erase(it);
    else
      it->second -= n;
  }

  /// Total number of occurrences.
  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [k, n] : counts_) t += n;
    return t;
  }

  bool empty() const { return counts_.empty(); }
  std::size_t distinct() const { return counts_.size(); }

  const_iterator begin() const { return counts_.begin(); }
  const_iterator end() const { return counts_.end(); }

  /// Element-wise comparison.
  bool leq(const Bag& other) const {
    for (const auto& [k, n] : counts_)
      if (other.count(k) < n) return false;
    return true;
  }

  Bag& operator+=(const Bag& other) {
    for (const auto& [k, n] : other.counts_) insert(k, n);
    return *this;
  }

  Bag& operator-=(const Bag& other) {
    // Check first so a failed subtraction leaves *this untouched.
    for (const auto& [k, n] : other.counts_)
      if (count(k) < n) Bag(*this).erase(k, n);
    for (const auto& [k, n] : other.counts_) erase(k, n);
    return *this;
  }

  friend Bag operator+(Bag a, const Bag& b) { return a += b; }
  friend Bag operator-(Bag a, const Bag& b) { return a -= b; }

  bool operator==(const Bag&) const = default;

 private:
  container_type counts_;
};

template <class Key>
std::string to_string(const Bag<Key>& b) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, n] : b) {
    if (!first) os << ", ";
    first = false;
    os << k << ':' << n;
  }
  os << '}';
  return os.str();
}

}  // namespace portnet
