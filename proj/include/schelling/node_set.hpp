#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace schelling {

using Node = std::uint32_t;

// Fixed-universe set of node ids backed by 64-bit words. Intersections are
// counted without materialising a temporary, which keeps same-color counts
// allocation free on the enumeration paths.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  NodeSet(std::size_t universe, std::span<const Node> nodes) : NodeSet(universe) {
    for (Node v : nodes) insert(v);
  }
  NodeSet(std::size_t universe, std::initializer_list<Node> nodes) : NodeSet(universe) {
    for (Node v : nodes) insert(v);
  }

  static NodeSet full(std::size_t universe) {
    NodeSet s(universe);
    for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Node v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U);
  }
  void insert(Node v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Node v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void flip(Node v) { words_[v >> 6] ^= std::uint64_t{1} << (v & 63); }
  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  std::size_t intersection_size(const NodeSet& other) const noexcept {
    std::size_t c = 0;
    const std::size_t k = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < k; ++w)
      c += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
    return c;
  }
  bool intersects(const NodeSet& other) const noexcept {
    const std::size_t k = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < k; ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }
  bool is_subset_of(const NodeSet& other) const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const std::uint64_t o = w < other.words_.size() ? other.words_[w] : 0;
      if (words_[w] & ~o) return false;
    }
    return true;
  }

  NodeSet& operator&=(const NodeSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] &= w < o.words_.size() ? o.words_[w] : 0;
    return *this;
  }
  NodeSet& operator|=(const NodeSet& o) {
    for (std::size_t w = 0; w < words_.size() && w < o.words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  NodeSet& operator-=(const NodeSet& o) {
    for (std::size_t w = 0; w < words_.size() && w < o.words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

  NodeSet complement() const {
    NodeSet s(universe_);
    for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] = ~words_[w];
    s.trim();
    return s;
  }

  // Smallest member, if any.
  std::optional<Node> first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<Node>(w * 64 + std::countr_zero(words_[w]));
    return std::nullopt;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(static_cast<Node>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Node> to_vector() const {
    std::vector<Node> out;
    out.reserve(size());
    for_each([&](Node v) { out.push_back(v); });
    return out;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool operator==(const NodeSet&) const = default;

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(universe_);
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void trim() noexcept {
    if (universe_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace schelling

template <>
struct std::hash<schelling::NodeSet> {
  std::size_t operator()(const schelling::NodeSet& s) const noexcept { return s.hash(); }
};
