#pragma once

// Skip list with promotion probability p. Each element's tower height is
// 1 + G with G geometric, drawn as one biased trial per level so the bit
// accounting of the source stays exact.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "randlab/error.hpp"
#include "randlab/randsrc.hpp"

namespace randlab {

template <class Key>
class SkipList {
 public:
  struct SearchResult {
    bool found = false;
    std::uint64_t links_traversed = 0;  // forward links followed, including the final probe
    std::uint64_t descents = 0;         // level drops
  };

  struct SplitResult;

  explicit SkipList(double p, std::uint64_t n_max = std::uint64_t{1} << 32) : p_(p) {
    require(p >= 0.0 && p < 1.0, "skip list: p must lie in [0, 1)");
    require(n_max >= 1, "skip list: n_max must be positive");
    std::uint64_t extra = 0;
    if (p > 0.0 && n_max > 1) {
      extra = static_cast<std::uint64_t>(std::ceil(std::log(static_cast<double>(n_max)) / std::log(1.0 / p)));
    }
    max_height_ = static_cast<std::size_t>(1 + extra + 16);
    head_.assign(max_height_, nullptr);
  }

  SkipList(SkipList&& other) noexcept { steal(other); }
  SkipList& operator=(SkipList&& other) noexcept {
    if (this != &other) {
      release();
      steal(other);
    }
    return *this;
  }
  SkipList(const SkipList&) = delete;
  SkipList& operator=(const SkipList&) = delete;
  ~SkipList() { release(); }

  double p() const noexcept { return p_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t max_height() const noexcept { return max_height_; }
  std::size_t height() const noexcept { return height_; }
  // Total forward pointers held by elements (sum of tower heights).
  std::uint64_t link_count() const noexcept { return links_; }

  std::uint64_t insert(const Key& key, RandomSource& src) {
    const auto height = static_cast<std::size_t>(geometric_capped(src, 1.0 - p_, max_height_));
    return insert_with_height(key, height);
  }

  // Returns the tower height used.
  std::uint64_t insert_with_height(const Key& key, std::size_t height) {
    require(height >= 1 && height <= max_height_, "skip list: tower height out of range");
    std::vector<Node*> update = predecessors(key);
    Node* next = update[0] ? update[0]->next[0] : head_[0];
    if (next && !(key < next->key)) fail(ErrorCode::duplicate_key, "skip list: key already present");
    auto* node = new Node{key, std::vector<Node*>(height, nullptr)};
    for (std::size_t level = 0; level < height; ++level) {
      Node*& slot = update[level] ? update[level]->next[level] : head_[level];
      node->next[level] = slot;
      slot = node;
    }
    height_ = std::max(height_, height);
    ++size_;
    links_ += height;
    return height;
  }

  void erase(const Key& key) {
    std::vector<Node*> update = predecessors(key);
    Node* target = update[0] ? update[0]->next[0] : head_[0];
    if (!target || key < target->key) fail(ErrorCode::missing_key, "skip list: key not present");
    for (std::size_t level = 0; level < target->next.size(); ++level) {
      Node*& slot = update[level] ? update[level]->next[level] : head_[level];
      slot = target->next[level];
    }
    links_ -= target->next.size();
    --size_;
    delete target;
    shrink_height();
  }

  SearchResult find(const Key& key) const {
    SearchResult out;
    const std::vector<Node*>* links = &head_;
    const std::size_t top = std::max<std::size_t>(height_, 1);
    for (std::size_t level = top; level-- > 0;) {
      while (Node* next = (*links)[level]) {
        if (!(next->key < key)) break;
        links = &next->next;
        ++out.links_traversed;
      }
      if (level > 0) ++out.descents;
    }
    if (Node* candidate = (*links)[0]) {
      ++out.links_traversed;
      out.found = !(key < candidate->key);
    }
    return out;
  }

  bool contains(const Key& key) const { return find(key).found; }

  std::vector<Key> keys() const {
    std::vector<Key> out;
    out.reserve(size_);
    for (Node* n = head_[0]; n; n = n->next[0]) out.push_back(n->key);
    return out;
  }

  std::vector<std::size_t> tower_heights() const {
    std::vector<std::size_t> out;
    out.reserve(size_);
    for (Node* n = head_[0]; n; n = n->next[0]) out.push_back(n->next.size());
    return out;
  }

  /// Keys < pivot stay left, keys >= pivot move right. Only links crossing
  /// the boundary are touched.
  SplitResult split(const Key& pivot);

  /// Concatenates two lists with the same p; every key of `left` must be
  /// smaller than every key of `right`.
  static SkipList merge(SkipList left, SkipList right, std::uint64_t* links_touched = nullptr) {
    require(left.p_ == right.p_ && left.max_height_ == right.max_height_, "skip list merge: configuration mismatch");
    if (!left.empty() && !right.empty()) {
      const Key& left_max = left.last_at(0)->key;
      if (!(left_max < right.head_[0]->key)) fail(ErrorCode::invalid_argument, "skip list merge: key ranges overlap");
    }
    std::uint64_t touched = 0;
    for (std::size_t level = 0; level < right.height_; ++level) {
      Node* tail = left.last_at(level);
      (tail ? tail->next[level] : left.head_[level]) = right.head_[level];
      right.head_[level] = nullptr;
      ++touched;
    }
    left.height_ = std::max(left.height_, right.height_);
    left.size_ += right.size_;
    left.links_ += right.links_;
    right.size_ = 0;
    right.links_ = 0;
    right.height_ = 0;
    if (links_touched) *links_touched = touched;
    return left;
  }

  /// One line per level, top level first: "L<i>: k1 k2 ...".
  std::string dump() const {
    std::ostringstream out;
    for (std::size_t level = height_; level-- > 0;) {
      out << 'L' << level << ':';
      for (Node* n = head_[level]; n; n = n->next[level]) out << ' ' << n->key;
      out << '\n';
    }
    return out.str();
  }

  /// Throws contract_violation unless every level is sorted and equals the
  /// level below restricted to taller towers.
  void validate() const {
    std::size_t count = 0;
    std::uint64_t links = 0;
    for (Node* n = head_[0]; n; n = n->next[0]) {
      if (n->next.empty()) fail(ErrorCode::contract_violation, "skip list: empty tower");
      if (n->next[0] && !(n->key < n->next[0]->key)) fail(ErrorCode::contract_violation, "skip list: level 0 unsorted");
      ++count;
      links += n->next.size();
    }
    if (count != size_ || links != links_) fail(ErrorCode::contract_violation, "skip list: counters out of sync");
    for (std::size_t level = 1; level < max_height_; ++level) {
      Node* expected = head_[0];
      auto advance = [&] {
        while (expected && expected->next.size() <= level) expected = expected->next[0];
      };
      advance();
      for (Node* n = head_[level]; n; n = n->next[level]) {
        if (n != expected) fail(ErrorCode::contract_violation, "skip list: level is not a subsequence of the one below");
        expected = expected->next[0];
        advance();
      }
      if (expected) fail(ErrorCode::contract_violation, "skip list: tall tower missing from upper level");
      if (level >= height_ && head_[level]) fail(ErrorCode::contract_violation, "skip list: height out of sync");
    }
  }

 private:
  struct Node {
    Key key;
    std::vector<Node*> next;
  };

  // update[level] is the last node with key < `key` at that level, or
  // nullptr for the head sentinel.
  std::vector<Node*> predecessors(const Key& key) const {
    std::vector<Node*> update(max_height_, nullptr);
    Node* x = nullptr;
    for (std::size_t level = max_height_; level-- > 0;) {
      Node* next = x ? x->next[level] : head_[level];
      while (next && next->key < key) {
        x = next;
        next = x->next[level];
      }
      update[level] = x;
    }
    return update;
  }

  Node* last_at(std::size_t level) const {
    Node* x = nullptr;
    for (std::size_t l = height_; l-- > level;) {
      Node* next = x ? x->next[l] : head_[l];
      while (next) {
        x = next;
        next = x->next[l];
      }
    }
    return x;
  }

  void shrink_height() {
    while (height_ > 0 && head_[height_ - 1] == nullptr) --height_;
  }

  void release() noexcept {
    Node* n = head_.empty() ? nullptr : head_[0];
    while (n) {
      Node* next = n->next[0];
      delete n;
      n = next;
    }
    std::fill(head_.begin(), head_.end(), nullptr);
    size_ = 0;
    links_ = 0;
    height_ = 0;
  }

  void steal(SkipList& other) noexcept {
    p_ = other.p_;
    max_height_ = other.max_height_;
    head_ = std::move(other.head_);
    size_ = other.size_;
    links_ = other.links_;
    height_ = other.height_;
    other.head_.assign(max_height_, nullptr);
    other.size_ = 0;
    other.links_ = 0;
    other.height_ = 0;
  }

  double p_ = 0.5;
  std::size_t max_height_ = 1;
  std::vector<Node*> head_;
  std::size_t size_ = 0;
  std::uint64_t links_ = 0;
  std::size_t height_ = 0;
};

template <class Key>
struct SkipList<Key>::SplitResult {
  SkipList left;
  SkipList right;
  std::uint64_t links_touched = 0;
};

template <class Key>
typename SkipList<Key>::SplitResult SkipList<Key>::split(const Key& pivot) {
  std::vector<Node*> update = predecessors(pivot);
  SkipList right(p_);
  right.max_height_ = max_height_;
  right.head_.assign(max_height_, nullptr);
  std::uint64_t touched = 0;
  for (std::size_t level = 0; level < height_; ++level) {
    Node*& slot = update[level] ? update[level]->next[level] : head_[level];
    if (!slot) continue;
    right.head_[level] = slot;
    slot = nullptr;
    ++touched;
  }
  // Recount the moved part.
  for (Node* n = right.head_[0]; n; n = n->next[0]) {
    ++right.size_;
    right.links_ += n->next.size();
  }
  size_ -= right.size_;
  links_ -= right.links_;
  right.height_ = height_;
  right.shrink_height();
  shrink_height();
  SkipList left(std::move(*this));
  return SplitResult{std::move(left), std::move(right), touched};
}

}  // namespace randlab
