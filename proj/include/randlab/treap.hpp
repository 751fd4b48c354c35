#pragma once

// Treap: a binary search tree on keys that is simultaneously a max-heap on
// random 64-bit priorities, so its shape depends only on the
// (key, priority) set.
//
// Rotation accounting for erase() reports the full sink-to-leaf count, i.e.
// the right spine of the left subtree plus the left spine of the right
// subtree, even though the node is pruned as soon as it has at most one
// child. The number of rotations actually performed is tracked separately.
//
// Single writer; readers may run concurrently only between mutations.

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "randlab/error.hpp"
#include "randlab/randsrc.hpp"

namespace randlab {

template <class Key>
class Treap {
 public:
  struct Stats {
    std::uint64_t rotations = 0;             // reported: insert rotations + delete spine lengths
    std::uint64_t structural_rotations = 0;  // rotations actually performed
    std::uint64_t comparisons = 0;           // key comparisons in mutating operations
    std::uint64_t priority_ties = 0;         // equal priorities met (broken toward earlier insert)
  };

  struct SearchResult {
    bool found = false;
    std::size_t depth = 0;  // edges from the root to the last node touched
  };

  struct SplitResult;

  Treap() = default;
  Treap(Treap&&) noexcept = default;
  Treap& operator=(Treap&&) noexcept = default;
  Treap(const Treap&) = delete;
  Treap& operator=(const Treap&) = delete;

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  const Stats& stats() const noexcept { return stats_; }

  /// Inserts with a fresh 64-bit priority. Returns the rotations used.
  std::uint64_t insert(const Key& key, RandomSource& src) { return insert_with_priority(key, src.word()); }

  std::uint64_t insert_with_priority(const Key& key, std::uint64_t priority) {
    auto node = std::make_unique<Node>(key, priority, next_seq_++);
    std::uint64_t rotations = 0;
    insert_at(root_, std::move(node), rotations);
    ++size_;
    stats_.rotations += rotations;
    stats_.structural_rotations += rotations;
    return rotations;
  }

  /// Removes `key`; returns the spine-length rotation count.
  std::uint64_t erase(const Key& key) {
    std::unique_ptr<Node>* slot = &root_;
    while (*slot) {
      Node& n = **slot;
      ++stats_.comparisons;
      if (key < n.key) {
        slot = &n.left;
      } else if (n.key < key) {
        slot = &n.right;
      } else {
        break;
      }
    }
    if (!*slot) fail(ErrorCode::missing_key, "treap: key not present");
    const std::uint64_t spines = right_spine((*slot)->left.get()) + left_spine((*slot)->right.get());
    sink_and_prune(*slot);
    --size_;
    stats_.rotations += spines;
    return spines;
  }

  SearchResult find(const Key& key) const {
    SearchResult out;
    const Node* n = root_.get();
    while (n) {
      if (key < n->key) {
        if (!n->left) break;
        n = n->left.get();
      } else if (n->key < key) {
        if (!n->right) break;
        n = n->right.get();
      } else {
        out.found = true;
        break;
      }
      ++out.depth;
    }
    return out;
  }

  bool contains(const Key& key) const { return find(key).found; }

  std::optional<std::uint64_t> priority_of(const Key& key) const {
    const Node* n = root_.get();
    while (n) {
      if (key < n->key) {
        n = n->left.get();
      } else if (n->key < key) {
        n = n->right.get();
      } else {
        return n->priority;
      }
    }
    return std::nullopt;
  }

  std::vector<Key> keys() const {
    std::vector<Key> out;
    out.reserve(size_);
    collect(root_.get(), out);
    return out;
  }

  /// Rotates the pivot to the root and detaches its subtrees. The pivot is
  /// returned separately. Rotations equal the pivot's depth.
  SplitResult split(const Key& pivot);

  /// Every key of `left` must be smaller than every key of `right`.
  static Treap merge(Treap left, Treap right) {
    if (left.empty()) return right;
    if (right.empty()) return left;
    const Key& left_max = rightmost(left.root_.get())->key;
    const Key& right_min = leftmost(right.root_.get())->key;
    if (!(left_max < right_min)) fail(ErrorCode::invalid_argument, "treap merge: key ranges overlap");
    Treap out;
    // Sinking a virtual root between the two trees costs exactly these spines.
    const std::uint64_t spines = right_spine(left.root_.get()) + left_spine(right.root_.get());
    out.root_ = join(std::move(left.root_), std::move(right.root_), out.stats_.priority_ties);
    out.size_ = left.size_ + right.size_;
    out.next_seq_ = std::max(left.next_seq_, right.next_seq_);
    out.stats_.rotations = spines;
    out.stats_.structural_rotations = spines;
    return out;
  }

  /// Parenthesized pre-order "(key,priority left right)", "." for empty.
  std::string serialize() const {
    std::ostringstream out;
    write(out, root_.get());
    return out.str();
  }

  /// Throws contract_violation if the search-tree or heap order is broken.
  void validate() const {
    std::size_t count = 0;
    check(root_.get(), nullptr, nullptr, count);
    if (count != size_) fail(ErrorCode::contract_violation, "treap: size mismatch");
  }

 private:
  struct Node {
    Node(const Key& k, std::uint64_t p, std::uint64_t s) : key(k), priority(p), seq(s) {}
    Key key;
    std::uint64_t priority;
    std::uint64_t seq;
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;
  };

  // True if a belongs above b.
  static bool outranks(const Node& a, const Node& b, std::uint64_t& ties) {
    if (a.priority != b.priority) return a.priority > b.priority;
    ++ties;
    return a.seq < b.seq;
  }

  static void rotate_right(std::unique_ptr<Node>& t) {
    std::unique_ptr<Node> l = std::move(t->left);
    t->left = std::move(l->right);
    l->right = std::move(t);
    t = std::move(l);
  }

  static void rotate_left(std::unique_ptr<Node>& t) {
    std::unique_ptr<Node> r = std::move(t->right);
    t->right = std::move(r->left);
    r->left = std::move(t);
    t = std::move(r);
  }

  void insert_at(std::unique_ptr<Node>& t, std::unique_ptr<Node> node, std::uint64_t& rotations) {
    if (!t) {
      t = std::move(node);
      return;
    }
    ++stats_.comparisons;
    if (node->key < t->key) {
      insert_at(t->left, std::move(node), rotations);
      if (outranks(*t->left, *t, stats_.priority_ties)) {
        rotate_right(t);
        ++rotations;
      }
    } else if (t->key < node->key) {
      insert_at(t->right, std::move(node), rotations);
      if (outranks(*t->right, *t, stats_.priority_ties)) {
        rotate_left(t);
        ++rotations;
      }
    } else {
      fail(ErrorCode::duplicate_key, "treap: key already present");
    }
  }

  // Rotates t down past its higher-priority child until it has at most one
  // child, then splices it out.
  void sink_and_prune(std::unique_ptr<Node>& t) {
    if (t->left && t->right) {
      ++stats_.structural_rotations;
      if (outranks(*t->left, *t->right, stats_.priority_ties)) {
        rotate_right(t);
        sink_and_prune(t->right);
      } else {
        rotate_left(t);
        sink_and_prune(t->left);
      }
      return;
    }
    t = t->left ? std::move(t->left) : std::move(t->right);
  }

  std::uint64_t bubble_to_root(std::unique_ptr<Node>& t, const Key& key) {
    if (!t) fail(ErrorCode::missing_key, "treap split: pivot not present");
    ++stats_.comparisons;
    if (key < t->key) {
      const std::uint64_t r = bubble_to_root(t->left, key);
      rotate_right(t);
      return r + 1;
    }
    if (t->key < key) {
      const std::uint64_t r = bubble_to_root(t->right, key);
      rotate_left(t);
      return r + 1;
    }
    return 0;
  }

  static std::unique_ptr<Node> join(std::unique_ptr<Node> a, std::unique_ptr<Node> b, std::uint64_t& ties) {
    if (!a) return b;
    if (!b) return a;
    if (outranks(*a, *b, ties)) {
      a->right = join(std::move(a->right), std::move(b), ties);
      return a;
    }
    b->left = join(std::move(a), std::move(b->left), ties);
    return b;
  }

  static std::uint64_t right_spine(const Node* n) {
    std::uint64_t len = 0;
    for (; n; n = n->right.get()) ++len;
    return len;
  }

  static std::uint64_t left_spine(const Node* n) {
    std::uint64_t len = 0;
    for (; n; n = n->left.get()) ++len;
    return len;
  }

  static const Node* leftmost(const Node* n) {
    while (n->left) n = n->left.get();
    return n;
  }

  static const Node* rightmost(const Node* n) {
    while (n->right) n = n->right.get();
    return n;
  }

  static std::size_t count_nodes(const Node* n) {
    return n ? 1 + count_nodes(n->left.get()) + count_nodes(n->right.get()) : 0;
  }

  static void collect(const Node* n, std::vector<Key>& out) {
    if (!n) return;
    collect(n->left.get(), out);
    out.push_back(n->key);
    collect(n->right.get(), out);
  }

  static void write(std::ostream& out, const Node* n) {
    if (!n) {
      out << '.';
      return;
    }
    out << '(' << n->key << ',' << n->priority << ' ';
    write(out, n->left.get());
    out << ' ';
    write(out, n->right.get());
    out << ')';
  }

  static void check(const Node* n, const Key* lower, const Key* upper, std::size_t& count) {
    if (!n) return;
    ++count;
    if ((lower && !(*lower < n->key)) || (upper && !(n->key < *upper))) {
      fail(ErrorCode::contract_violation, "treap: search-tree order violated");
    }
    std::uint64_t ties = 0;
    for (const Node* child : {n->left.get(), n->right.get()}) {
      if (child && outranks(*child, *n, ties)) fail(ErrorCode::contract_violation, "treap: heap order violated");
    }
    check(n->left.get(), lower, &n->key, count);
    check(n->right.get(), &n->key, upper, count);
  }

  std::unique_ptr<Node> root_;
  std::size_t size_ = 0;
  std::uint64_t next_seq_ = 0;
  Stats stats_;
};

template <class Key>
struct Treap<Key>::SplitResult {
  Treap left;
  Treap right;
  Key pivot;
  std::uint64_t rotations = 0;
};

template <class Key>
typename Treap<Key>::SplitResult Treap<Key>::split(const Key& pivot) {
  const std::uint64_t rotations = bubble_to_root(root_, pivot);
  stats_.rotations += rotations;
  stats_.structural_rotations += rotations;
  std::unique_ptr<Node> top = std::move(root_);
  Treap left;
  Treap right;
  left.root_ = std::move(top->left);
  right.root_ = std::move(top->right);
  left.size_ = count_nodes(left.root_.get());
  right.size_ = count_nodes(right.root_.get());
  left.next_seq_ = right.next_seq_ = next_seq_;
  size_ = 0;
  return SplitResult{std::move(left), std::move(right), top->key, rotations};
}

}  // namespace randlab
