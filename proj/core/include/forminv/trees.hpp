#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forminv/series.hpp"

namespace forminv {

// Binary rooted tree up to root-preserving isomorphism. Nodes are immutable
// and shared; the canonical encoding ("o" for a leaf, "(LR)" with
// enc(L) <= enc(R) for a join) doubles as the identity.
class BinaryTree {
public:
  static BinaryTree leaf();
  // Children in either order; the canonical one is stored.
  static BinaryTree join(const BinaryTree& a, const BinaryTree& b);
  // Reads an encoding (any child order) and canonicalizes.
  static BinaryTree parse(std::string_view text);

  bool is_leaf() const;
  BinaryTree left() const;
  BinaryTree right() const;
  int leaf_count() const;
  int vertex_count() const;
  const std::string& encoding() const;

  bool operator==(const BinaryTree& o) const {
    return encoding() == o.encoding();
  }
  bool operator!=(const BinaryTree& o) const { return !(*this == o); }

private:
  struct Node {
    std::shared_ptr<const Node> left, right;
    int leaves;
    std::string enc;
  };
  explicit BinaryTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Rebuilds with children sorted at every node; identity on canonical trees.
BinaryTree canonicalize(const BinaryTree& t);

// All isomorphism classes with the given number of leaves, sorted by
// encoding. Counts follow the Wedderburn-Etherington numbers.
std::vector<BinaryTree> enumerate_trees(int leaves);

// Order of the automorphism group: 1 for a leaf, a(L)*a(R) doubled when the
// children are isomorphic.
BigInt automorphism_count(const BinaryTree& t);

// Forest-factorial: product over vertices of their subtree sizes.
BigInt tree_factorial(const BinaryTree& t);

// Rooted tree with arbitrary arity, possibly empty; children stored in
// canonical (sorted) order. Arises by pruning leaves off binary trees.
class GeneralTree {
public:
  static GeneralTree empty();
  static GeneralTree singleton();
  // children must be non-empty trees; an empty list gives the singleton.
  static GeneralTree branch(std::vector<GeneralTree> children);
  // The chain with m vertices (m >= 0).
  static GeneralTree chain(int m);

  bool is_empty() const { return root_ == nullptr; }
  int vertex_count() const;
  int child_count() const;
  GeneralTree child(int i) const;
  const std::string& encoding() const;

  bool operator==(const GeneralTree& o) const {
    return encoding() == o.encoding();
  }
  bool operator!=(const GeneralTree& o) const { return !(*this == o); }

private:
  struct Node {
    std::vector<std::shared_ptr<const Node>> children;
    int size;
    std::string enc;
  };
  explicit GeneralTree(std::shared_ptr<const Node> n) : root_(std::move(n)) {}
  std::shared_ptr<const Node> root_;
};

BigInt tree_factorial(const GeneralTree& t);

// Deletes all leaves; a single leaf prunes to the empty tree, and the
// result of a join is generally non-binary.
GeneralTree prune_leaves(const BinaryTree& t);

// Weight in the tree-indexed expansion: automorphism count times the
// factorial of the pruned tree.
BigInt tree_weight(const BinaryTree& t);

// Memoized evaluation of the tree-indexed slices for one potential:
// the leaf carries P, a join carries <grad L, grad R>. Safe to share
// across threads. The potential must have order >= 2 and trunc >= 0.
class TreeTermCache {
public:
  explicit TreeTermCache(TruncatedSeries p);

  TruncatedSeries eval(const BinaryTree& t);

private:
  struct Entry {
    Poly q;
    std::vector<Poly> grad;
  };
  Entry entry(const BinaryTree& t);

  TruncatedSeries potential_;
  std::unordered_map<std::string, Entry> cache_;
  std::mutex mu_;
};

// Slice for a single tree with a fresh cache.
TruncatedSeries tree_term(const BinaryTree& t, const TruncatedSeries& p);

// Tree-indexed form of the t-order-m slice: sum over all classes with m
// leaves of the tree term divided by its weight. Agrees with the
// recurrence slice of the same order.
TruncatedSeries tree_expansion(const TruncatedSeries& p, int torder);

}  // namespace forminv
