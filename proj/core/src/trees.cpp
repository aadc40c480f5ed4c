#include "forminv/trees.hpp"

#include <algorithm>

#include "forminv/parallel.hpp"

namespace forminv {

BinaryTree BinaryTree::leaf() {
  static const std::shared_ptr<const Node> kLeaf = [] {
    auto n = std::make_shared<Node>();
    n->leaves = 1;
    n->enc = "o";
    return n;
  }();
  return BinaryTree(kLeaf);
}

BinaryTree BinaryTree::join(const BinaryTree& a, const BinaryTree& b) {
  const BinaryTree& l = a.encoding() <= b.encoding() ? a : b;
  const BinaryTree& r = a.encoding() <= b.encoding() ? b : a;
  auto n = std::make_shared<Node>();
  n->left = l.node_;
  n->right = r.node_;
  n->leaves = l.leaf_count() + r.leaf_count();
  n->enc = "(" + l.encoding() + r.encoding() + ")";
  return BinaryTree(std::move(n));
}

namespace {

BinaryTree parse_binary(std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) throw ParseError("unexpected end of tree encoding");
  char c = s[pos];
  if (c == 'o') {
    ++pos;
    return BinaryTree::leaf();
  }
  if (c != '(') throw ParseError("expected 'o' or '(' in tree encoding");
  ++pos;
  BinaryTree a = parse_binary(s, pos);
  BinaryTree b = parse_binary(s, pos);
  if (pos >= s.size() || s[pos] != ')')
    throw ParseError("expected ')' in tree encoding");
  ++pos;
  return BinaryTree::join(a, b);
}

}  // namespace

BinaryTree BinaryTree::parse(std::string_view text) {
  std::size_t pos = 0;
  BinaryTree t = parse_binary(text, pos);
  if (pos != text.size()) throw ParseError("trailing characters in tree encoding");
  return t;
}

bool BinaryTree::is_leaf() const { return node_->left == nullptr; }

BinaryTree BinaryTree::left() const {
  if (is_leaf()) throw DomainError("leaf has no children");
  return BinaryTree(node_->left);
}

BinaryTree BinaryTree::right() const {
  if (is_leaf()) throw DomainError("leaf has no children");
  return BinaryTree(node_->right);
}

int BinaryTree::leaf_count() const { return node_->leaves; }

int BinaryTree::vertex_count() const { return 2 * node_->leaves - 1; }

const std::string& BinaryTree::encoding() const { return node_->enc; }

BinaryTree canonicalize(const BinaryTree& t) {
  if (t.is_leaf()) return t;
  return BinaryTree::join(canonicalize(t.left()), canonicalize(t.right()));
}

std::vector<BinaryTree> enumerate_trees(int leaves) {
  if (leaves < 1) throw DomainError("leaf count must be at least 1");
  std::vector<std::vector<BinaryTree>> classes;
  classes.push_back({BinaryTree::leaf()});
  for (int m = 2; m <= leaves; ++m) {
    std::vector<BinaryTree> out;
    // The root split {k, m-k} is an isomorphism invariant, so distinct
    // splits and distinct unordered child pairs never collide.
    for (int k = 1; 2 * k <= m; ++k) {
      const auto& small = classes[static_cast<std::size_t>(k - 1)];
      const auto& large = classes[static_cast<std::size_t>(m - k - 1)];
      if (2 * k == m) {
        for (std::size_t i = 0; i < small.size(); ++i)
          for (std::size_t j = i; j < small.size(); ++j)
            out.push_back(BinaryTree::join(small[i], small[j]));
      } else {
        for (const auto& a : small)
          for (const auto& b : large) out.push_back(BinaryTree::join(a, b));
      }
    }
    std::sort(out.begin(), out.end(), [](const BinaryTree& a, const BinaryTree& b) {
      return a.encoding() < b.encoding();
    });
    classes.push_back(std::move(out));
  }
  return classes[static_cast<std::size_t>(leaves - 1)];
}

BigInt automorphism_count(const BinaryTree& t) {
  if (t.is_leaf()) return 1;
  BigInt a = automorphism_count(t.left()) * automorphism_count(t.right());
  if (t.left() == t.right()) a *= 2;
  return a;
}

BigInt tree_factorial(const BinaryTree& t) {
  if (t.is_leaf()) return 1;
  return BigInt(t.vertex_count()) * tree_factorial(t.left()) *
         tree_factorial(t.right());
}

GeneralTree GeneralTree::empty() { return GeneralTree(nullptr); }

GeneralTree GeneralTree::singleton() {
  static const std::shared_ptr<const Node> kSingleton = [] {
    auto n = std::make_shared<Node>();
    n->size = 1;
    n->enc = "o";
    return n;
  }();
  return GeneralTree(kSingleton);
}

GeneralTree GeneralTree::branch(std::vector<GeneralTree> children) {
  if (children.empty()) return singleton();
  auto n = std::make_shared<Node>();
  n->size = 1;
  for (const auto& c : children) {
    if (c.is_empty()) throw DomainError("branch child must be non-empty");
    n->size += c.vertex_count();
  }
  std::sort(children.begin(), children.end(),
            [](const GeneralTree& a, const GeneralTree& b) {
              return a.encoding() < b.encoding();
            });
  n->enc = "(";
  for (const auto& c : children) {
    n->enc += c.encoding();
    n->children.push_back(c.root_);
  }
  n->enc += ")";
  return GeneralTree(std::move(n));
}

GeneralTree GeneralTree::chain(int m) {
  if (m < 0) throw DomainError("chain length must be non-negative");
  GeneralTree t = empty();
  for (int j = 0; j < m; ++j)
    t = t.is_empty() ? singleton() : branch({t});
  return t;
}

int GeneralTree::vertex_count() const { return root_ ? root_->size : 0; }

int GeneralTree::child_count() const {
  if (!root_) throw DomainError("empty tree has no children");
  return static_cast<int>(root_->children.size());
}

GeneralTree GeneralTree::child(int i) const {
  if (i < 0 || i >= child_count()) throw DomainError("child index out of range");
  return GeneralTree(root_->children[static_cast<std::size_t>(i)]);
}

const std::string& GeneralTree::encoding() const {
  static const std::string kEmpty;
  return root_ ? root_->enc : kEmpty;
}

BigInt tree_factorial(const GeneralTree& t) {
  if (t.is_empty()) return 1;
  BigInt f = t.vertex_count();
  for (int i = 0; i < t.child_count(); ++i) f *= tree_factorial(t.child(i));
  return f;
}

GeneralTree prune_leaves(const BinaryTree& t) {
  if (t.is_leaf()) return GeneralTree::empty();
  std::vector<GeneralTree> children;
  GeneralTree l = prune_leaves(t.left());
  GeneralTree r = prune_leaves(t.right());
  if (!l.is_empty()) children.push_back(std::move(l));
  if (!r.is_empty()) children.push_back(std::move(r));
  return GeneralTree::branch(std::move(children));
}

BigInt tree_weight(const BinaryTree& t) {
  return automorphism_count(t) * tree_factorial(prune_leaves(t));
}

TreeTermCache::TreeTermCache(TruncatedSeries p) : potential_(std::move(p)) {
  if (potential_.trunc() < 0)
    throw DomainError("truncation exhausted");
  if (!potential_.is_zero() && potential_.order() < 2)
    throw DomainError("potential must have order >= 2");
}

TreeTermCache::Entry TreeTermCache::entry(const BinaryTree& t) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(t.encoding());
    if (it != cache_.end()) return it->second;
  }
  const int n = potential_.nvars();
  const int w = potential_.trunc();
  Entry e{Poly(n), {}};
  if (t.is_leaf()) {
    e.q = potential_.poly();
  } else {
    Entry l = entry(t.left());
    Entry r = entry(t.right());
    for (int v = 0; v < n; ++v)
      e.q += mul_window(l.grad[static_cast<std::size_t>(v)],
                        r.grad[static_cast<std::size_t>(v)], w);
  }
  e.grad.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) e.grad.push_back(e.q.derivative(v));
  {
    std::lock_guard<std::mutex> lock(mu_);
    cache_.try_emplace(t.encoding(), e);
  }
  return e;
}

TruncatedSeries TreeTermCache::eval(const BinaryTree& t) {
  return TruncatedSeries(entry(t).q, potential_.trunc());
}

TruncatedSeries tree_term(const BinaryTree& t, const TruncatedSeries& p) {
  TreeTermCache cache(p);
  return cache.eval(t);
}

TruncatedSeries tree_expansion(const TruncatedSeries& p, int torder) {
  if (torder < 1) throw DomainError("t-order must be at least 1");
  TreeTermCache cache(p);
  std::vector<BinaryTree> trees = enumerate_trees(torder);
  std::vector<Poly> scaled(trees.size(), Poly(p.nvars()));
  parallel_for(static_cast<int>(trees.size()), [&](int i) {
    const BinaryTree& t = trees[static_cast<std::size_t>(i)];
    GaussianRational inv_weight(Rational(BigInt(1), tree_weight(t)));
    scaled[static_cast<std::size_t>(i)] =
        cache.eval(t).poly().scaled(inv_weight);
  });
  Poly acc(p.nvars());
  for (const auto& s : scaled) acc += s;
  return TruncatedSeries(std::move(acc), p.trunc());
}

}  // namespace forminv
