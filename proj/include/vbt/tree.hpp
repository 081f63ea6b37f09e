#pragma once
// Fusion-tree shapes, edge labelings over {P, *, P~}, admissibility,
// expansion into the diagram oracle, gram matrices, and enumeration.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vbt/diagram.hpp"

namespace vbt {

struct InadmissibleTree : std::runtime_error {
  InadmissibleTree() : std::runtime_error("labeled tree is not admissible") {}
};
struct ShapeMismatch : std::runtime_error {
  ShapeMismatch() : std::runtime_error("trees do not share shape/root") {}
};

enum class Label : uint8_t { P = 0, Star = 1, Ptilde = 2 };
enum class FusionMode { classical, virt };

inline int strand_count(Label l) { return l == Label::Star ? 0 : 2; }
std::string label_str(Label l);   // "P", "*", "~P"
Label bar(Label l);               // exchanges P <-> P~, fixes *

// Unlabeled binary tree shape.
struct TreeShape {
  std::shared_ptr<const TreeShape> left, right;  // both null for a leaf
  bool is_leaf() const { return !left; }
  int leaf_count() const;
  bool is_left_comb() const;
};
using ShapePtr = std::shared_ptr<const TreeShape>;
ShapePtr leaf_shape();
ShapePtr node_shape(ShapePtr l, ShapePtr r);
ShapePtr left_comb(int leaves);
// grammar: `L` | `( <tree> <tree> )`
ShapePtr parse_shape(const std::string& text);
std::string shape_str(const ShapePtr& s);

// A labeled tree: every subterm carries the label of its outgoing edge.
struct LabeledTree {
  Label lab = Label::P;
  std::shared_ptr<const LabeledTree> left, right;  // both null for a leaf
  bool is_leaf() const { return !left; }
  ShapePtr shape() const;
};
using LTreePtr = std::shared_ptr<const LabeledTree>;
LTreePtr lleaf(Label l);
LTreePtr lnode(LTreePtr a, LTreePtr b, Label out);
// serialization: `L:P`, `((L:P L:P):* L:P):P`, `~P` for the P-tilde label
std::string ltree_str(const LTreePtr& t);
LTreePtr parse_ltree(const std::string& text);

struct LTreeLess {
  bool operator()(const LTreePtr& a, const LTreePtr& b) const { return ltree_str(a) < ltree_str(b); }
};

struct TreeVector {
  std::map<LTreePtr, Scalar, LTreeLess> terms;
  TreeVector& add_term(const LTreePtr& t, const Scalar& c);
  bool operator==(const TreeVector& o) const;
  bool is_zero() const { return terms.empty(); }
};
TreeVector tv_of(const LTreePtr& t, const Scalar& c = Scalar::from_int(1));
TreeVector operator+(const TreeVector& x, const TreeVector& y);
TreeVector scaled(const TreeVector& x, const Scalar& c);

bool fusion_allowed(Label a, Label b, Label out, FusionMode mode);
bool tree_admissible(const LTreePtr& t, FusionMode mode);

// Expansion into the oracle: leaves on top (2 strands per P/P~ leaf), root at
// the bottom (strand count of the root label).
DiagramSum expand_to_diagram(const LTreePtr& t);
// Linear extension to vectors.
DiagramSum expand_to_diagram(const TreeVector& v);

// Inner product <x, y> = close(x composed under mirror(y)).
Scalar tree_inner(const LTreePtr& x, const LTreePtr& y);
std::vector<std::vector<Scalar>> gram_matrix(const std::vector<LTreePtr>& basis);

// All admissible labelings of `shape` with every leaf fixed to leaf_label,
// optionally filtered by root label; deterministic order (P < * < P~).
std::vector<LTreePtr> enumerate_labelings(const ShapePtr& shape, FusionMode mode, Label leaf_label,
                                          std::optional<Label> root_filter = std::nullopt);

}  // namespace vbt
