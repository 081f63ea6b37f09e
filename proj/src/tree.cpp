#include "vbt/tree.hpp"

#include <sstream>

namespace vbt {

std::string label_str(Label l) {
  switch (l) {
    case Label::P: return "P";
    case Label::Star: return "*";
    default: return "~P";
  }
}

Label bar(Label l) {
  if (l == Label::P) return Label::Ptilde;
  if (l == Label::Ptilde) return Label::P;
  return Label::Star;
}

int TreeShape::leaf_count() const { return is_leaf() ? 1 : left->leaf_count() + right->leaf_count(); }

bool TreeShape::is_left_comb() const {
  if (is_leaf()) return true;
  return right->is_leaf() && left->is_left_comb();
}

ShapePtr leaf_shape() {
  static const ShapePtr l = std::make_shared<TreeShape>();
  return l;
}

ShapePtr node_shape(ShapePtr l, ShapePtr r) {
  auto n = std::make_shared<TreeShape>();
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

ShapePtr left_comb(int leaves) {
  ShapePtr s = leaf_shape();
  for (int i = 1; i < leaves; ++i) s = node_shape(s, leaf_shape());
  return s;
}

namespace {
ShapePtr parse_shape_at(const std::string& text, size_t& pos) {
  while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size()) throw std::runtime_error("shape parse: unexpected end of input");
  if (text[pos] == 'L') {
    ++pos;
    return leaf_shape();
  }
  if (text[pos] != '(') throw std::runtime_error("shape parse: expected 'L' or '(' at position " + std::to_string(pos));
  ++pos;
  ShapePtr l = parse_shape_at(text, pos);
  ShapePtr r = parse_shape_at(text, pos);
  while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size() || text[pos] != ')') throw std::runtime_error("shape parse: expected ')' at position " + std::to_string(pos));
  ++pos;
  return node_shape(l, r);
}
}  // namespace

ShapePtr parse_shape(const std::string& text) {
  size_t pos = 0;
  ShapePtr s = parse_shape_at(text, pos);
  while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw std::runtime_error("shape parse: trailing input at position " + std::to_string(pos));
  return s;
}

std::string shape_str(const ShapePtr& s) {
  if (s->is_leaf()) return "L";
  return "(" + shape_str(s->left) + " " + shape_str(s->right) + ")";
}

ShapePtr LabeledTree::shape() const {
  if (is_leaf()) return leaf_shape();
  return node_shape(left->shape(), right->shape());
}

LTreePtr lleaf(Label l) {
  auto t = std::make_shared<LabeledTree>();
  t->lab = l;
  return t;
}

LTreePtr lnode(LTreePtr a, LTreePtr b, Label out) {
  auto t = std::make_shared<LabeledTree>();
  t->lab = out;
  t->left = std::move(a);
  t->right = std::move(b);
  return t;
}

std::string ltree_str(const LTreePtr& t) {
  if (t->is_leaf()) return "L:" + label_str(t->lab);
  return "(" + ltree_str(t->left) + " " + ltree_str(t->right) + "):" + label_str(t->lab);
}

namespace {
Label parse_label_at(const std::string& text, size_t& pos) {
  if (pos >= text.size() || text[pos] != ':') throw std::runtime_error("tree parse: expected ':' at position " + std::to_string(pos));
  ++pos;
  if (pos < text.size() && text[pos] == 'P') { ++pos; return Label::P; }
  if (pos < text.size() && text[pos] == '*') { ++pos; return Label::Star; }
  if (pos + 1 < text.size() && text[pos] == '~' && text[pos + 1] == 'P') { pos += 2; return Label::Ptilde; }
  throw std::runtime_error("tree parse: bad label at position " + std::to_string(pos));
}

LTreePtr parse_ltree_at(const std::string& text, size_t& pos) {
  while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size()) throw std::runtime_error("tree parse: unexpected end of input");
  if (text[pos] == 'L') {
    ++pos;
    return lleaf(parse_label_at(text, pos));
  }
  if (text[pos] != '(') throw std::runtime_error("tree parse: expected 'L' or '(' at position " + std::to_string(pos));
  ++pos;
  LTreePtr l = parse_ltree_at(text, pos);
  LTreePtr r = parse_ltree_at(text, pos);
  while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size() || text[pos] != ')') throw std::runtime_error("tree parse: expected ')' at position " + std::to_string(pos));
  ++pos;
  return lnode(l, r, parse_label_at(text, pos));
}
}  // namespace

LTreePtr parse_ltree(const std::string& text) {
  size_t pos = 0;
  LTreePtr t = parse_ltree_at(text, pos);
  while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw std::runtime_error("tree parse: trailing input at position " + std::to_string(pos));
  return t;
}

TreeVector& TreeVector::add_term(const LTreePtr& t, const Scalar& c) {
  if (c.is_zero()) return *this;
  auto it = terms.find(t);
  if (it == terms.end()) {
    terms.emplace(t, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
  return *this;
}

bool TreeVector::operator==(const TreeVector& o) const {
  if (terms.size() != o.terms.size()) return false;
  auto it = terms.begin();
  auto jt = o.terms.begin();
  for (; it != terms.end(); ++it, ++jt) {
    if (ltree_str(it->first) != ltree_str(jt->first) || !(it->second == jt->second)) return false;
  }
  return true;
}

TreeVector tv_of(const LTreePtr& t, const Scalar& c) {
  TreeVector v;
  v.add_term(t, c);
  return v;
}

TreeVector operator+(const TreeVector& x, const TreeVector& y) {
  TreeVector r = x;
  for (const auto& [t, c] : y.terms) r.add_term(t, c);
  return r;
}

TreeVector scaled(const TreeVector& x, const Scalar& c) {
  TreeVector r;
  if (c.is_zero()) return r;
  for (const auto& [t, v] : x.terms) r.terms.emplace(t, v * c);
  return r;
}

bool fusion_allowed(Label a, Label b, Label out, FusionMode mode) {
  auto has = [](std::initializer_list<Label> set, Label x) {
    for (Label l : set)
      if (l == x) return true;
    return false;
  };
  if (mode == FusionMode::classical) {
    if (a == Label::P && b == Label::P) return has({Label::P, Label::Star}, out);
    if ((a == Label::Star && b == Label::P) || (a == Label::P && b == Label::Star)) return out == Label::P;
    return false;
  }
  // virtual mode; rules are symmetric in the two upper inputs
  // ** is impossible as a cable sequence, but the trivial vacuum vertex
  // (* * -> *) is admitted so rebracketing over star arms stays closed
  if (a == Label::Star && b == Label::Star) return out == Label::Star;
  auto pair_is = [&](Label x, Label y) { return (a == x && b == y) || (a == y && b == x); };
  if (pair_is(Label::P, Label::P)) return has({Label::P, Label::Star, Label::Ptilde}, out);
  if (pair_is(Label::P, Label::Ptilde)) return has({Label::P, Label::Star, Label::Ptilde}, out);
  if (pair_is(Label::P, Label::Star)) return has({Label::P, Label::Ptilde}, out);
  if (pair_is(Label::Ptilde, Label::Star)) return has({Label::Ptilde, Label::P}, out);
  // (P~, P~): not listed; decided by the oracle, which gives nonzero
  // expansions for all of {P, *, P~} (the cup junction absorbs both twists)
  if (pair_is(Label::Ptilde, Label::Ptilde)) return has({Label::P, Label::Star, Label::Ptilde}, out);
  return false;
}

bool tree_admissible(const LTreePtr& t, FusionMode mode) {
  if (t->is_leaf()) {
    if (mode == FusionMode::classical) return t->lab == Label::P;
    return t->lab == Label::P || t->lab == Label::Ptilde;
  }
  return fusion_allowed(t->left->lab, t->right->lab, t->lab, mode) && tree_admissible(t->left, mode) &&
         tree_admissible(t->right, mode);
}

namespace {
// 2-strand edge operator of a label: P -> P2, P~ -> virtual crossing then P2
// (reading top to bottom), * -> the empty diagram.
DiagramSum edge_op(Label l) {
  if (l == Label::Star) return dsum_of(Diagram(0, 0, {}));
  DiagramSum p2 = projector2();
  if (l == Label::P) return p2;
  return compose(p2, dsum_of(virtual_transposition()));
}

// Junction by arities (bottom strands of out; top strands of a then b).
DiagramSum junction(Label a, Label b, Label out) {
  int na = strand_count(a), nbr = strand_count(b), nc = strand_count(out);
  if (na == 2 && nbr == 2 && nc == 2) return dsum_of(Diagram(2, 4, {{0, 2}, {3, 4}, {5, 1}}));
  if (na == 2 && nbr == 2 && nc == 0) return dsum_of(Diagram(0, 4, {{1, 2}, {0, 3}}));
  if ((na == 0 && nbr == 2 && nc == 2) || (na == 2 && nbr == 0 && nc == 2)) return identity(2);
  if (na == 0 && nbr == 0 && nc == 0) return dsum_of(Diagram(0, 0, {}));
  throw InadmissibleTree();
}
}  // namespace

DiagramSum expand_to_diagram(const LTreePtr& t) {
  if (t->is_leaf()) return edge_op(t->lab);
  DiagramSum up = tensor(expand_to_diagram(t->left), expand_to_diagram(t->right));
  DiagramSum j = junction(t->left->lab, t->right->lab, t->lab);
  return compose(compose(edge_op(t->lab), j), up);
}

DiagramSum expand_to_diagram(const TreeVector& v) {
  DiagramSum r;
  for (const auto& [t, c] : v.terms) r = r + scaled(expand_to_diagram(t), c);
  return r;
}

Scalar tree_inner(const LTreePtr& x, const LTreePtr& y) {
  return close(compose(expand_to_diagram(x), mirror(expand_to_diagram(y))));
}

std::vector<std::vector<Scalar>> gram_matrix(const std::vector<LTreePtr>& basis) {
  if (!basis.empty()) {
    std::string s0 = shape_str(basis[0]->shape());
    Label r0 = basis[0]->lab;
    for (const auto& t : basis)
      if (shape_str(t->shape()) != s0 || t->lab != r0) throw ShapeMismatch();
  }
  size_t n = basis.size();
  std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n));
  std::vector<DiagramSum> ex(n);
  for (size_t i = 0; i < n; ++i) ex[i] = expand_to_diagram(basis[i]);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      Scalar v = close(compose(ex[j], mirror(ex[i])));
      g[i][j] = v;
      g[j][i] = v;
    }
  return g;
}

namespace {
void enumerate_rec(const ShapePtr& shape, FusionMode mode, Label leaf_label,
                   const std::vector<Label>& out_labels, std::vector<LTreePtr>& result,
                   std::vector<std::pair<Label, LTreePtr>>& partial) {
  // builds, for a given subtree shape, the list of (root label, labeled tree)
  if (shape->is_leaf()) {
    partial.emplace_back(leaf_label, lleaf(leaf_label));
    return;
  }
  std::vector<std::pair<Label, LTreePtr>> ls, rs;
  enumerate_rec(shape->left, mode, leaf_label, out_labels, result, ls);
  enumerate_rec(shape->right, mode, leaf_label, out_labels, result, rs);
  for (const auto& [la, lt] : ls)
    for (const auto& [lb, rt] : rs)
      for (Label out : out_labels)
        if (fusion_allowed(la, lb, out, mode)) partial.emplace_back(out, lnode(lt, rt, out));
}
}  // namespace

std::vector<LTreePtr> enumerate_labelings(const ShapePtr& shape, FusionMode mode, Label leaf_label,
                                          std::optional<Label> root_filter) {
  std::vector<Label> order = {Label::P, Label::Star, Label::Ptilde};
  std::vector<LTreePtr> result;
  std::vector<std::pair<Label, LTreePtr>> all;
  enumerate_rec(shape, mode, leaf_label, order, result, all);
  for (const auto& [root, t] : all)
    if (!root_filter || root == *root_filter) result.push_back(t);
  return result;
}

}  // namespace vbt
