#include "vbt/recoupling.hpp"

#include <array>
#include <functional>
#include <sstream>

namespace vbt {

namespace {

const Scalar& one() {
  static const Scalar s = Scalar::from_int(1);
  return s;
}

LTreePtr relabel_root(const LTreePtr& t, Label lab) {
  if (t->lab == lab) return t;
  if (t->is_leaf()) return lleaf(lab);
  return lnode(t->left, t->right, lab);
}

// memoized tree expansion (the oracle side of every certificate)
const DiagramSum& cached_expand(const LTreePtr& t) {
  static std::map<std::string, DiagramSum> cache;
  std::string k = ltree_str(t);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(std::move(k), expand_to_diagram(t)).first;
  return it->second;
}

// ---- linear solving over diagram coordinates -------------------------------
// target = sum x_j * basis_j solved exactly; free variables pinned to zero.
std::optional<std::vector<Scalar>> solve_span(const DiagramSum& target,
                                              const std::vector<DiagramSum>& basis) {
  std::map<Diagram, int> idx;
  auto note = [&](const DiagramSum& s) {
    for (const auto& [d, c] : s.terms)
      if (!idx.count(d)) idx.emplace(d, (int)idx.size());
  };
  for (const auto& b : basis) note(b);
  note(target);
  const int m = (int)idx.size(), k = (int)basis.size();
  std::vector<std::vector<Scalar>> M(m, std::vector<Scalar>(k + 1));
  for (int j = 0; j < k; ++j)
    for (const auto& [d, c] : basis[j].terms) M[idx.at(d)][j] = c;
  for (const auto& [d, c] : target.terms) M[idx.at(d)][k] = c;

  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < k && row < m; ++col) {
    int pr = -1;
    for (int r = row; r < m; ++r)
      if (!M[r][col].is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(M[row], M[pr]);
    Scalar inv = M[row][col].inverse();
    for (int c2 = col; c2 <= k; ++c2)
      if (!M[row][c2].is_zero()) M[row][c2] = M[row][c2] * inv;
    for (int r = 0; r < m; ++r) {
      if (r == row || M[r][col].is_zero()) continue;
      Scalar f = M[r][col];
      for (int c2 = col; c2 <= k; ++c2)
        if (!M[row][c2].is_zero()) M[r][c2] = M[r][c2] - f * M[row][c2];
    }
    pivots.push_back(col);
    ++row;
  }
  for (int r = row; r < m; ++r)
    if (!M[r][k].is_zero()) return std::nullopt;
  std::vector<Scalar> x(k);
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = M[i][k];
  return x;
}

// ---- fragments and cabled operators -----------------------------------------
LTreePtr frag_tree(const Fragment& f) { return lnode(lleaf(f.x), lleaf(f.y), f.c); }

const std::vector<Fragment>& canonical_fragments() {
  static const std::vector<Fragment> fr = [] {
    std::vector<Fragment> v;
    for (Label c : {Label::P, Label::Ptilde})
      for (Label x : {Label::P, Label::Ptilde})
        for (Label y : {Label::P, Label::Ptilde}) v.push_back({x, y, c});
    v.push_back({Label::P, Label::P, Label::Star});
    v.push_back({Label::P, Label::Ptilde, Label::Star});
    return v;
  }();
  return fr;
}

// two projected 2-cables crossing: the four strand crossings smoothed
DiagramSum sig_cable(bool inv) {
  DiagramSum s = smooth_crossing(inv ? CrossSign::positive : CrossSign::negative);
  DiagramSum mid = tensor(tensor(identity(1), s), identity(1));
  return compose(compose(mid, tensor(s, s)), mid);
}

const DiagramSum& splus() {
  static const DiagramSum d = sig_cable(false);
  return d;
}
const DiagramSum& sminus() {
  static const DiagramSum d = sig_cable(true);
  return d;
}
// two 2-cables crossing virtually (a pure permutation of strands)
const DiagramSum& vcab() {
  static const DiagramSum d = dsum_of(Diagram(4, 4, {{0, 6}, {1, 7}, {2, 4}, {3, 5}}));
  return d;
}

std::optional<FragmentImage> solve_frag(const DiagramSum& lhs, bool star) {
  std::vector<Fragment> cands;
  for (const auto& f : canonical_fragments())
    if ((f.c == Label::Star) == star) cands.push_back(f);
  std::vector<DiagramSum> basis;
  basis.reserve(cands.size());
  for (const auto& f : cands) basis.push_back(cached_expand(frag_tree(f)));
  auto x = solve_span(lhs, basis);
  if (!x) return std::nullopt;
  FragmentImage img;
  for (size_t i = 0; i < cands.size(); ++i)
    if (!(*x)[i].is_zero()) img.emplace_back(cands[i], (*x)[i]);
  return img;
}

DiagramSum image_expansion(const FragmentImage& img) {
  DiagramSum rhs;
  for (const auto& [f, c] : img) rhs = rhs + scaled(cached_expand(frag_tree(f)), c);
  return rhs;
}

bool verify_row(const DiagramSum& lhs, const FragmentImage& img) {
  return (lhs + scaled(image_expansion(img), -one())).is_zero();
}

std::string image_str(const FragmentImage& img) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [f, c] : img) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << fragment_str(f);
  }
  if (first) os << "0";
  return os.str();
}

// ---- left-comb state view ----------------------------------------------------
struct Comb {
  std::vector<Label> leaves;  // n leaf labels
  std::vector<Label> chans;   // n-1 vertex outputs bottom-up; back() is the root
};

Comb to_comb(const LTreePtr& t) {
  Comb s;
  std::vector<const LabeledTree*> spine;
  const LabeledTree* cur = t.get();
  while (!cur->is_leaf()) {
    if (!cur->right->is_leaf()) throw BadPosition("state is not a left comb");
    spine.push_back(cur);
    cur = cur->left.get();
  }
  s.leaves.push_back(cur->lab);
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) {
    s.leaves.push_back((*it)->right->lab);
    s.chans.push_back((*it)->lab);
  }
  return s;
}

LTreePtr from_comb(const Comb& s) {
  LTreePtr t = lleaf(s.leaves[0]);
  for (size_t j = 0; j + 1 < s.leaves.size(); ++j)
    t = lnode(t, lleaf(s.leaves[j + 1]), s.chans[j]);
  return t;
}

// canonical form, one bottom-up pass; both rewrites are exact coefficient-1
// relabelings (see the 'star first arm' and 'parity transport' certificates)
void canon_comb(Comb& s) {
  const int n = (int)s.leaves.size();
  for (int j = 0; j + 1 < n; ++j) {
    Label first = (j == 0) ? s.leaves[0] : s.chans[j - 1];
    if (first == Label::Star && s.leaves[j + 1] == Label::Ptilde) {
      s.leaves[j + 1] = Label::P;
      s.chans[j] = bar(s.chans[j]);
    }
    first = (j == 0) ? s.leaves[0] : s.chans[j - 1];
    if (s.chans[j] == Label::Star && first == Label::Ptilde) {
      if (j == 0)
        s.leaves[0] = Label::P;
      else
        s.chans[j - 1] = Label::P;
      s.leaves[j + 1] = bar(s.leaves[j + 1]);
    }
  }
}

// ---- cached local rebracketing rules (the forward F direction) ---------------
struct LocalTerm {
  Label x, y, f, z;
  Scalar coeff;
};
using LocalRule = std::vector<LocalTerm>;

std::vector<Label> one_or_pair(Label l, bool both) {
  if (!both || bar(l) == l) return {l};
  return {l, bar(l)};
}

// Rebracketing node(u, node(v,w,g), c) -> sums over node(node(u,v,f), w, c).
//
// When all three arms carry 2-strand cables the rewrite is the four-term rule:
// the F-matrix on a classical middle channel, the four-term c1..c4
// rule on a decorated one.  These hold in the Fibonacci quotient but are
// NOT exact diagram identities at generic A — the cable pair also admits a
// 4-strand channel that the label set {P, *, P~} omits (see the rule
// certificates).  When an arm is a star (0 strands) only 4 strands are
// live and the rewrite IS solved exactly against the oracle.
const LocalRule& forward_rule(Label lu, Label lv, Label lw, Label g, Label c) {
  static std::map<std::array<Label, 5>, LocalRule> cache;
  std::array<Label, 5> key{lu, lv, lw, g, c};
  auto hit = cache.find(key);
  if (hit != cache.end()) return hit->second;

  LocalRule r;
  const bool star_arm = (lu == Label::Star || lv == Label::Star || lw == Label::Star);
  if (!star_arm) {
    const auto& cn = constants();
    auto push = [&](Label y, Label f, const Scalar& coeff) {
      if (coeff.is_zero()) return;
      if (!fusion_allowed(lu, y, f, FusionMode::virt)) return;
      if (!fusion_allowed(f, lw, c, FusionMode::virt)) return;
      r.push_back({lu, y, f, lw, coeff});
    };
    if (g == Label::Ptilde) {
      push(lv, Label::P, cn.c1);
      push(bar(lv), Label::P, cn.c2);
      push(lv, Label::Star, cn.c3);
      push(bar(lv), Label::Star, cn.c4);
    } else {
      const FMatrix& M = f_matrix();
      push(lv, Label::Star, g == Label::Star ? M.ss : M.ps);
      push(lv, Label::P, g == Label::Star ? M.sp : M.pp);
    }
  } else {
    const DiagramSum& target =
        cached_expand(lnode(lleaf(lu), lnode(lleaf(lv), lleaf(lw), g), c));
    std::vector<std::array<Label, 4>> cand;
    std::vector<DiagramSum> bas;
    for (Label x : one_or_pair(lu, true))
      for (Label y : one_or_pair(lv, true))
        for (Label f : {Label::P, Label::Star, Label::Ptilde})
          for (Label z : one_or_pair(lw, true)) {
            if (!fusion_allowed(x, y, f, FusionMode::virt)) continue;
            if (!fusion_allowed(f, z, c, FusionMode::virt)) continue;
            cand.push_back({x, y, f, z});
            bas.push_back(cached_expand(lnode(lnode(lleaf(x), lleaf(y), f), lleaf(z), c)));
          }
    auto sol = cand.empty() ? std::nullopt : solve_span(target, bas);
    if (!sol)
      throw BadPosition("no exact rebracketing over a star arm for middle channel " +
                        label_str(g));
    for (size_t i = 0; i < cand.size(); ++i)
      if (!(*sol)[i].is_zero())
        r.push_back({cand[i][0], cand[i][1], cand[i][2], cand[i][3], (*sol)[i]});
  }
  return cache.emplace(key, std::move(r)).first->second;
}

// rewrite the node at `position`, grafting each produced subtree back in
TreeVector rewrite_at(const LTreePtr& t, const std::string& pos, size_t i,
                      const std::function<TreeVector(const LTreePtr&)>& fn) {
  if (i == pos.size()) return fn(t);
  if (t->is_leaf()) throw BadPosition("position descends past a leaf");
  bool go_left;
  if (pos[i] == 'l')
    go_left = true;
  else if (pos[i] == 'r')
    go_left = false;
  else
    throw BadPosition("position characters must be 'l' or 'r'");
  TreeVector sub = rewrite_at(go_left ? t->left : t->right, pos, i + 1, fn);
  TreeVector out;
  for (const auto& [st, c] : sub.terms)
    out.add_term(go_left ? lnode(st, t->right, t->lab) : lnode(t->left, st, t->lab), c);
  return out;
}

TreeVector map_terms(const TreeVector& tv, const std::string& pos,
                     const std::function<TreeVector(const LTreePtr&)>& fn) {
  TreeVector out;
  for (const auto& [t, c] : tv.terms) out = out + scaled(rewrite_at(t, pos, 0, fn), c);
  return out;
}

bool find_right_nest(const LTreePtr& t, const std::string& path, std::string* out) {
  if (t->is_leaf()) return false;
  if (!t->right->is_leaf()) {
    *out = path;
    return true;
  }
  return find_right_nest(t->left, path + "l", out);
}

}  // namespace

std::string fragment_str(const Fragment& f) {
  return "(" + label_str(f.x) + " " + label_str(f.y) + " -> " + label_str(f.c) + ")";
}

LTreePtr subtree_at(const LTreePtr& t, const std::string& position) {
  LTreePtr cur = t;
  for (char step : position) {
    if (cur->is_leaf()) throw BadPosition("position descends past a leaf");
    if (step == 'l')
      cur = cur->left;
    else if (step == 'r')
      cur = cur->right;
    else
      throw BadPosition("position characters must be 'l' or 'r'");
  }
  return cur;
}

const FMatrix& f_matrix() {
  static const FMatrix M = [] {
    const auto& c = constants();
    return FMatrix{c.a, c.g, c.g, c.h};
  }();
  return M;
}

const FMatrix& f_matrix_inverse() {
  static const FMatrix M = [] {
    const auto& c = constants();
    Scalar k = (c.Delta * c.Delta) / (c.Delta + one());
    return FMatrix{c.a * k, c.g * k, c.g * k, c.h * k};
  }();
  return M;
}

TreeVector f_move(const TreeVector& tv, const std::string& position, FDirection dir) {
  if (dir == FDirection::forward) {
    return map_terms(tv, position, [](const LTreePtr& t) {
      if (t->is_leaf()) throw BadPosition("position addresses a leaf");
      const LTreePtr& rb = t->right;
      if (rb->is_leaf()) throw BadPosition("no right-nested vertex pair at position");
      const LocalRule& rule =
          forward_rule(t->left->lab, rb->left->lab, rb->right->lab, rb->lab, t->lab);
      TreeVector r;
      for (const auto& tm : rule) {
        r.add_term(lnode(lnode(relabel_root(t->left, tm.x), relabel_root(rb->left, tm.y), tm.f),
                         relabel_root(rb->right, tm.z), t->lab),
                   tm.coeff);
      }
      return r;
    });
  }
  // backward: apply the F-matrix on the classical channel pair
  return map_terms(tv, position, [](const LTreePtr& t) {
    if (t->is_leaf()) throw BadPosition("position addresses a leaf");
    const LTreePtr& lb = t->left;
    if (lb->is_leaf()) throw BadPosition("no left-nested vertex pair at position");
    Label f = lb->lab;
    if (f == Label::Ptilde)
      throw BadPosition("backward F move is defined on classical channels");
    const FMatrix& M = f_matrix();
    TreeVector r;
    auto entry = [&](Label from, Label to) {
      if (from == Label::Star) return to == Label::Star ? M.ss : M.sp;
      return to == Label::Star ? M.ps : M.pp;
    };
    for (Label g : {Label::Star, Label::P}) {
      if (!fusion_allowed(lb->right->lab, t->right->lab, g, FusionMode::virt)) continue;
      if (!fusion_allowed(lb->left->lab, g, t->lab, FusionMode::virt)) continue;
      r.add_term(lnode(lb->left, lnode(lb->right, t->right, g), t->lab), entry(f, g));
    }
    return r;
  });
}

TreeVector r_move(const TreeVector& tv, const std::string& position, int sign) {
  const auto& R = Recoupler::instance();
  return map_terms(tv, position, [&](const LTreePtr& t) {
    if (t->is_leaf()) throw BadPosition("position addresses a leaf");
    Label x = t->left->lab, y = t->right->lab;
    if (x == Label::Ptilde || y == Label::Ptilde)
      throw NotClassicalCrossing("decorated arm at position; use lemma3_rule");
    if (x == Label::Star || y == Label::Star) {
      // crossing with an empty cable: pure positional transport
      return tv_of(lnode(t->right, t->left, t->lab));
    }
    FragmentImage row = R.sigma_row(Fragment{x, y, t->lab}, sign);
    if (row.size() != 1 || !(row[0].first == Fragment{x, y, t->lab}))
      throw NotClassicalCrossing("crossing does not act diagonally here");
    return tv_of(t, row[0].second);
  });
}

TreeVector swap_move(const TreeVector& tv, const std::string& position) {
  return map_terms(tv, position, [](const LTreePtr& t) {
    if (t->is_leaf()) throw BadPosition("position addresses a leaf");
    return tv_of(lnode(relabel_root(t->right, bar(t->right->lab)),
                       relabel_root(t->left, bar(t->left->lab)), bar(t->lab)));
  });
}

Scalar turnback_value() {
  DiagramSum cap = dsum_of(Diagram(2, 0, {{0, 1}}));
  DiagramSum t = compose(projector2(), cap);
  if (!t.is_zero()) throw PatternMismatch("turnback reduction failed certification");
  return Scalar();
}

Scalar bubble_value(bool decorated) {
  LTreePtr v = lnode(lleaf(Label::P), lleaf(decorated ? Label::Ptilde : Label::P), Label::P);
  DiagramSum ex = expand_to_diagram(v);
  DiagramSum b = compose(ex, mirror(ex));
  auto sol = solve_span(b, {projector2()});
  if (!sol) throw PatternMismatch("bubble is not a multiple of the projected edge");
  return (*sol)[0];
}

TreeVector bubble_reduce(const TreeVector& tv, const std::string& position) {
  for (const auto& [t, c] : tv.terms) (void)subtree_at(t, position);
  throw BadPosition(
      "tree terms carry no explicit bubble (expansion absorbs it); "
      "the certified coefficient is bubble_value()");
}

TreeVector turnback_reduce(const TreeVector& tv, const std::string& position) {
  for (const auto& [t, c] : tv.terms) (void)subtree_at(t, position);
  throw BadPosition(
      "tree terms carry no explicit turnback (expansion absorbs it); "
      "the certified value is turnback_value() = 0");
}

TreeVector lemma1_rule(const LTreePtr& fragment) {
  if (fragment->is_leaf() || fragment->right->is_leaf() ||
      fragment->right->lab != Label::Ptilde)
    throw PatternMismatch("expected node(x, node(y,z) : ~P, c)");
  return f_move(tv_of(fragment), "", FDirection::forward);
}

TreeVector lemma2_rule(const LTreePtr& fragment) {
  if (fragment->is_leaf() || !fragment->left->is_leaf() || !fragment->right->is_leaf())
    throw PatternMismatch("expected a two-leaf vertex fragment");
  Label x = fragment->left->lab, y = fragment->right->lab;
  if (x == Label::Star || y == Label::Star)
    throw PatternMismatch("double twist needs two projected cables");
  static std::map<std::string, FragmentImage> cache;
  std::string key = ltree_str(fragment);
  auto it = cache.find(key);
  if (it == cache.end()) {
    DiagramSum op = compose(splus(), splus());
    DiagramSum lhs = compose(cached_expand(fragment), op);
    auto img = solve_frag(lhs, fragment->lab == Label::Star);
    if (!img || !verify_row(lhs, *img))
      throw PatternMismatch("double twist not expressible over the fragment span");
    it = cache.emplace(std::move(key), *img).first;
  }
  TreeVector out;
  for (const auto& [f, c] : it->second) out.add_term(frag_tree(f), c);
  return out;
}

TreeVector lemma3_rule(const LTreePtr& fragment, int sign) {
  if (fragment->is_leaf() || !fragment->left->is_leaf() || !fragment->right->is_leaf())
    throw PatternMismatch("expected a two-leaf vertex fragment");
  Label x = fragment->left->lab, y = fragment->right->lab;
  if (x == Label::Star || y == Label::Star) {
    // degenerate branch: the crossing with an empty cable is label transport
    return tv_of(lnode(fragment->right, fragment->left, fragment->lab));
  }
  if (x != Label::Ptilde && y != Label::Ptilde)
    throw PatternMismatch("no decorated arm; use r_move");
  FragmentImage row =
      Recoupler::instance().sigma_row(Fragment{x, y, fragment->lab}, sign);
  TreeVector out;
  for (const auto& [f, c] : row) out.add_term(frag_tree(f), c);
  return out;
}

// ---- Recoupler ---------------------------------------------------------------

const Recoupler& Recoupler::instance() {
  static const Recoupler r;
  return r;
}

Recoupler::Recoupler() {
  const auto& frs = canonical_fragments();
  auto add_table = [&](const DiagramSum& op, int sign, const std::string& nm) {
    for (const auto& f : frs) {
      DiagramSum lhs = compose(cached_expand(frag_tree(f)), op);
      auto img = solve_frag(lhs, f.c == Label::Star);
      if (!img)
        throw PatternMismatch(nm + " row unsolvable over fragment span at " + fragment_str(f));
      bool ok = verify_row(lhs, *img);
      if (sign == 0)
        v_.emplace(f, *img);
      else
        sigma_.emplace(std::make_pair(f, sign), *img);
      certs_.push_back({nm + " over " + fragment_str(f), ok, "oracle-derived", image_str(*img)});
    }
  };
  add_table(splus(), +1, "sigma+");
  add_table(sminus(), -1, "sigma-");
  add_table(vcab(), 0, "v");

  // structural form of the virtual rows: swap then flip, coefficient one
  {
    bool ok = true;
    for (const auto& f : frs) {
      Fragment expct{bar(f.y), bar(f.x), bar(f.c)};
      if (expct.c == Label::Star && expct.x == Label::Ptilde)
        expct = Fragment{bar(expct.x), bar(expct.y), expct.c};
      const FragmentImage& img = v_.at(f);
      ok = ok && img.size() == 1 && img[0].first == expct && img[0].second.is_one();
    }
    certs_.push_back({"virtual crossing = swap-then-flip, coefficient 1", ok, "oracle-derived",
                      "single-term rows over all 12 fragments"});
  }

  // sigma+ then sigma- is the identity row by row
  {
    bool ok = true;
    for (const auto& f : frs) {
      FragmentImage acc;
      for (const auto& [f2, c2] : sigma_.at({f, +1}))
        for (const auto& [f3, c3] : sigma_.at({f2, -1})) acc.emplace_back(f3, c2 * c3);
      DiagramSum net = image_expansion(acc);
      ok = ok && (net + scaled(cached_expand(frag_tree(f)), -one())).is_zero();
    }
    certs_.push_back({"sigma+ followed by sigma- is the identity", ok, "oracle-derived",
                      "table-level composition over all 12 fragments"});
  }

  // canonicalization rule 1: a star-output vertex flips both arms freely
  {
    auto eq = [&](const Fragment& u, const Fragment& w) {
      return (cached_expand(frag_tree(u)) + scaled(cached_expand(frag_tree(w)), -one()))
          .is_zero();
    };
    bool ok = eq({Label::Ptilde, Label::Ptilde, Label::Star}, {Label::P, Label::P, Label::Star}) &&
              eq({Label::Ptilde, Label::P, Label::Star}, {Label::P, Label::Ptilde, Label::Star});
    certs_.push_back({"star-output vertex: flipping both arms is exact", ok, "oracle-derived",
                      "coefficient-1 identities"});
  }

  // canonicalization rule 2: decoration parity transports across a star arm
  {
    LTreePtr sv = lnode(lleaf(Label::P), lleaf(Label::P), Label::Star);
    bool ok = true;
    for (Label c : {Label::P, Label::Ptilde}) {
      LTreePtr a = lnode(sv, lleaf(Label::Ptilde), c);
      LTreePtr b = lnode(sv, lleaf(Label::P), bar(c));
      ok = ok && (cached_expand(a) + scaled(cached_expand(b), -one())).is_zero();
      LTreePtr a2 = lnode(lleaf(Label::Ptilde), sv, c);
      LTreePtr b2 = lnode(lleaf(Label::P), sv, bar(c));
      ok = ok && (cached_expand(a2) + scaled(cached_expand(b2), -one())).is_zero();
    }
    certs_.push_back({"parity transport across a star arm is exact", ok, "oracle-derived",
                      "coefficient-1 identities"});
  }

  // the F-matrix algebra
  {
    const FMatrix& M = f_matrix();
    const auto& cn = constants();
    Scalar k = (cn.Delta + one()) / (cn.Delta * cn.Delta);
    Scalar zero;
    bool ok = (M.ss * M.ss + M.sp * M.ps == k) && (M.ss * M.sp + M.sp * M.pp == zero) &&
              (M.ps * M.ss + M.pp * M.ps == zero) && (M.ps * M.sp + M.pp * M.pp == k);
    certs_.push_back({"F-matrix squares to ((Delta+1)/Delta^2) I", ok, "postulated",
                      "channel basis order (*, P); entries a, g, g, h"});
  }

  // Rebracketing with three live cables is NOT a generic diagram identity:
  // the cable pair admits a 4-strand channel outside the label set.  What
  // the oracle does certify is that the right-nested tree's trace-orthogonal
  // projection onto the left-comb span has residual vanishing exactly at the
  // Fibonacci value A = exp(3*pi*i/5), i.e. the rewrite is valid in the
  // Fibonacci quotient.
  {
    auto tr = [](const DiagramSum& x, const DiagramSum& y) {
      return close(compose(x, mirror(y)));
    };
    for (Label g : {Label::Star, Label::P}) {
      DiagramSum target = cached_expand(
          lnode(lleaf(Label::P), lnode(lleaf(Label::P), lleaf(Label::P), g), Label::P));
      std::vector<DiagramSum> bas = {
          cached_expand(lnode(lnode(lleaf(Label::P), lleaf(Label::P), Label::Star),
                              lleaf(Label::P), Label::P)),
          cached_expand(lnode(lnode(lleaf(Label::P), lleaf(Label::P), Label::P),
                              lleaf(Label::P), Label::P))};
      // 2x2 exact gram solve for the orthogonal projection
      Scalar g00 = tr(bas[0], bas[0]), g01 = tr(bas[0], bas[1]), g11 = tr(bas[1], bas[1]);
      Scalar b0 = tr(target, bas[0]), b1 = tr(target, bas[1]);
      Scalar det = g00 * g11 - g01 * g01;
      Scalar x0 = (b0 * g11 - b1 * g01) / det;
      Scalar x1 = (b1 * g00 - b0 * g01) / det;
      DiagramSum resid = target + scaled(bas[0], -x0) + scaled(bas[1], -x1);
      Scalar self = tr(resid, resid);
      double at_fib = std::abs(eval_numeric(self, fibonacci_A()));
      bool ok = at_fib < 1e-10 && !self.is_zero();
      std::ostringstream det2;
      det2 << "generic diagram equality fails (omitted 4-strand channel); projection "
              "residual self-trace vanishes at the Fibonacci value (|.| = "
           << at_fib << "); oracle projection entries: * -> " << x0.str() << ", P -> "
           << x1.str();
      certs_.push_back({"F move (middle channel " + label_str(g) +
                            ") valid in the Fibonacci quotient",
                        ok, "oracle-derived", det2.str()});
    }
  }

  // the decorated middle channel: the four-term rule with the stated
  // coefficients; the output shape/labels are certified, the generic diagram
  // equality provably fails (the decorated tree's expansion contains
  // matchings outside the support of every left-comb tree)
  {
    LTreePtr frag =
        lnode(lleaf(Label::P), lnode(lleaf(Label::P), lleaf(Label::P), Label::Ptilde), Label::P);
    TreeVector rhs = lemma1_rule(frag);
    std::ostringstream det;
    for (const auto& [t, c] : rhs.terms) det << "(" << c.str() << ")*" << ltree_str(t) << "  ";
    certs_.push_back({"decorated middle channel: four-term rule (c1..c4)",
                      rhs.terms.size() == 4, "postulated", det.str()});
  }

  // star-arm rebracketing (only 4 live strands) is solved exactly
  {
    bool ok = true;
    std::vector<std::array<Label, 5>> cases = {
        {Label::Star, Label::P, Label::P, Label::P, Label::P},
        {Label::P, Label::Star, Label::P, Label::P, Label::P},
        {Label::P, Label::P, Label::Star, Label::P, Label::P},
        {Label::Star, Label::Ptilde, Label::Ptilde, Label::P, Label::P},
        {Label::P, Label::Star, Label::Ptilde, Label::Ptilde, Label::P},
        {Label::P, Label::Ptilde, Label::Star, Label::Ptilde, Label::P},
    };
    for (const auto& cs : cases) {
      auto [lu, lv, lw, g, c] = std::tuple{cs[0], cs[1], cs[2], cs[3], cs[4]};
      if (!fusion_allowed(lv, lw, g, FusionMode::virt) ||
          !fusion_allowed(lu, g, c, FusionMode::virt))
        continue;
      const LocalRule& rule = forward_rule(lu, lv, lw, g, c);
      DiagramSum lhs = cached_expand(lnode(lleaf(lu), lnode(lleaf(lv), lleaf(lw), g), c));
      DiagramSum re;
      for (const auto& tm : rule)
        re = re + scaled(cached_expand(lnode(lnode(lleaf(tm.x), lleaf(tm.y), tm.f),
                                             lleaf(tm.z), c)),
                         tm.coeff);
      ok = ok && (lhs + scaled(re, -one())).is_zero();
    }
    certs_.push_back({"star-arm rebracketing solved exactly", ok, "oracle-derived",
                      "coefficient-level recomposition equals the expansion"});
  }

  // closed-pattern scalars
  {
    bool ok = true;
    Scalar tb;
    try {
      tb = turnback_value();
    } catch (const PatternMismatch&) {
      ok = false;
    }
    certs_.push_back({"turnback on a projected cable vanishes", ok, "postulated", "value 0"});
    const auto& cn = constants();
    Scalar b = bubble_value(false);
    bool okb = (b == cn.Theta * cn.Delta.inverse());
    certs_.push_back({"classical bubble coefficient Theta/Delta", okb, "postulated", b.str()});
    Scalar bd = bubble_value(true);
    certs_.push_back({"decorated bubble coefficient", true, "oracle-derived", bd.str()});
  }
}

FragmentImage Recoupler::sigma_row(const Fragment& f, int sign) const {
  if (f.x == Label::Star || f.y == Label::Star)
    throw PatternMismatch("no cabled crossing over a star arm");
  Fragment key = f;
  // A star output absorbs a simultaneous flip of both arms exactly, so the
  // table rows extend equivariantly to the flipped fragments.
  const bool flipped = (key.c == Label::Star && key.x == Label::Ptilde);
  if (flipped) key = Fragment{bar(key.x), bar(key.y), key.c};
  auto it = sigma_.find({key, sign >= 0 ? +1 : -1});
  if (it == sigma_.end()) throw PatternMismatch("no crossing row for " + fragment_str(f));
  if (!flipped) return it->second;
  FragmentImage out;
  for (const auto& [f2, coeff] : it->second)
    out.push_back({Fragment{bar(f2.x), bar(f2.y), f2.c}, coeff});
  return out;
}

FragmentImage Recoupler::v_row(const Fragment& f) const {
  if (f.x == Label::Star || f.y == Label::Star)
    throw PatternMismatch("no cabled crossing over a star arm");
  Fragment key = f;
  const bool flipped = (key.c == Label::Star && key.x == Label::Ptilde);
  if (flipped) key = Fragment{bar(key.x), bar(key.y), key.c};
  auto it = v_.find(key);
  if (it == v_.end()) throw PatternMismatch("no virtual row for " + fragment_str(f));
  if (!flipped) return it->second;
  FragmentImage out;
  for (const auto& [f2, coeff] : it->second)
    out.push_back({Fragment{bar(f2.x), bar(f2.y), f2.c}, coeff});
  return out;
}

LTreePtr Recoupler::canonicalize(const LTreePtr& t) const {
  if (t->is_leaf()) return t;
  LTreePtr L = canonicalize(t->left);
  LTreePtr R = canonicalize(t->right);
  Label out = t->lab;
  if (L->lab == Label::Star && R->lab == Label::Ptilde) {
    R = relabel_root(R, Label::P);
    out = bar(out);
  } else if (R->lab == Label::Star && L->lab == Label::Ptilde) {
    L = relabel_root(L, Label::P);
    out = bar(out);
  }
  if (out == Label::Star && L->lab == Label::Ptilde) {
    L = relabel_root(L, Label::P);
    R = relabel_root(R, bar(R->lab));
  }
  return lnode(L, R, out);
}

TreeVector Recoupler::canonicalize(const TreeVector& tv) const {
  TreeVector out;
  for (const auto& [t, c] : tv.terms) out.add_term(canonicalize(t), c);
  return out;
}

namespace {

TreeVector letter_on_tree(const Recoupler& R, const LTreePtr& t, const BraidLetter& g);

TreeVector apply_letter_impl(const Recoupler& R, const TreeVector& tv, const BraidLetter& g) {
  TreeVector out;
  for (const auto& [t, c] : tv.terms) out = out + scaled(letter_on_tree(R, t, g), c);
  return out;
}

TreeVector letter_on_tree(const Recoupler& R, const LTreePtr& t, const BraidLetter& g) {
  Comb s = to_comb(t);
  const int n = (int)s.leaves.size();
  if (g.index < 1 || g.index >= n)
    throw IndexOutOfRange("letter index " + std::to_string(g.index) + " out of range for " +
                          std::to_string(n) + " leaves");
  const int k = g.index;
  if (g.gen == Gen::v) {
    // Uniform virtual rule on labeling states: swap-flip the strand pair and
    // bar the bottom spine channel.  At position 1 this is the oracle-exact
    // table row; keeping the *same* displacement slot at every position makes
    // v_k an involution and gives the symmetric-group and distant-commutation
    // relations identically on the labeling space.
    Comb s2 = s;
    std::swap(s2.leaves[k - 1], s2.leaves[k]);
    s2.leaves[k - 1] = bar(s2.leaves[k - 1]);
    s2.leaves[k] = bar(s2.leaves[k]);
    s2.chans[0] = bar(s2.chans[0]);
    return tv_of(from_comb(s2));
  }
  if (k == 1) {
    Fragment f{s.leaves[0], s.leaves[1], s.chans[0]};
    const FragmentImage row = R.sigma_row(f, g.power);
    TreeVector out;
    for (const auto& [f2, coeff] : row) {
      Comb s2 = s;
      s2.leaves[0] = f2.x;
      s2.leaves[1] = f2.y;
      s2.chans[0] = f2.c;
      out.add_term(from_comb(s2), coeff);
    }
    return out;
  }
  // classical letter above position 1: route down via the virtual detour
  const BraidLetter a{Gen::v, k - 1, 1}, b{Gen::v, k, 1}, m{Gen::sigma, k - 1, g.power};
  TreeVector cur = tv_of(from_comb(s));
  for (const BraidLetter& step : {a, b, m, b, a}) cur = apply_letter_impl(R, cur, step);
  return cur;
}

}  // namespace

TreeVector Recoupler::apply_letter(const TreeVector& tv, const BraidLetter& g) const {
  return apply_letter_impl(*this, tv, g);
}

std::vector<LTreePtr> Recoupler::comb_basis(int leaves, Label root) const {
  std::vector<LTreePtr> out;
  const bool star = (root == Label::Star);
  if (leaves < 1) return out;
  if (leaves == 1) {
    if (!star) {
      out.push_back(lleaf(Label::P));
      out.push_back(lleaf(Label::Ptilde));
    }
    return out;
  }
  Comb s;
  s.leaves.assign(leaves, Label::P);
  s.chans.assign(leaves - 1, Label::P);
  std::function<void(int)> chan_rec = [&](int j) {
    if (j == leaves - 1) {
      Label r = s.chans.back();
      if ((r == Label::Star) != star) return;
      out.push_back(from_comb(s));
      return;
    }
    Label first = (j == 0) ? s.leaves[0] : s.chans[j - 1];
    for (Label c : {Label::P, Label::Star, Label::Ptilde}) {
      if (!fusion_allowed(first, s.leaves[j + 1], c, FusionMode::virt)) continue;
      s.chans[j] = c;
      chan_rec(j + 1);
    }
  };
  std::function<void(int)> leaf_rec = [&](int i) {
    if (i == leaves) {
      chan_rec(0);
      return;
    }
    for (Label l : {Label::P, Label::Ptilde}) {
      s.leaves[i] = l;
      leaf_rec(i + 1);
    }
  };
  leaf_rec(0);
  return out;
}

TreeVector left_associate(const VirtualBraidedTree& vbt) {
  const int n = vbt.shape->leaf_count();
  if (vbt.word.strand_count != n)
    throw IndexOutOfRange("braid strand count does not match the leaf count");
  for (const auto& g : vbt.word.letters)
    if (g.index < 1 || g.index >= n)
      throw IndexOutOfRange("letter index " + std::to_string(g.index) +
                            " out of range for " + std::to_string(n) + " strands");
  const auto& R = Recoupler::instance();
  auto labelings = enumerate_labelings(vbt.shape, FusionMode::classical, Label::P);
  TreeVector acc;
  for (const auto& t0 : labelings) {
    TreeVector cur = tv_of(t0);
    while (!cur.terms.empty()) {
      std::string pos;
      if (!find_right_nest(cur.terms.begin()->first, "", &pos)) break;
      cur = f_move(cur, pos, FDirection::forward);
    }
    acc = acc + cur;
  }
  for (auto it = vbt.word.letters.rbegin(); it != vbt.word.letters.rend(); ++it)
    acc = R.apply_letter(acc, *it);
  return acc;
}

std::vector<RuleCertificate> certify_rules() { return Recoupler::instance().certificates(); }

}  // namespace vbt
