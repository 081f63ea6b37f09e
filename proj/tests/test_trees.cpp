#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "vbt/tree.hpp"

using namespace vbt;

TEST_CASE("shape grammar round-trips and left combs are recognized") {
  ShapePtr s = parse_shape("((L L) (L L))");
  CHECK(shape_str(s) == "((L L) (L L))");
  CHECK(s->leaf_count() == 4);
  CHECK(!s->is_left_comb());
  CHECK(left_comb(4)->is_left_comb());
  CHECK(shape_str(left_comb(3)) == "((L L) L)");
  CHECK_THROWS(parse_shape("(L"));
}

TEST_CASE("labeled tree serialization round-trips") {
  LTreePtr t = lnode(lnode(lleaf(Label::P), lleaf(Label::Ptilde), Label::Star),
                     lleaf(Label::P), Label::P);
  std::string s = ltree_str(t);
  CHECK(s == "((L:P L:~P):* L:P):P");
  CHECK(ltree_str(parse_ltree(s)) == s);
  CHECK(bar(Label::P) == Label::Ptilde);
  CHECK(bar(Label::Star) == Label::Star);
}

TEST_CASE("fusion rules: classical and virtual admissibility") {
  CHECK(fusion_allowed(Label::P, Label::P, Label::Star, FusionMode::classical));
  CHECK(fusion_allowed(Label::P, Label::P, Label::P, FusionMode::classical));
  CHECK(!fusion_allowed(Label::P, Label::P, Label::Ptilde, FusionMode::classical));
  CHECK(!fusion_allowed(Label::Star, Label::Star, Label::P, FusionMode::classical));
  CHECK(fusion_allowed(Label::P, Label::P, Label::Ptilde, FusionMode::virt));
  CHECK(fusion_allowed(Label::P, Label::Star, Label::Ptilde, FusionMode::virt));
  CHECK(!fusion_allowed(Label::P, Label::Star, Label::Star, FusionMode::virt));
  // the two cable inputs are symmetric
  for (Label a : {Label::P, Label::Ptilde, Label::Star})
    for (Label b : {Label::P, Label::Ptilde, Label::Star})
      for (Label c : {Label::P, Label::Ptilde, Label::Star})
        CHECK(fusion_allowed(a, b, c, FusionMode::virt) ==
              fusion_allowed(b, a, c, FusionMode::virt));
}

TEST_CASE("classical left-comb labeling counts follow the Fibonacci recurrence") {
  std::vector<size_t> either;
  for (int k = 2; k <= 12; ++k)
    either.push_back(enumerate_labelings(left_comb(k), FusionMode::classical, Label::P).size());
  CHECK(either.front() == 2);
  CHECK(either[1] == 3);
  for (size_t i = 2; i < either.size(); ++i) CHECK(either[i] == either[i - 1] + either[i - 2]);
  CHECK(either.back() == 233);  // 12 leaves
  CHECK(enumerate_labelings(left_comb(5), FusionMode::classical, Label::P, Label::P).size() == 5);
  CHECK(enumerate_labelings(left_comb(5), FusionMode::classical, Label::P, Label::Star).size() == 3);
}

TEST_CASE("virtual left-comb labeling counts: pinned regression values") {
  struct Row { int leaves; size_t p, star, either; };
  const Row rows[] = {
      {2, 1, 1, 3},     {3, 3, 2, 8},      {4, 8, 6, 22},
      {5, 22, 16, 60},  {6, 60, 44, 164},  {7, 164, 120, 448},
      {8, 448, 328, 1224},
  };
  for (const Row& r : rows) {
    ShapePtr comb = left_comb(r.leaves);
    CHECK(enumerate_labelings(comb, FusionMode::virt, Label::P, Label::P).size() == r.p);
    CHECK(enumerate_labelings(comb, FusionMode::virt, Label::P, Label::Star).size() == r.star);
    CHECK(enumerate_labelings(comb, FusionMode::virt, Label::P).size() == r.either);
  }
}

TEST_CASE("enumeration order is deterministic and admissible") {
  auto states = enumerate_labelings(left_comb(3), FusionMode::virt, Label::P, Label::P);
  auto again = enumerate_labelings(left_comb(3), FusionMode::virt, Label::P, Label::P);
  REQUIRE(states.size() == again.size());
  std::set<std::string> seen;
  for (size_t i = 0; i < states.size(); ++i) {
    CHECK(ltree_str(states[i]) == ltree_str(again[i]));
    CHECK(seen.insert(ltree_str(states[i])).second);  // no duplicates
    CHECK(tree_admissible(states[i], FusionMode::virt));
  }
}

TEST_CASE("expansion into the diagram oracle") {
  // the 2-leaf classical vertex (P P -> P) expands to a projected pair of cables
  LTreePtr pp = lnode(lleaf(Label::P), lleaf(Label::P), Label::P);
  DiagramSum e = expand_to_diagram(pp);
  CHECK(!e.is_zero());
  for (const auto& [d, c] : e.terms) {
    CHECK(d.nt == 4);  // two 2-strand cables on top
    CHECK(d.nb == 2);  // one cable at the root
  }
  // a star root has no bottom strands
  LTreePtr ps = lnode(lleaf(Label::P), lleaf(Label::P), Label::Star);
  for (const auto& [d, c] : expand_to_diagram(ps).terms) CHECK(d.nb == 0);
}

TEST_CASE("inner products reproduce loop evaluations") {
  LTreePtr pp = lnode(lleaf(Label::P), lleaf(Label::P), Label::P);
  const auto& cn = constants();
  // <t, t> for the (P P -> P) vertex: bubble times the projected-cable loop
  Scalar theta_over_delta = cn.Theta / cn.Delta;
  CHECK(tree_inner(pp, pp) == theta_over_delta * cn.Delta);
  // gram matrix of the classical 3-leaf root-P basis is symmetric
  auto basis = enumerate_labelings(left_comb(3), FusionMode::classical, Label::P, Label::P);
  auto gm = gram_matrix(basis);
  REQUIRE(gm.size() == basis.size());
  for (size_t i = 0; i < gm.size(); ++i)
    for (size_t j = 0; j < gm.size(); ++j) CHECK(gm[i][j] == gm[j][i]);
}

TEST_CASE("inadmissible labelings are rejected") {
  LTreePtr bad = lnode(lleaf(Label::P), lleaf(Label::P), Label::Ptilde);
  CHECK(!tree_admissible(bad, FusionMode::classical));
  CHECK(tree_admissible(bad, FusionMode::virt));
}
