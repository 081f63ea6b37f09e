#pragma once
// Matrix representation of virtual braid groups on the decorated left-comb
// basis, and the relation checker.

#include <string>
#include <vector>

#include "vbt/recoupling.hpp"

namespace vbt {

struct SingularBasis : std::runtime_error {
  explicit SingularBasis(const std::string& what) : std::runtime_error(what) {}
};
struct BasisDeficiency : std::runtime_error {
  explicit BasisDeficiency(const std::string& what) : std::runtime_error(what) {}
};

struct RepMatrix {
  std::vector<LTreePtr> basis;
  // entries[i][j]: coefficient of basis[i] in the image of basis[j]
  std::vector<std::vector<Scalar>> entries;
};

RepMatrix rep_identity(const std::vector<LTreePtr>& basis);
RepMatrix rep_mul(const RepMatrix& a, const RepMatrix& b);
bool rep_equal(const RepMatrix& a, const RepMatrix& b);

// Matrix of the word acting above the left comb on the root sector of the
// given label (the classical sector {P, P~} is one class; * is its own).
// The basis is the canonical decorated left-comb labeling set; it is checked
// once per (leaf count, sector) for linear independence of its diagram
// expansions and BasisDeficiency is thrown if the check fails.
RepMatrix rep_matrix(const BraidWord& w, int leaves, Label root);

struct RelationResult {
  std::string name;
  bool holds = false;
  std::string witness;  // empty when the relation holds
};

// checks every defining relation of the virtual braid group on n strands
// (sigma braid relations, v involutions, v braid relations, mixed relations,
// distant commutations, inverses) in both root sectors
std::vector<RelationResult> check_relations(int strands);

}  // namespace vbt
