#include "vbt/report.hpp"

#include <random>
#include <sstream>

namespace vbt {

namespace {

Json poly_json(const LaurentPoly& p) {
  Json arr = Json::array();
  for (const auto& [e, c] : p.terms()) arr.push_back({c.str(), e});
  return arr;
}

LaurentPoly poly_from_json(const Json& j) {
  LaurentPoly p;
  for (const auto& t : j) {
    BigInt c(t.at(0).get<std::string>());
    long e = t.at(1).get<long>();
    p = p + LaurentPoly::monomial(c, e);
  }
  return p;
}

Json rational_json(const RationalFn& r) {
  return Json{{"num", poly_json(r.num())}, {"den", poly_json(r.den())}};
}

RationalFn rational_from_json(const Json& j) {
  return RationalFn(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

BraidWord random_word(std::mt19937_64& rng, int n, int len) {
  BraidWord w;
  w.strand_count = n;
  std::uniform_int_distribution<int> kind(0, 2), idx(1, n - 1);
  for (int i = 0; i < len; ++i) {
    int k = kind(rng);
    if (k == 2)
      w.letters.push_back({Gen::v, idx(rng), 1});
    else
      w.letters.push_back({Gen::sigma, idx(rng), k == 0 ? 1 : -1});
  }
  return w;
}

ShapePtr random_shape(std::mt19937_64& rng, int leaves) {
  if (leaves == 1) return leaf_shape();
  std::uniform_int_distribution<int> split(1, leaves - 1);
  int l = split(rng);
  return node_shape(random_shape(rng, l), random_shape(rng, leaves - l));
}

bool is_left_comb_tree(const LTreePtr& t) {
  const LabeledTree* cur = t.get();
  while (!cur->is_leaf()) {
    if (!cur->right->is_leaf()) return false;
    cur = cur->left.get();
  }
  return true;
}

}  // namespace

Json scalar_json(const Scalar& s) {
  return Json{{"p", rational_json(s.p())}, {"q", rational_json(s.q())}};
}

Scalar scalar_from_json(const Json& j) {
  return Scalar(rational_from_json(j.at("p")), rational_from_json(j.at("q")));
}

Json tree_vector_json(const TreeVector& tv) {
  Json arr = Json::array();
  for (const auto& [t, c] : tv.terms)
    arr.push_back(Json{{"tree", ltree_str(t)}, {"coeff", scalar_json(c)}});
  return Json{{"terms", arr}};
}

TreeVector tree_vector_from_json(const Json& j) {
  TreeVector tv;
  for (const auto& t : j.at("terms"))
    tv.add_term(parse_ltree(t.at("tree").get<std::string>()),
                scalar_from_json(t.at("coeff")));
  return tv;
}

Json rep_matrix_json(const RepMatrix& m) {
  Json basis = Json::array();
  for (const auto& t : m.basis) basis.push_back(ltree_str(t));
  Json entries = Json::array();
  for (const auto& row : m.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(scalar_json(e));
    entries.push_back(std::move(r));
  }
  return Json{{"basis", basis}, {"entries", entries}};
}

Json certificates_json(const std::vector<RuleCertificate>& certs) {
  Json arr = Json::array();
  for (const auto& c : certs)
    arr.push_back(Json{{"name", c.name},
                       {"exact", c.exact},
                       {"provenance", c.provenance},
                       {"detail", c.detail}});
  return arr;
}

Json relations_json(const std::vector<RelationResult>& rels) {
  Json arr = Json::array();
  for (const auto& r : rels)
    arr.push_back(Json{{"relation", r.name}, {"holds", r.holds}, {"witness", r.witness}});
  return arr;
}

Json suite_report(uint64_t seed) {
  std::mt19937_64 rng(seed);
  Json rep;
  rep["seed"] = seed;

  const auto& cn = constants();
  Json cj;
  cj["d"] = scalar_json(cn.d);
  cj["Delta"] = scalar_json(cn.Delta);
  cj["Theta"] = scalar_json(cn.Theta);
  cj["T"] = scalar_json(cn.T);
  cj["a"] = scalar_json(cn.a);
  cj["b"] = scalar_json(cn.b);
  cj["g"] = scalar_json(cn.g);
  cj["h"] = scalar_json(cn.h);
  cj["c1"] = scalar_json(cn.c1);
  cj["c2"] = scalar_json(cn.c2);
  cj["c3"] = scalar_json(cn.c3);
  cj["c4"] = scalar_json(cn.c4);
  rep["constants"] = std::move(cj);

  rep["certificates"] = certificates_json(certify_rules());

  Json rels;
  for (int n : {2, 3}) rels["n=" + std::to_string(n)] = relations_json(check_relations(n));
  rep["relations"] = std::move(rels);

  Json dims = Json::array();
  for (int k = 3; k <= 12; ++k) {
    ShapePtr comb = left_comb(k);
    auto p = enumerate_labelings(comb, FusionMode::classical, Label::P, Label::P).size();
    auto s = enumerate_labelings(comb, FusionMode::classical, Label::P, Label::Star).size();
    auto e = enumerate_labelings(comb, FusionMode::classical, Label::P).size();
    dims.push_back(Json{{"leaves", k}, {"root_P", p}, {"root_star", s}, {"either", e}});
  }
  rep["dims_classical"] = std::move(dims);
  Json dimv = Json::array();
  for (int k = 3; k <= 8; ++k) {
    ShapePtr comb = left_comb(k);
    auto p = enumerate_labelings(comb, FusionMode::virt, Label::P, Label::P).size();
    auto s = enumerate_labelings(comb, FusionMode::virt, Label::P, Label::Star).size();
    auto e = enumerate_labelings(comb, FusionMode::virt, Label::P).size();
    dimv.push_back(Json{{"leaves", k}, {"root_P", p}, {"root_star", s}, {"either", e}});
  }
  rep["dims_virtual"] = std::move(dimv);

  // bracket invariance under relation insertion at a random spot
  Json binv = Json::array();
  for (int i = 0; i < 20; ++i) {
    std::uniform_int_distribution<int> nn(2, 4), ll(0, 6);
    int n = nn(rng);
    BraidWord w = random_word(rng, n, ll(rng));
    std::uniform_int_distribution<int> idx(1, n - 1);
    int k = idx(rng);
    BraidWord ins = w;
    ins.letters.push_back({Gen::sigma, k, 1});
    ins.letters.push_back({Gen::sigma, k, -1});
    bool equal = bracket_closure(w) == bracket_closure(ins);
    binv.push_back(Json{{"word", braid_str(w)}, {"inserted", "s" + std::to_string(k) +
                        " s" + std::to_string(k) + "^-1"}, {"equal", equal}});
  }
  rep["bracket_invariance"] = std::move(binv);

  // homomorphism samples
  Json hom = Json::array();
  for (int i = 0; i < 10; ++i) {
    std::uniform_int_distribution<int> nn(2, 3), ll(0, 3);
    int n = nn(rng);
    BraidWord w1 = random_word(rng, n, ll(rng));
    BraidWord w2 = random_word(rng, n, ll(rng));
    bool equal = true;
    for (Label sector : {Label::P, Label::Star}) {
      RepMatrix m12 = rep_matrix(concat(w1, w2), n, sector);
      RepMatrix m1 = rep_matrix(w1, n, sector);
      RepMatrix m2 = rep_matrix(w2, n, sector);
      equal = equal && rep_equal(m12, rep_mul(m1, m2));
    }
    hom.push_back(Json{{"w1", braid_str(w1)}, {"w2", braid_str(w2)}, {"equal", equal}});
  }
  rep["homomorphism"] = std::move(hom);

  // left association samples over random shapes
  Json la = Json::array();
  for (int i = 0; i < 20; ++i) {
    std::uniform_int_distribution<int> nn(2, 5), ll(0, 4);
    int n = nn(rng);
    VirtualBraidedTree vbt{random_word(rng, n, ll(rng)), random_shape(rng, n)};
    TreeVector out = left_associate(vbt);
    bool combs = true;
    for (const auto& [t, c] : out.terms) combs = combs && is_left_comb_tree(t);
    la.push_back(Json{{"shape", shape_str(vbt.shape)},
                      {"word", braid_str(vbt.word)},
                      {"terms", out.terms.size()},
                      {"left_combs", combs}});
  }
  rep["left_association"] = std::move(la);

  return rep;
}

}  // namespace vbt
