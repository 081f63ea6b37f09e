// Command-line front end: left association, bracket evaluation, relation
// checking, rule certification, dimension enumeration, numeric specialization.
#include <CLI11.hpp>
#include <complex>
#include <iostream>
#include <string>

#include "vbt/report.hpp"

namespace {

using vbt::Json;

int emit_domain_error(const std::string& kind, const std::string& message, bool json) {
  if (json) {
    Json err{{"error", Json{{"kind", kind}, {"message", message}}}};
    std::cout << err.dump(2) << "\n";
  } else {
    std::cerr << "error (" << kind << "): " << message << "\n";
  }
  return 1;
}

std::string scalar_text(const vbt::Scalar& s) { return s.str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for the virtual-braided-tree recoupling calculus"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false, text = false;
  app.add_flag("--json", json, "machine-readable JSON output (canonical)");
  app.add_flag("--text", text, "human-oriented text output");
  uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized suites (default 0)");

  std::string braid_text, shape_text;
  std::vector<double> at;

  auto* leftassoc = app.add_subcommand("leftassoc", "rewrite a virtual braided tree "
                                       "into left-comb form");
  leftassoc->add_option("--braid", braid_text, "braid word, e.g. \"n=2; v1\"")->required();
  leftassoc->add_option("--shape", shape_text, "tree shape, e.g. \"(L L)\"")->required();

  auto* bracket = app.add_subcommand("bracket", "unnormalized bracket of the braid closure");
  bracket->add_option("--braid", braid_text, "braid word")->required();
  bracket->add_option("--at", at, "evaluate numerically at A = re + i*im")->expected(2);

  int strands = 3;
  auto* relations = app.add_subcommand("check-relations", "verify the virtual braid "
                                       "group relations on the representation");
  relations->add_option("--strands", strands, "strand count (2..5)")->required();

  app.add_subcommand("certify-rules", "report the oracle certificate of every rule");

  int leaves = 5;
  std::string mode = "classical";
  auto* dim = app.add_subcommand("dim", "count admissible left-comb labelings");
  dim->add_option("--leaves", leaves, "leaf count")->required();
  dim->add_option("--mode", mode, "classical|virtual")->check(
      CLI::IsMember({"classical", "virtual"}));

  std::string const_name;
  auto* eval = app.add_subcommand("eval", "print a named constant, exactly or numerically");
  eval->add_option("--name", const_name, "d|Delta|Theta|T|a|b|g|h|c1|c2|c3|c4")->required();
  eval->add_option("--at", at, "evaluate numerically at A = re + i*im")->expected(2);

  auto* report = app.add_subcommand("report", "full deterministic suite report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!text) json = true;  // JSON is the default canonical format

  try {
    if (leftassoc->parsed()) {
      vbt::BraidWord w = vbt::parse_braid(braid_text);
      vbt::ShapePtr shape = vbt::parse_shape(shape_text);
      vbt::TreeVector out = vbt::left_associate({w, shape});
      if (json) {
        Json j = vbt::tree_vector_json(out);
        j["braid"] = vbt::braid_str(w);
        j["shape"] = vbt::shape_str(shape);
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& [t, c] : out.terms)
          std::cout << "(" << c.str() << ") * " << vbt::ltree_str(t) << "\n";
        if (out.terms.empty()) std::cout << "0\n";
      }
    } else if (bracket->parsed()) {
      vbt::BraidWord w = vbt::parse_braid(braid_text);
      vbt::Scalar b = vbt::bracket_closure(w);
      Json j{{"bracket", vbt::scalar_json(b)},
             {"writhe", vbt::writhe(w)},
             {"strands", w.strand_count},
             {"normalization", "unnormalized bracket of the closure; divide by d per "
                               "component as desired"}};
      if (!at.empty()) {
        std::complex<double> v = vbt::eval_numeric(b, {at[0], at[1]});
        j["value"] = Json{{"re", v.real()}, {"im", v.imag()}};
      }
      if (json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "bracket = " << scalar_text(b) << "\n";
        std::cout << "writhe = " << vbt::writhe(w) << ", strands = " << w.strand_count
                  << " (unnormalized)\n";
        if (!at.empty())
          std::cout << "value at A = (" << at[0] << ", " << at[1]
                    << "): " << j["value"]["re"].get<double>() << " + "
                    << j["value"]["im"].get<double>() << "i\n";
      }
    } else if (relations->parsed()) {
      auto rels = vbt::check_relations(strands);
      if (json) {
        Json j{{"strands", strands}, {"relations", vbt::relations_json(rels)}};
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& r : rels)
          std::cout << (r.holds ? "pass  " : "FAIL  ") << r.name
                    << (r.witness.empty() ? "" : "  [" + r.witness + "]") << "\n";
      }
      // relation failures are report content, not process failures
    } else if (app.get_subcommand("certify-rules")->parsed()) {
      auto certs = vbt::certify_rules();
      if (json) {
        std::cout << Json{{"certificates", vbt::certificates_json(certs)}}.dump(2) << "\n";
      } else {
        for (const auto& c : certs)
          std::cout << (c.exact ? "exact " : "UNPROVEN ") << "[" << c.provenance << "] "
                    << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
      }
    } else if (dim->parsed()) {
      if (leaves < 1) return emit_domain_error("IndexOutOfRange", "leaves must be >= 1", json);
      vbt::FusionMode m =
          mode == "classical" ? vbt::FusionMode::classical : vbt::FusionMode::virt;
      vbt::ShapePtr comb = vbt::left_comb(leaves);
      auto p = vbt::enumerate_labelings(comb, m, vbt::Label::P, vbt::Label::P).size();
      auto s = vbt::enumerate_labelings(comb, m, vbt::Label::P, vbt::Label::Star).size();
      auto e = vbt::enumerate_labelings(comb, m, vbt::Label::P).size();
      if (json) {
        Json j{{"leaves", leaves}, {"mode", mode}, {"root_P", p}, {"root_star", s},
               {"either", e}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "leaves=" << leaves << " mode=" << mode << ": root P " << p
                  << ", root * " << s << ", either " << e << "\n";
      }
    } else if (eval->parsed()) {
      const auto& cn = vbt::constants();
      std::map<std::string, vbt::Scalar> table{
          {"d", cn.d}, {"Delta", cn.Delta}, {"Theta", cn.Theta}, {"T", cn.T},
          {"a", cn.a}, {"b", cn.b},         {"g", cn.g},         {"h", cn.h},
          {"c1", cn.c1}, {"c2", cn.c2},     {"c3", cn.c3},       {"c4", cn.c4}};
      auto it = table.find(const_name);
      if (it == table.end())
        return emit_domain_error("UnknownName", "no constant named " + const_name, json);
      Json j{{"name", const_name}, {"value", vbt::scalar_json(it->second)}};
      if (!at.empty()) {
        std::complex<double> v = vbt::eval_numeric(it->second, {at[0], at[1]});
        j["value_at"] = Json{{"re", v.real()}, {"im", v.imag()}};
      }
      if (json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << const_name << " = " << scalar_text(it->second) << "\n";
        if (!at.empty())
          std::cout << "  at A = (" << at[0] << ", " << at[1]
                    << "): " << j["value_at"]["re"].get<double>() << " + "
                    << j["value_at"]["im"].get<double>() << "i\n";
      }
    } else if (report->parsed()) {
      std::cout << vbt::suite_report(seed).dump(2) << "\n";
    }
  } catch (const vbt::BraidSyntaxError& e) {
    return emit_domain_error("SyntaxError", e.what(), json);
  } catch (const vbt::IndexOutOfRange& e) {
    return emit_domain_error("IndexOutOfRange", e.what(), json);
  } catch (const vbt::BadPosition& e) {
    return emit_domain_error("BadPosition", e.what(), json);
  } catch (const vbt::PatternMismatch& e) {
    return emit_domain_error("PatternMismatch", e.what(), json);
  } catch (const vbt::SingularBasis& e) {
    return emit_domain_error("SingularBasis", e.what(), json);
  } catch (const vbt::BasisDeficiency& e) {
    return emit_domain_error("BasisDeficiency", e.what(), json);
  } catch (const std::exception& e) {
    return emit_domain_error("Error", e.what(), json);
  }
  return 0;
}
