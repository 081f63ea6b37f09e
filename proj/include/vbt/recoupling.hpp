#pragma once
// The recoupling calculus: certified local rewrite rules for crossings over
// decorated trivalent vertices, the F transformation, and the left
// association of virtual braided trees.
//
// Every non-monomial rule coefficient is solved at startup from the diagram
// expansion of the corresponding cabled operator against the span of vertex
// fragments; the solved rules carry certificates reachable via certify_rules().

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vbt/braid.hpp"
#include "vbt/tree.hpp"

namespace vbt {

struct BadPosition : std::runtime_error {
  explicit BadPosition(const std::string& what) : std::runtime_error(what) {}
};
struct PatternMismatch : std::runtime_error {
  explicit PatternMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct NotClassicalCrossing : std::runtime_error {
  explicit NotClassicalCrossing(const std::string& what) : std::runtime_error(what) {}
};
struct NotVirtualCrossing : std::runtime_error {
  explicit NotVirtualCrossing(const std::string& what) : std::runtime_error(what) {}
};

// a decorated vertex fragment (x, y -> c)
struct Fragment {
  Label x = Label::P, y = Label::P, c = Label::P;
  auto operator<=>(const Fragment&) const = default;
};
std::string fragment_str(const Fragment& f);

// image of an operator applied over a single fragment, in the fragment span
using FragmentImage = std::vector<std::pair<Fragment, Scalar>>;

// every solved rule records whether its defining linear system was solved
// exactly and re-verified against the diagram expansion
struct RuleCertificate {
  std::string name;
  bool exact = false;
  std::string provenance;  // "postulated" or "oracle-derived"
  std::string detail;
};

// ---- F transformation ---------------------------------------------
// channel basis order (*, P)
struct FMatrix {
  Scalar ss, sp, ps, pp;  // rows: old channel, columns: new channel
};
// the change-of-bracketing matrix (the certified right-to-left direction)
const FMatrix& f_matrix();
// exact inverse: (Delta^2/(Delta+1)) * F
const FMatrix& f_matrix_inverse();

// ---- positions inside labeled trees ---------------------------------------
// a position is a path of 'l'/'r' steps from the root to the target node
LTreePtr subtree_at(const LTreePtr& t, const std::string& position);

enum class FDirection { forward, backward };

// Rebracketing at `position`.  Forward expects node(u, node(v,w,g), c) and
// produces sums over node(node(u,v,f), w, c); this is the certified-exact
// direction and covers decorated (P~) middle channels.  Backward applies the
// F-matrix on the classical channel pair in the opposite direction.
TreeVector f_move(const TreeVector& tv, const std::string& position, FDirection dir);

// classical crossing directly above a vertex with undecorated arms:
// multiplies each matching term by the twist eigenvalue of the output label
TreeVector r_move(const TreeVector& tv, const std::string& position, int sign);

// virtual crossing directly above a vertex: swaps the two branches and bars
// the three incident edge labels, coefficient one (exact involution)
TreeVector swap_move(const TreeVector& tv, const std::string& position);

// certified scalar facts for the closed patterns
Scalar turnback_value();              // projected cable turning back: 0
Scalar bubble_value(bool decorated);  // classical Theta/Delta; decorated variant
// Labeled trees contain no explicit bubble/turnback subterms (expansion
// absorbs them); these validate the position and report the non-match.
TreeVector bubble_reduce(const TreeVector& tv, const std::string& position);
TreeVector turnback_reduce(const TreeVector& tv, const std::string& position);

// decorated middle-channel reduction: fragment node(x, node(y,z,P~), c)
// rewritten as the four-term left-comb combination
TreeVector lemma1_rule(const LTreePtr& fragment);
// double classical twist over a 2-leaf fragment, fully reduced
TreeVector lemma2_rule(const LTreePtr& fragment);
// classical crossing over a 2-leaf fragment with a decorated arm
TreeVector lemma3_rule(const LTreePtr& fragment, int sign);

// ---- the rewrite engine ----------------------------------------------------
class Recoupler {
 public:
  static const Recoupler& instance();

  // solved crossing tables over the canonical fragments
  FragmentImage sigma_row(const Fragment& f, int sign) const;
  FragmentImage v_row(const Fragment& f) const;

  const std::vector<RuleCertificate>& certificates() const { return certs_; }

  // apply one braid letter above the named strand pair of left-comb states
  TreeVector apply_letter(const TreeVector& tv, const BraidLetter& g) const;

  // Canonical representative of a decorated labeling.  Two normalizations,
  // both exact coefficient-1 diagram identities: a star-output vertex carries
  // an undecorated first arm, and the arm opposite a star arm is undecorated
  // (decoration parity moves into the output edge).
  LTreePtr canonicalize(const LTreePtr& t) const;
  TreeVector canonicalize(const TreeVector& tv) const;

  // canonical decorated left-comb labelings whose root lies in the class of
  // `root` (classical class {P, P~} merged; star class separate)
  std::vector<LTreePtr> comb_basis(int leaves, Label root) const;

 private:
  Recoupler();
  std::map<std::pair<Fragment, int>, FragmentImage> sigma_;
  std::map<Fragment, FragmentImage> v_;
  std::vector<RuleCertificate> certs_;
};

// a braid word together with the tree shape it acts above; leaves all P
struct VirtualBraidedTree {
  BraidWord word;
  ShapePtr shape;
};

// Full left association: sum over the classical admissible labelings of the
// shape, rebracket to the left comb along the rightmost-spine schedule via
// the certified forward F direction, then apply the braid letters with the
// last letter acting first (innermost).
TreeVector left_associate(const VirtualBraidedTree& vbt);

// certificate report for all startup-solved rules
std::vector<RuleCertificate> certify_rules();

}  // namespace vbt
