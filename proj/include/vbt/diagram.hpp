#pragma once
// Matching-diagram algebra over Scalar: Temperley-Lieb diagrams extended by
// virtual transpositions, i.e. arbitrary (possibly non-planar) perfect
// matchings on boundary points.  Every closed loop formed under composition
// or closure contributes a factor d = -A^2 - A^{-2}.

#include <map>
#include <string>
#include <vector>

#include "vbt/scalar.hpp"

namespace vbt {

struct BoundaryMismatch : std::runtime_error {
  BoundaryMismatch() : std::runtime_error("diagram boundary counts do not match") {}
};

// A perfect matching on bottom points 0..nb-1 and top points nb..nb+nt-1.
struct Diagram {
  int nb = 0, nt = 0;
  std::vector<int> pr;  // pr[i] = partner of point i; fixed-point-free involution

  Diagram() = default;
  Diagram(int nb_, int nt_, const std::vector<std::pair<int, int>>& pairs);

  bool operator==(const Diagram& o) const { return nb == o.nb && nt == o.nt && pr == o.pr; }
  bool operator<(const Diagram& o) const {
    if (nb != o.nb) return nb < o.nb;
    if (nt != o.nt) return nt < o.nt;
    return pr < o.pr;
  }
  // text form: "nb/nt: i-j, k-l, ..." with pairs sorted lexicographically
  std::string str() const;
};

struct DiagramSum {
  std::map<Diagram, Scalar> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const DiagramSum& o) const { return terms == o.terms; }
  DiagramSum& add_term(const Diagram& d, const Scalar& c);
};

DiagramSum dsum_of(const Diagram& d, const Scalar& c = Scalar::from_int(1));
DiagramSum operator+(const DiagramSum& x, const DiagramSum& y);
DiagramSum scaled(const DiagramSum& x, const Scalar& c);

// Stacks `upper` on top of `lower` (lower.nt must equal upper.nb), traces the
// shared boundary, and multiplies by d per closed loop.  Bilinear.
DiagramSum compose(const DiagramSum& lower, const DiagramSum& upper);
// Places diagrams side by side.  Bilinear.
DiagramSum tensor(const DiagramSum& left, const DiagramSum& right);
// Markov closure: joins top i to bottom i, returns sum of coeff * d^loops.
Scalar close(const DiagramSum& x);
// Top-bottom reflection.
DiagramSum mirror(const DiagramSum& x);

// The loop value d = -A^2 - A^{-2}.
const Scalar& loop_value();

DiagramSum identity(int n);
DiagramSum cupcap();                 // bottom pair + top pair on 2 strands
Diagram virtual_transposition();     // 2-strand crossing matching
enum class CrossSign { positive, negative };
// positive -> A*id + A^{-1}*cupcap ; negative -> mirror convention
DiagramSum smooth_crossing(CrossSign sign);
// Jones-Wenzl 2-strand projector P2 = id - (1/d) cupcap.
DiagramSum projector2();

}  // namespace vbt
