#include "vbt/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace vbt {

Diagram::Diagram(int nb_, int nt_, const std::vector<std::pair<int, int>>& pairs)
    : nb(nb_), nt(nt_), pr(static_cast<size_t>(nb_ + nt_), -1) {
  for (auto [i, j] : pairs) {
    pr[static_cast<size_t>(i)] = j;
    pr[static_cast<size_t>(j)] = i;
  }
  for (size_t i = 0; i < pr.size(); ++i)
    if (pr[i] < 0 || pr[static_cast<size_t>(pr[i])] != static_cast<int>(i) || pr[i] == static_cast<int>(i))
      throw std::runtime_error("diagram pairing is not a fixed-point-free involution");
}

std::string Diagram::str() const {
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < pr.size(); ++i)
    if (static_cast<int>(i) < pr[i]) pairs.emplace_back(static_cast<int>(i), pr[i]);
  std::sort(pairs.begin(), pairs.end());
  std::ostringstream os;
  os << nb << "/" << nt << ":";
  for (size_t k = 0; k < pairs.size(); ++k)
    os << (k ? ", " : " ") << pairs[k].first << "-" << pairs[k].second;
  return os.str();
}

DiagramSum& DiagramSum::add_term(const Diagram& d, const Scalar& c) {
  if (c.is_zero()) return *this;
  auto it = terms.find(d);
  if (it == terms.end()) {
    terms.emplace(d, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
  return *this;
}

DiagramSum dsum_of(const Diagram& d, const Scalar& c) {
  DiagramSum s;
  s.add_term(d, c);
  return s;
}

DiagramSum operator+(const DiagramSum& x, const DiagramSum& y) {
  DiagramSum r = x;
  for (const auto& [d, c] : y.terms) r.add_term(d, c);
  return r;
}

DiagramSum scaled(const DiagramSum& x, const Scalar& c) {
  DiagramSum r;
  if (c.is_zero()) return r;
  for (const auto& [d, v] : x.terms) r.terms.emplace(d, v * c);
  return r;
}

const Scalar& loop_value() {
  static const Scalar d = -(Scalar::A_pow(2) + Scalar::A_pow(-2));
  return d;
}

namespace {
// Compose two bare matchings; returns the result diagram and the loop count.
std::pair<Diagram, int> compose_one(const Diagram& lo, const Diagram& hi) {
  if (lo.nt != hi.nb) throw BoundaryMismatch();
  const int nb = lo.nb, mid = lo.nt, nt = hi.nt;
  // Point universe: final bottom 0..nb-1, final top nb..nb+nt-1.
  // Walk from each final point through the glued middle boundary.
  Diagram out;
  out.nb = nb;
  out.nt = nt;
  out.pr.assign(static_cast<size_t>(nb + nt), -1);

  auto lo_partner = [&](int p) { return lo.pr[static_cast<size_t>(p)]; };
  auto hi_partner = [&](int p) { return hi.pr[static_cast<size_t>(p)]; };
  // encode: in `lo`, points are bottom 0..nb-1 (final) and top nb..nb+mid-1 (middle j = p-nb)
  //          in `hi`, points are bottom 0..mid-1 (middle) and top mid..mid+nt-1 (final nb + (p-mid))
  std::vector<char> mid_seen(static_cast<size_t>(mid), 0);

  for (int start = 0; start < nb + nt; ++start) {
    if (out.pr[static_cast<size_t>(start)] != -1) continue;
    bool in_lower = start < nb;
    int p = in_lower ? start : mid + (start - nb);
    // take the first pairing step from the endpoint itself
    while (true) {
      p = in_lower ? lo_partner(p) : hi_partner(p);
      if (in_lower && p < nb) {  // reached a final bottom point
        out.pr[static_cast<size_t>(start)] = p;
        out.pr[static_cast<size_t>(p)] = start;
        break;
      }
      if (!in_lower && p >= mid) {  // reached a final top point
        int f = nb + (p - mid);
        out.pr[static_cast<size_t>(start)] = f;
        out.pr[static_cast<size_t>(f)] = start;
        break;
      }
      // crossed into the glued middle boundary: hop to the other diagram
      if (in_lower) {
        int j = p - nb;
        mid_seen[static_cast<size_t>(j)] = 1;
        p = j;  // middle j is bottom j of hi
        in_lower = false;
      } else {
        int j = p;
        mid_seen[static_cast<size_t>(j)] = 1;
        p = nb + j;  // middle j is top j of lo
        in_lower = true;
      }
    }
  }
  // loops: middle points never reached from a boundary walk
  int loops = 0;
  for (int j = 0; j < mid; ++j) {
    if (mid_seen[static_cast<size_t>(j)]) continue;
    // trace the loop through both diagrams, marking its middle points
    int p = j;
    bool in_lower = false;  // start as bottom j of hi
    while (!mid_seen[static_cast<size_t>(in_lower ? p - nb : p)]) {
      int at_mid = in_lower ? p - nb : p;
      mid_seen[static_cast<size_t>(at_mid)] = 1;
      p = in_lower ? lo_partner(p) : hi_partner(p);
      // partner is necessarily another middle point on this loop
      if (in_lower) {
        p = p - nb;
        in_lower = false;
      } else {
        p = nb + p;
        in_lower = true;
      }
    }
    ++loops;
  }
  return {out, loops};
}
}  // namespace

DiagramSum compose(const DiagramSum& lower, const DiagramSum& upper) {
  DiagramSum r;
  for (const auto& [dl, cl] : lower.terms)
    for (const auto& [du, cu] : upper.terms) {
      auto [d, loops] = compose_one(dl, du);
      Scalar c = cl * cu;
      for (int i = 0; i < loops; ++i) c = c * loop_value();
      r.add_term(d, c);
    }
  return r;
}

DiagramSum tensor(const DiagramSum& left, const DiagramSum& right) {
  DiagramSum r;
  for (const auto& [dl, cl] : left.terms)
    for (const auto& [dr, cr] : right.terms) {
      int nb = dl.nb + dr.nb, nt = dl.nt + dr.nt;
      auto map_l = [&](int p) { return p < dl.nb ? p : p + dr.nb; };
      auto map_r = [&](int p) { return p < dr.nb ? dl.nb + p : dl.nb + dl.nt + p; };
      std::vector<std::pair<int, int>> pairs;
      for (size_t i = 0; i < dl.pr.size(); ++i)
        if (static_cast<int>(i) < dl.pr[i]) pairs.emplace_back(map_l(static_cast<int>(i)), map_l(dl.pr[i]));
      for (size_t i = 0; i < dr.pr.size(); ++i)
        if (static_cast<int>(i) < dr.pr[i]) pairs.emplace_back(map_r(static_cast<int>(i)), map_r(dr.pr[i]));
      r.add_term(Diagram(nb, nt, pairs), cl * cr);
    }
  return r;
}

Scalar close(const DiagramSum& x) {
  Scalar total = Scalar::from_int(0);
  for (const auto& [d, c] : x.terms) {
    if (d.nb != d.nt) throw BoundaryMismatch();
    int n = d.nb;
    std::vector<char> seen(static_cast<size_t>(2 * n), 0);
    int loops = 0;
    for (int s = 0; s < 2 * n; ++s) {
      if (seen[static_cast<size_t>(s)]) continue;
      int p = s;
      while (!seen[static_cast<size_t>(p)]) {
        seen[static_cast<size_t>(p)] = 1;
        p = d.pr[static_cast<size_t>(p)];
        seen[static_cast<size_t>(p)] = 1;
        p = p < n ? p + n : p - n;  // closure arc bottom i <-> top i
      }
      ++loops;
    }
    Scalar v = c;
    for (int i = 0; i < loops; ++i) v = v * loop_value();
    total = total + v;
  }
  return total;
}

DiagramSum mirror(const DiagramSum& x) {
  DiagramSum r;
  for (const auto& [d, c] : x.terms) {
    auto m = [&](int p) { return p < d.nb ? p + d.nt : p - d.nb; };
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < d.pr.size(); ++i)
      if (static_cast<int>(i) < d.pr[i]) pairs.emplace_back(m(static_cast<int>(i)), m(d.pr[i]));
    r.add_term(Diagram(d.nt, d.nb, pairs), c);
  }
  return r;
}

DiagramSum identity(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(i, n + i);
  return dsum_of(Diagram(n, n, pairs));
}

DiagramSum cupcap() { return dsum_of(Diagram(2, 2, {{0, 1}, {2, 3}})); }

Diagram virtual_transposition() { return Diagram(2, 2, {{0, 3}, {1, 2}}); }

DiagramSum smooth_crossing(CrossSign sign) {
  Scalar Ap = Scalar::A_pow(1), Am = Scalar::A_pow(-1);
  if (sign == CrossSign::positive) return scaled(identity(2), Ap) + scaled(cupcap(), Am);
  return scaled(identity(2), Am) + scaled(cupcap(), Ap);
}

DiagramSum projector2() {
  return identity(2) + scaled(cupcap(), -loop_value().inverse());
}

}  // namespace vbt
