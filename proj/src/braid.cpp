#include "vbt/braid.hpp"

#include <cctype>
#include <sstream>

namespace vbt {

namespace {

void check_index(const BraidLetter& g, int n) {
  if (g.index < 1 || g.index >= n)
    throw IndexOutOfRange("letter index " + std::to_string(g.index) +
                          " out of range for " + std::to_string(n) + " strands");
}

}  // namespace

BraidWord parse_braid(const std::string& text) {
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
  auto fail = [&](const std::string& m) -> void { throw BraidSyntaxError(m, i); };

  skip_ws();
  if (i >= text.size() || text[i] != 'n') fail("expected strand declaration `n=<int>;`");
  ++i;
  skip_ws();
  if (i >= text.size() || text[i] != '=') fail("expected `=` after `n`");
  ++i;
  skip_ws();
  size_t num_start = i;
  while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
  if (i == num_start) fail("expected strand count");
  int n = std::stoi(text.substr(num_start, i - num_start));
  if (n < 1) fail("strand count must be positive");
  skip_ws();
  if (i >= text.size() || text[i] != ';') fail("expected `;` after strand count");
  ++i;

  BraidWord w;
  w.strand_count = n;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    char c = text[i];
    if (c != 's' && c != 'v') fail("expected letter `s<k>` or `v<k>`");
    ++i;
    size_t ks = i;
    while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
    if (i == ks) fail("expected index after letter");
    BraidLetter g;
    g.gen = (c == 's') ? Gen::sigma : Gen::v;
    g.index = std::stoi(text.substr(ks, i - ks));
    g.power = 1;
    if (i < text.size() && text[i] == '^') {
      if (g.gen == Gen::v) fail("virtual letters take no power");
      ++i;
      if (i + 1 < text.size() && text[i] == '-' && text[i + 1] == '1') {
        g.power = -1;
        i += 2;
      } else {
        fail("expected `-1` after `^`");
      }
    }
    check_index(g, n);
    w.letters.push_back(g);
  }
  return w;
}

BraidWord normalize(BraidWord w) {
  std::vector<BraidLetter> out;
  for (const auto& g : w.letters) {
    if (!out.empty()) {
      const auto& p = out.back();
      bool cancel =
          (p.gen == Gen::v && g.gen == Gen::v && p.index == g.index) ||
          (p.gen == Gen::sigma && g.gen == Gen::sigma && p.index == g.index &&
           p.power == -g.power);
      if (cancel) {
        out.pop_back();
        continue;
      }
    }
    out.push_back(g);
  }
  w.letters = std::move(out);
  return w;
}

std::string braid_str(const BraidWord& w) {
  std::ostringstream os;
  os << "n=" << w.strand_count << ";";
  for (const auto& g : w.letters) {
    os << " " << (g.gen == Gen::sigma ? "s" : "v") << g.index;
    if (g.power == -1) os << "^-1";
  }
  return os.str();
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
  if (a.strand_count != b.strand_count)
    throw IndexOutOfRange("cannot concatenate words on different strand counts");
  BraidWord w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

BraidWord inverse_word(const BraidWord& w) {
  BraidWord r;
  r.strand_count = w.strand_count;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    BraidLetter g = *it;
    if (g.gen == Gen::sigma) g.power = -g.power;
    r.letters.push_back(g);
  }
  return r;
}

int writhe(const BraidWord& w) {
  int t = 0;
  for (const auto& g : w.letters)
    if (g.gen == Gen::sigma) t += g.power;
  return t;
}

DiagramSum smooth_word(const BraidWord& w) {
  const int n = w.strand_count;
  DiagramSum acc = identity(n);
  for (const auto& g : w.letters) {
    check_index(g, n);
    DiagramSum core = (g.gen == Gen::v)
                          ? dsum_of(virtual_transposition())
                          : smooth_crossing(g.power > 0 ? CrossSign::positive
                                                        : CrossSign::negative);
    DiagramSum layer = tensor(tensor(identity(g.index - 1), core), identity(n - g.index - 1));
    acc = compose(acc, layer);
  }
  return acc;
}

Scalar bracket_closure(const BraidWord& w) { return close(smooth_word(w)); }

}  // namespace vbt
