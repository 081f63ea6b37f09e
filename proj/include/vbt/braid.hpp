#pragma once
// Virtual braid words: parsing, normalization, and the diagram-level bracket
// of closures.  The representation-level machinery lives in braidrep.hpp.

#include <string>
#include <vector>

#include "vbt/diagram.hpp"

namespace vbt {

struct BraidSyntaxError : std::runtime_error {
  size_t position;
  BraidSyntaxError(const std::string& what, size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};
struct IndexOutOfRange : std::runtime_error {
  explicit IndexOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

enum class Gen : uint8_t { sigma, v };

struct BraidLetter {
  Gen gen = Gen::sigma;
  int index = 1;  // 1 .. strand_count-1
  int power = 1;  // +1 or -1; v letters always +1 after normalization
  bool operator==(const BraidLetter& o) const = default;
};

struct BraidWord {
  int strand_count = 1;
  std::vector<BraidLetter> letters;
  bool operator==(const BraidWord& o) const = default;
};

// grammar: `n=<int>;` then whitespace-separated `s<k>`, `s<k>^-1`, `v<k>`
BraidWord parse_braid(const std::string& text);
// free reduction: removes adjacent sigma_i sigma_i^-1 and v_i v_i pairs
BraidWord normalize(BraidWord w);
std::string braid_str(const BraidWord& w);
BraidWord concat(const BraidWord& a, const BraidWord& b);
BraidWord inverse_word(const BraidWord& w);

int writhe(const BraidWord& w);

// Strand-level smoothing of the word: every sigma becomes the skein sum,
// every v the transposition, all embedded into n strands by tensoring.
DiagramSum smooth_word(const BraidWord& w);
// The unnormalized bracket of the closure of w (loops evaluated at d).
Scalar bracket_closure(const BraidWord& w);

}  // namespace vbt
