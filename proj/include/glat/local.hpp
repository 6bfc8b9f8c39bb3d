#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "glat/matrix.hpp"
#include "glat/scalar.hpp"

namespace glat {

// A rank-one local datum over the Witt line: two families u+_x (x in sP + Z)
// and u-_y (y in sM + Z) of degree +-1 with
//   [L_k, u+-_x] = (x + k theta+-) u+-_{x+k},   [u+_x, u-_y] = pair(x,y) L_{x+y}.
// sP + sM must be an integer so the pairing lands on honest Witt degrees.
struct LocalAlgebra {
  std::string kind;  // "product" or "bracket"
  Scalar delta, s;   // construction parameters (kept for reports)
  Scalar thetaP, thetaM;
  Scalar sP, sM;
  std::function<Scalar(const Scalar&, const Scalar&)> pair;

  Scalar xp(long slot) const { return sP + Scalar(slot); }
  Scalar xm(long slot) const { return sM + Scalar(slot); }
  Scalar actP(long k, long slot) const { return xp(slot) + Scalar(k) * thetaP; }
  Scalar actM(long k, long slot) const { return xm(slot) + Scalar(k) * thetaM; }
  long w0() const;  // the integer sP + sM
};

// Commutative-product datum on a density module: theta+ = -delta,
// theta- = delta - 1, pairing identically -1.
LocalAlgebra product_local(const Scalar& delta, const Scalar& s);
// Bracket datum: theta+ = delta, theta- = -2-delta,
// pairing (x, y) -> (-2-delta) x - delta y.
LocalAlgebra bracket_local(const Scalar& delta, const Scalar& s);
// Swap the two sides; pairing (x,y) -> -pair(y,x).
LocalAlgebra opposite(const LocalAlgebra& v);

// Equivariance of the pairing under L_k on a test window:
//   pair(x,y) (x + y - k ...) consistency with the two shifted pairings.
bool local_check(const LocalAlgebra& v, long window);

// ---- minimal graded extension, word model ------------------------------------
//
// Level n elements are spanned by right-normed words [u+_{j1}, [..., u+_{jn}]]
// (slots are free integers).  The minimality quotient is measured through
// iterated pairings with u-_y: an element is zero in the minimal extension iff
// every (n-1)-fold descent kills it.  Dimensions are therefore ranks of
// word-by-descent matrices; they are lower bounds that stabilize once the
// word window `jrange` and descent window `yrange` saturate, which is checked
// by `stability`.

using Word = std::vector<long>;  // u+ slot sequence
struct WordElem {
  std::map<Word, Scalar> c;
  void add(const Word& w, const Scalar& v);
  bool is_zero() const;
};

// L_k action on a word (level-preserving).
WordElem witt_word_action(const LocalAlgebra& v, long k, const Word& w);
WordElem witt_word_action(const LocalAlgebra& v, long k, const WordElem& e);
// descent [u-_y, word]: level n -> n-1 (word length must be >= 2)
WordElem descend(const LocalAlgebra& v, long y, const Word& w);
WordElem descend(const LocalAlgebra& v, long y, const WordElem& e);
// full collapse of a length-2 word is a Witt line element; exposed for tests
Scalar collapse_pair(const LocalAlgebra& v, long jp, long ym);

struct LevelDegreeData {
  long degree = 0;
  int dim = 0;
  std::vector<WordElem> basis;      // accepted representatives
  std::vector<Vec> fingerprints;    // their descent profiles
};
struct LevelData {
  int level = 1;
  std::map<long, LevelDegreeData> at;
};
struct Lmin {
  LocalAlgebra v;
  long jrange = 12, yrange = 4, drange = 12;
  std::vector<LevelData> levels;  // [0] is level 1

  // coordinates of an element in the stored basis of (level, degree);
  // nothing when the fingerprint leaves the measured span
  std::optional<Vec> coords(int level, long degree, const WordElem& e) const;
  Vec fingerprint(int level, const WordElem& e) const;
};

Lmin lmin_build(const LocalAlgebra& v, int max_level, long jrange, long yrange,
                long drange);

// dimension rows for reporting: per level, the dims on |d| <= drange
std::map<int, std::vector<int>> lmin_dims(const Lmin& m);

// Recompute two sample degrees with enlarged windows and compare.
bool lmin_stability(const LocalAlgebra& v, const Lmin& m);

// Dimension profile over both sides of the datum (the construction and its
// opposite), as used by the headline table: reports the per-side maxima of
// the level <= 3 dimensions over the interior degrees.
struct SideProfile {
  std::vector<int> dims_by_level;  // max dim per level (index 0 = level 1)
};
struct DimTableRow {
  Scalar delta, s;
  std::string kind;
  SideProfile side, opposite_side;
  int headline = 0;  // max over both sides of the level-3 entry
};
DimTableRow lmin_dim_table_row(const std::string& kind, const Scalar& delta,
                               const Scalar& s, long window);

// Structural certificate for the minimal extension on a window:
//  - every level degree in the interior is reachable from its neighbors by
//    L_{+-1}, L_{+-2} (connectivity surrogate for graded simplicity),
//  - descents from level n+1 are nonzero, ascents from level n are nonzero,
//  - degrees with dim > 1 are flagged and excluded from the certificate.
struct MinimalityReport {
  bool certified = false;
  std::vector<std::pair<int, long>> flagged;  // (level, degree) with dim > 1
  std::vector<std::string> notes;
  std::map<int, std::vector<int>> dims;
};
MinimalityReport minimality_check(const LocalAlgebra& v, int max_level, long window);

}  // namespace glat
