#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glat/structure.hpp"
#include "glat/symbols.hpp"

namespace glat {

// Rank-1 restriction of a structure to the line through alpha.
ScalarStructure line_restriction(const ScalarStructure& s, const Pt& alpha);

// One coset of the alpha-line inside the box: a maximal consecutive run of
// lattice points, its recognized degree value and slot scalings.
struct CosetData {
  Pt tail;                 // coset key: coordinates across the line
  std::vector<Pt> run;     // consecutive points, step +alpha
  Scalar delta;
  bool definite = true;    // false while the defect-zero ambiguity is open
  std::vector<Scalar> t;   // slot scalings (t[0] = 1)
  Scalar x0;               // density index of run[0] = l(run[0]) / l(alpha)
  std::vector<Scalar> delta_candidates;
};

struct DegreeFunction {
  Pt alpha;                          // primitive anchor with l(alpha) != 0
  std::vector<Pt> frame;             // unimodular completion, first row alpha
  std::map<long, Scalar> g;          // line normalization L^_n = L_{n alpha}/g(n)
  std::map<Pt, CosetData, PtLess> cosets;  // key = tail coordinates
  bool mirror_ok = true;             // delta(b) + delta(-b) = -2 where definite
  bool affine_ok = true;             // delta(b+c) = delta(b) + delta(c) + 1
  std::string detail;

  const CosetData* coset_of(const Pt& tail) const;
};
std::optional<DegreeFunction> degree_function(const ScalarStructure& s, const Box& box,
                                              std::string* why = nullptr);

struct EmbeddingReport {
  std::vector<CPair> pi_images;
  bool additive_ok = false;
  bool injective = false;
  std::vector<Pt> kernel_basis;
  bool cocycle_ok = false;
  EquivResult certificate;
  std::string detail;
};
EmbeddingReport recover_embedding(const ScalarStructure& s, const Box& box,
                                  const DegreeFunction& df);

struct Classification {
  enum Tag { AdditiveCurrent, IntegrableLoop, Degenerate, Inconclusive } tag = Inconclusive;
  LAnalysis l_analysis;
  // AdditiveCurrent / Degenerate
  EmbeddingReport embedding;
  // IntegrableLoop
  long period = 0;
  std::vector<long> phi;
  std::string model;
  EquivResult certificate;
  std::string detail;
};
Classification classify(const ScalarStructure& s, const Box& box);

// Zero-pattern of a rank-1 bracket on the box, matched against the short list
// of section shapes: the full Witt line, Witt plus a tail module on one side,
// or a single sl2 pair with a module.
enum class SectionType { FullLine, HalfPlus, HalfMinus, PairOnly, Unknown };
SectionType rank1_section_type(const ScalarStructure& s, const Box& box);
std::string section_type_name(SectionType t);

}  // namespace glat
