#pragma once

// The integer surgery mapping cone.
//
//   A_s = C{i <= 0 and j <= s}     spanned by U^max(0, A(x) - s) x
//   B_s = C{i <= 0}                spanned by x
//   v_s : A_s -> B_s               inclusion
//   h_s : A_s -> B_{s+n}           U^s, then the flip map
//
// The cone of D_n = sum of v_s + h_s computes HF^-(S^3_n(K)).  It is
// truncated to A_s with |s| < b and to the B_t whose two incoming maps both
// survive, t in [n - b + 1, b - 1].  The dropped part is acyclic once b is at
// least the genus and b > n / 2.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conecalc/cfk.hpp"
#include "conecalc/f2u.hpp"
#include "conecalc/rational.hpp"

namespace conecalc::surgery {

struct Subcomplex {
  int s = 0;
  std::vector<int> shifts;  // U-power on each generator of the parent
  f2u::MonomialMatrix differential;
};

Subcomplex build_As(const cfk::KnotComplex& c, int s);
Subcomplex build_B(const cfk::KnotComplex& c);

// Inclusion A_s -> B_s, degree 0.
f2u::MonomialMatrix map_v(const cfk::KnotComplex& c, int s);
// A_s -> B_{s+n}, degree -2s.  Throws kMissingFlip.
f2u::MonomialMatrix map_h(const cfk::KnotComplex& c, int s);

enum class Mode { kDirect, kTheorem };

struct HValue {
  int value = 0;
  Mode mode = Mode::kDirect;
};

// v_{s,*} on the towers is multiplication by U^V_s.
int compute_V(const cfk::KnotComplex& c, int s);
// Direct from the flip when present, otherwise V_{-s}.
HValue compute_H(const cfk::KnotComplex& c, int s, bool force_direct = false);
// d(S^3_1(K)) = -2 V_0.
int d_one(const cfk::KnotComplex& c);

struct VHRow {
  int s = 0;
  int V = 0;
  int H = 0;

  bool operator==(const VHRow&) const = default;
};

struct VHTable {
  std::string knot;
  int genus = 0;
  Mode h_mode = Mode::kDirect;
  int d1 = 0;
  std::vector<VHRow> rows;

  bool operator==(const VHTable&) const = default;
};

VHTable vh_table(const cfk::KnotComplex& c, int s_min, int s_max,
                 bool force_direct = false);
// Window [-b, b] with b = max(genus, 1).
VHTable vh_table(const cfk::KnotComplex& c);

// Smallest admissible truncation half-width: max(genus, n / 2 + 1).
int half_width(int genus, int n);

// Integer grading shift of the A_s column inside its Spin^c component; the
// B_s column sits one lower.  Satisfies shift(s + n) = shift(s) + 2s and
// vanishes at s = s mod n.
int column_shift(int n, int s);
// Absolute grading of the integer 0 in component `label`:
// ((2 label - n)^2 - n) / 4n.
Rational label_offset(int n, int label);
int label_of(int n, int s);

struct ConePiece {
  enum class Kind { kA, kB };
  Kind kind;
  int s;
  std::size_t offset;
  std::size_t size;
  int shift;
};

struct ConeComplex {
  int n = 1;
  int half_width = 1;
  f2u::MonomialMatrix differential{{}, {}, -1};
  std::vector<ConePiece> pieces;
  std::vector<int> labels;  // Spin^c label of each basis position

  const ConePiece* find(ConePiece::Kind kind, int s) const;
  std::pair<int, int> a_range() const;
  std::pair<int, int> b_range() const;
  // Places a homogeneous chain of B (unshifted) into the B_s column.
  f2u::Chain include_B(int s, const f2u::Chain& in_b) const;
};

// Throws kMissingFlip.  `extra` widens the window on each side.
ConeComplex build_cone(const cfk::KnotComplex& c, int n, int extra = 0);

struct LabelHomology {
  int label = 0;
  Rational offset;
  f2u::GradedModule module;

  bool operator==(const LabelHomology&) const = default;
};

struct SurgeryHomology {
  std::string knot;
  int n = 1;
  std::vector<LabelHomology> labels;

  int total_free_rank() const;
  bool operator==(const SurgeryHomology&) const = default;
};

SurgeryHomology homology_of(const ConeComplex& cone,
                            const f2u::HomologyPresentation& p,
                            std::string knot);
SurgeryHomology cone_homology(const cfk::KnotComplex& c, int n, int extra = 0);
bool truncation_stability(const cfk::KnotComplex& c, int n, int extra);

}  // namespace conecalc::surgery
