#pragma once

// Maps induced by the 2-handle cobordism W_n(K) from S^3 to S^3_n(K), read
// off the mapping cone: the map for a Spin^c structure is the inclusion of
// one B column, so it vanishes exactly when the tower generator of that column
// is a boundary in the cone.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conecalc/cfk.hpp"
#include "conecalc/f2u.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/surgery.hpp"

namespace conecalc::cobordism {

// Spin^c structure t_s on W_n(K) with <c1(t_s), [capped Seifert surface]> =
// 2s + n.
struct SpincLabel {
  int n = 1;
  int s = 0;

  int evaluation() const { return 2 * s + n; }
  Rational c1_squared() const;
};

// (c1^2 - 2 chi - 3 sigma) / 4 for the trace, chi = sigma = 1.
Rational grading_shift(int n, int s);

// The B_s column of the cone carries the structure with evaluation 2s - n,
// i.e. t_{s-n}.
SpincLabel column_label(int n, int s);

struct HandleMapClass {
  int n = 1;
  int s = 0;
  int half_width = 1;
  Rational degree;    // absolute degree of H(B_s) -> H(cone)
  f2u::Chain cycle;   // image of the tower generator in the cone basis
  bool is_zero = true;
};

// Builds a cone wide enough to contain B_s.  Throws kMissingFlip.
HandleMapClass handle_map_class(const cfk::KnotComplex& c, int n, int s);

enum class Verdict { kZero, kNonzero, kUndetermined };

struct VanishingEntry {
  int s = 0;
  Verdict verdict = Verdict::kUndetermined;
  surgery::Mode mode = surgery::Mode::kTheorem;

  bool operator==(const VanishingEntry&) const = default;
};

struct VanishingReport {
  std::string knot;
  int n = 1;
  int d1 = 0;
  bool theorem_applies = false;
  bool consistent = true;
  std::vector<VanishingEntry> per_s;
  std::string conclusion;

  bool all_direct_zero() const;
  bool operator==(const VanishingReport&) const = default;
};

// Default s-range is [-b, b] with b the cone half-width for n.
VanishingReport vanishing_report(
    const cfk::KnotComplex& c, int n,
    std::optional<std::pair<int, int>> s_range = std::nullopt);

enum class FillingVerdict { kObstructed, kInconclusive };

struct ObstructionReport {
  std::string knot;
  int n = 1;
  int d1 = 0;
  FillingVerdict verdict = FillingVerdict::kInconclusive;
  std::vector<std::string> explanation;
  VanishingReport evidence;

  bool operator==(const ObstructionReport&) const = default;
};

ObstructionReport obstruct_filling(
    const cfk::KnotComplex& c, int n,
    std::optional<std::pair<int, int>> s_range = std::nullopt);

std::string to_string(Verdict v);
std::string to_string(FillingVerdict v);

}  // namespace conecalc::cobordism
