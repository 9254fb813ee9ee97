#pragma once

// Finite models of the full knot Floer complex CFK^infinity.
//
// A model lists generators x with Maslov grading M(x) and Alexander grading
// A(x), and a differential whose terms x -> U^a y are monomials.  The element
// U^a y sits at filtration level (i, j) = (-a, A(y) - a).  The optional flip
// map exchanges the two filtrations; it realizes the identification of
// C{j <= 0} with C{i <= 0} used by the h maps of the surgery formula.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conecalc/error.hpp"
#include "conecalc/f2u.hpp"

namespace conecalc::cfk {

struct Generator {
  std::string id;
  int maslov = 0;
  int alexander = 0;

  auto operator<=>(const Generator&) const = default;
};

// from -> U^upower to.  Flip terms may carry negative powers.
struct Term {
  std::string from;
  std::string to;
  int upower = 0;

  auto operator<=>(const Term&) const = default;
};

struct KnotComplex {
  std::string name;
  std::vector<Generator> generators;
  std::vector<Term> differential;
  std::optional<std::vector<Term>> flip;

  std::size_t index_of(std::string_view id) const;
  bool has_flip() const { return flip.has_value(); }

  bool operator==(const KnotComplex&) const = default;
};

struct Issue {
  ErrorCode code;
  std::string detail;

  bool operator==(const Issue&) const = default;
};

struct ValidationReport {
  std::string name;
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

// JSON text -> complex.  Throws kParse on malformed input.
KnotComplex parse(std::string_view text);
std::string render(const KnotComplex& c);

ValidationReport validate(const KnotComplex& c);
// Throws the first issue of validate() as an Error.
void require_valid(const KnotComplex& c);

// Checks only the flip invariants (chain map, Maslov, filtration swap,
// isomorphism on total homology).
std::vector<Issue> check_flip(const KnotComplex& c,
                              const std::vector<Term>& flip);

int genus(const KnotComplex& c);

std::vector<std::string> builtin_names();
// Throws kUnknownBuiltin.
KnotComplex builtin(std::string_view name);

// Symmetrized Alexander polynomial, coefficients from t^d down to t^-d.
struct StaircaseSpec {
  std::vector<int> coefficients;
};

// Throws kNotRealizable unless the nonzero coefficients are +-1, alternate in
// sign starting with +1, are symmetric and sum to 1.
KnotComplex staircase_from_lspace(const StaircaseSpec& spec,
                                  std::string name = "staircase");

KnotComplex mirror(const KnotComplex& c);

// Phi(x) = U^(-A(x)) sigma(x) for a matching sigma of generators with
// (M, A) -> (M - 2A, -A).  Throws kInvalidFlip if no matching is a valid
// flip.
std::vector<Term> default_flip(const KnotComplex& c);

// Generators sorted by id, term lists sorted with repeated pairs cancelled.
KnotComplex canonical(KnotComplex c);
// Equality of canonical forms, ignoring the name.
bool structurally_equal(const KnotComplex& a, const KnotComplex& b);

// Differential on the free F2[U]-module spanned by U^shift[x] x, with x
// graded by M(x) - 2 shift[x].  Throws kFiltration if a coefficient would need
// a negative power of U.
f2u::MonomialMatrix shifted_differential(const KnotComplex& c,
                                         const std::vector<int>& shifts);

}  // namespace conecalc::cfk
