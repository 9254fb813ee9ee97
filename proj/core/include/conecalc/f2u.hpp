#pragma once

// Exact linear algebra for finitely generated, graded, free chain complexes
// over F2[U], with U of degree -2.
//
// Every map handled here is grading-homogeneous, so a matrix entry is either
// zero or a single monomial U^k whose exponent is fixed by the gradings of its
// row and column.  Matrices therefore store one bit per slot; the exponent is
// recomputed from the gradings on demand.  Row and column operations with a
// minimal-exponent pivot keep every entry monomial.
//
// Coefficients are polynomials rather than power series.  All complexes are
// finitely generated and graded, and F2[[U]] is flat over F2[U], so completing
// would neither create nor destroy any summand or any vanishing statement
// computed here.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conecalc::f2u {

// Ordered basis of a free graded F2[U]-module.
struct Basis {
  std::vector<std::string> labels;
  std::vector<int> gradings;

  std::size_t size() const { return gradings.size(); }
  void push_back(std::string label, int grading);

  bool operator==(const Basis&) const = default;
};

// Exponent k such that U^k e_to has the grading of the image of e_from under a
// map of the given degree, or nullopt if no nonnegative integer k exists.
std::optional<int> implied_power(int to_grading, int from_grading, int degree);

// Homogeneous element of a free graded module.  A set bit at position i stands
// for U^((g_i - grading) / 2) e_i.
struct Chain {
  int grading = 0;
  std::vector<std::uint8_t> bits;

  static Chain zero(std::size_t size, int grading);
  static Chain basis_vector(const Basis& basis, std::size_t index,
                            int upower = 0);

  bool is_zero() const;
  // Every set bit has a nonnegative integral exponent in `basis`.
  bool fits(const Basis& basis) const;

  Chain& operator+=(const Chain& other);
  bool operator==(const Chain&) const = default;
};

class MonomialMatrix {
 public:
  MonomialMatrix(Basis rows, Basis cols, int degree);

  static MonomialMatrix identity(const Basis& basis);

  // Adds U^upower at (row, col).  Throws kNonHomogeneous when the exponent
  // disagrees with the gradings.
  void add_term(std::size_t row, std::size_t col, int upower);

  bool test(std::size_t row, std::size_t col) const {
    return bits_[row * cols_.size() + col] != 0;
  }
  // Exponent of the slot; meaningful only for admissible slots.
  int power(std::size_t row, std::size_t col) const;
  bool admissible(std::size_t row, std::size_t col) const;

  const Basis& rows() const { return rows_; }
  const Basis& cols() const { return cols_; }
  int degree() const { return degree_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return cols_.size(); }

  bool is_zero() const;
  int max_power() const;

  // Composition: (*this) after rhs.
  MonomialMatrix operator*(const MonomialMatrix& rhs) const;
  MonomialMatrix operator+(const MonomialMatrix& rhs) const;
  Chain apply(const Chain& x) const;

  // Elementary operations over F2[U]; exponents follow from the gradings.
  // row[dst] += U^k row[src], col[dst] += U^k col[src].
  void add_row(std::size_t dst, std::size_t src);
  void add_col(std::size_t dst, std::size_t src);
  void flip(std::size_t row, std::size_t col) {
    bits_[row * cols_.size() + col] ^= 1;
  }

  bool operator==(const MonomialMatrix&) const = default;

 private:
  Basis rows_;
  Basis cols_;
  int degree_;
  std::vector<std::uint8_t> bits_;
};

struct Pivot {
  std::size_t row;
  std::size_t col;
  int power;
};

// P * m * Q = diagonal, with P and Q invertible over F2[U] and homogeneous of
// degree zero.
struct SmithForm {
  MonomialMatrix row_transform;
  MonomialMatrix col_transform;
  MonomialMatrix diagonal;
  std::vector<Pivot> pivots;

  std::vector<int> exponents() const;
};

SmithForm snf_monomial(const MonomialMatrix& m);

struct TorsionSummand {
  int grading;
  int order;

  auto operator<=>(const TorsionSummand&) const = default;
};

// Direct sum of free summands F2[U] (top grading listed) and cyclic summands
// F2[U]/U^order (generator grading listed).  Stored sorted.
struct GradedModule {
  std::vector<int> free;
  std::vector<TorsionSummand> torsion;

  static GradedModule canonical(std::vector<int> free,
                                std::vector<TorsionSummand> torsion);

  int free_rank() const { return static_cast<int>(free.size()); }
  int f2_dimension(int grading) const;

  bool operator==(const GradedModule&) const = default;
};

class HomologyPresentation {
 public:
  struct Generator {
    std::size_t position;  // index in the reduced basis
    int grading;
    int order;  // 0 for a free summand
  };

  const MonomialMatrix& differential() const { return differential_; }
  // Columns are the reduced basis vectors written in the original basis.
  const MonomialMatrix& change_of_basis() const { return change_; }
  const MonomialMatrix& inverse_change() const { return inverse_; }
  // inverse * differential * change: a direct sum of single arrows.
  const MonomialMatrix& reduced() const { return reduced_; }
  const std::vector<Pivot>& pairs() const { return pairs_; }

  const std::vector<Generator>& generators() const { return generators_; }
  const Basis& generator_basis() const { return generator_basis_; }
  GradedModule module() const;

  Chain representative(std::size_t generator) const;
  bool is_cycle(const Chain& x) const;
  bool is_boundary(const Chain& cycle) const;
  // Coordinates of the class of `cycle` over generator_basis(), reduced
  // modulo the torsion orders.
  Chain homology_class(const Chain& cycle) const;
  // Drops entries of a map into this homology that vanish by torsion.
  MonomialMatrix reduce(const MonomialMatrix& into_homology) const;

 private:
  friend HomologyPresentation homology(const MonomialMatrix& d);
  explicit HomologyPresentation(const MonomialMatrix& d);

  MonomialMatrix differential_;
  MonomialMatrix change_;
  MonomialMatrix inverse_;
  MonomialMatrix reduced_;
  std::vector<Pivot> pairs_;
  std::vector<int> role_;  // -1 free, 0 source, k > 0 target of U^(k-1)
  std::vector<Generator> generators_;
  Basis generator_basis_;
};

// Throws kDifferentialSquare if d*d != 0.
HomologyPresentation homology(const MonomialMatrix& d);

// Matrix of f_* in the generator bases of src and dst.  Throws kNotChainMap.
MonomialMatrix induced_map(const MonomialMatrix& f,
                           const HomologyPresentation& src,
                           const HomologyPresentation& dst);

// Throws kNotCycle when z is not a cycle.
bool class_is_zero(const HomologyPresentation& p, const Chain& z);

// Bound T for the truncated solver; CONECALC_TRUNC_T overrides it.
int truncation_bound(int max_power, int genus, int n);

// Works in C / U^T C one grading at a time with plain F2 elimination.  Exact
// once T exceeds the exponents reachable in the gradings queried.
class TruncatedSolver {
 public:
  TruncatedSolver(const MonomialMatrix& d, int bound);

  int bound() const { return bound_; }
  bool is_boundary(const Chain& z) const;
  int homology_dimension(int grading) const;

 private:
  struct Slot {
    std::size_t index;
    int upower;
  };
  std::vector<Slot> piece(int grading) const;

  MonomialMatrix d_;
  int bound_;
};

// Boundary test at T and 2T; throws std::logic_error if they disagree.
bool truncated_is_boundary(const MonomialMatrix& d, const Chain& z, int bound);

}  // namespace conecalc::f2u
