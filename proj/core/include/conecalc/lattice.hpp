#pragma once

// Integral symmetric bilinear forms up to unimodular congruence q -> T^t q T.
//
// nullity_split brings q to diag(A, 0_k) with A nondegenerate.  For positive
// definite unimodular A, is_standard_diagonal decides whether A is congruent to
// the identity by repeatedly splitting off a vector of norm 1.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace conecalc::lattice {

// Dense int64 matrix; arithmetic throws kArithmeticOverflow.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static IntMatrix identity(std::size_t n);
  // diag(I_ones, 0_zeros).
  static IntMatrix standard(std::size_t ones, std::size_t zeros);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  long long& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  long long at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t rows,
                  std::size_t cols) const;
  bool is_symmetric() const;
  long long max_abs() const;
  std::vector<std::vector<long long>> to_rows() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<long long> data_;
};

std::string to_string(const IntMatrix& m);

// Fraction-free elimination in 128-bit arithmetic.
long long determinant(const IntMatrix& m);
// Sylvester: every leading principal minor is positive.
bool positive_definite(const IntMatrix& m);
long long quadratic_form(const IntMatrix& q, const std::vector<long long>& v);

// Basis change e_target <- e_target + factor * e_source, e_a <-> e_b, or
// e_target <- -e_target.
struct Move {
  enum class Kind { kAdd, kSwap, kNegate };
  Kind kind = Kind::kAdd;
  std::size_t target = 0;
  std::size_t source = 0;
  long long factor = 0;

  bool operator==(const Move&) const = default;
};

class SymIntMatrix {
 public:
  // Throws kLatticeInput unless q is square and symmetric.
  explicit SymIntMatrix(IntMatrix q);

  std::size_t size() const { return current_.rows(); }
  const IntMatrix& original() const { return original_; }
  const IntMatrix& current() const { return current_; }
  // Columns are the current basis in original coordinates, so
  // current = transform^t original transform.
  const IntMatrix& transform() const { return transform_; }
  const std::vector<Move>& log() const { return log_; }

  void add(std::size_t target, std::size_t source, long long factor);
  void swap(std::size_t a, std::size_t b);
  void negate(std::size_t i);
  void apply(const Move& m);

  // Rebuilds the current matrix and transform from the original and the log.
  bool replay_matches() const;

 private:
  IntMatrix original_;
  IntMatrix current_;
  IntMatrix transform_;
  std::vector<Move> log_;
};

struct NullitySplit {
  std::size_t rank = 0;
  std::size_t nullity = 0;
  IntMatrix transform;  // unimodular
  IntMatrix a;          // rank x rank, nondegenerate
  IntMatrix block;      // transform^t q transform = diag(a, 0)
  std::vector<Move> log;
};

NullitySplit nullity_split(const IntMatrix& q);

// Integer vectors with v^t a v = norm, in deterministic enumeration order.
// `limit` = 0 means no limit.  a must be positive definite.
std::vector<std::vector<long long>> vectors_of_norm(const IntMatrix& a,
                                                    long long norm,
                                                    std::size_t limit = 0);

struct DiagonalResult {
  bool standard = false;
  IntMatrix transform;  // when standard: transform^t a transform = I
  std::vector<Move> log;
  std::size_t stage = 0;  // when not: index of the failing split
  IntMatrix witness;      // when not: remaining block with no norm-1 vector
};

// Throws kLatticeInput unless a is symmetric, positive definite, |det| = 1.
DiagonalResult is_standard_diagonal(const IntMatrix& a);

enum class SplitFailure {
  kNone,
  kNotUnimodular,
  kNotPositiveDefinite,
  kNotDiagonalizable,
};

std::string to_string(SplitFailure f);

struct HandleSplitReport {
  std::size_t n = 0;
  std::size_t rank = 0;
  std::size_t nullity = 0;
  bool congruent = false;
  SplitFailure failure = SplitFailure::kNone;
  IntMatrix transform;  // full transform when congruent, else nullity split
  IntMatrix a;
  std::string witness;
  std::string conclusion;

  bool operator==(const HandleSplitReport&) const = default;
};

// Throws kLatticeInput unless q is square and symmetric.
HandleSplitReport handle_split_report(const IntMatrix& q);

// Gram matrix of the E8 root lattice.
IntMatrix e8();

struct Scrambled {
  IntMatrix matrix;     // transform^t q transform
  IntMatrix transform;  // unimodular
};

// Random unimodular congruence keeping every entry of the result within
// max_entry.  Deterministic in the seed.
Scrambled scramble(const IntMatrix& q, std::uint64_t seed, int moves = 40,
                   long long max_entry = 10);

struct SelfTestResult {
  int cases = 0;
  int recovered = 0;
  std::vector<std::string> failures;
};

// Scrambles diag(I_{n-k}, 0_k) for random n <= max_n and checks that
// handle_split_report recovers it with a verified transform.
SelfTestResult self_test(std::uint64_t seed, int cases = 200,
                         std::size_t max_n = 8);

}  // namespace conecalc::lattice
