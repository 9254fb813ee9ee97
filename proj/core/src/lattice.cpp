#include "conecalc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "conecalc/error.hpp"

namespace conecalc::lattice {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorCode::kArithmeticOverflow, "integer overflow in lattice");
  }
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::kArithmeticOverflow, "integer overflow in lattice");
  }
  return r;
}

long long abs_ll(long long v) {
  if (v == std::numeric_limits<long long>::min()) {
    throw Error(ErrorCode::kArithmeticOverflow, "integer overflow in lattice");
  }
  return v < 0 ? -v : v;
}

void require_symmetric(const IntMatrix& q) {
  if (!q.square() || !q.is_symmetric()) {
    throw Error(ErrorCode::kLatticeInput, "matrix is not square symmetric");
  }
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<long long>> v;
  for (const auto& r : rows) v.emplace_back(r);
  *this = from_rows(v);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) {
      throw Error(ErrorCode::kLatticeInput, "ragged matrix rows");
    }
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) { return standard(n, 0); }

IntMatrix IntMatrix::standard(std::size_t ones, std::size_t zeros) {
  IntMatrix m(ones + zeros, ones + zeros);
  for (std::size_t i = 0; i < ones; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                           std::size_t cols) const {
  IntMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

bool IntMatrix::is_symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

long long IntMatrix::max_abs() const {
  long long m = 0;
  for (long long v : data_) m = std::max(m, abs_ll(v));
  return m;
}

std::vector<std::vector<long long>> IntMatrix::to_rows() const {
  std::vector<std::vector<long long>> out(rows_, std::vector<long long>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j);
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw Error(ErrorCode::kInvalidArgument, "matrix shape mismatch");
  }
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out.at(i, j) =
            checked_add(out.at(i, j), checked_mul(at(i, k), rhs.at(k, j)));
      }
    }
  return out;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m.at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

long long determinant(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kInvalidArgument, "not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  constexpr __int128 kGuard = static_cast<__int128>(1) << 62;
  std::vector<__int128> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = m.at(i / n, i % n);
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return a[i * n + j]; };
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && at(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        for (__int128 v : {at(i, j), at(k, k), at(i, k), at(k, j)}) {
          if (v > kGuard || v < -kGuard) {
            throw Error(ErrorCode::kArithmeticOverflow, "determinant overflow");
          }
        }
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  const __int128 d = sign * at(n - 1, n - 1);
  if (d > std::numeric_limits<long long>::max() ||
      d < std::numeric_limits<long long>::min()) {
    throw Error(ErrorCode::kArithmeticOverflow, "determinant overflow");
  }
  return static_cast<long long>(d);
}

bool positive_definite(const IntMatrix& m) {
  if (!m.is_symmetric()) return false;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    if (determinant(m.block(0, 0, k, k)) <= 0) return false;
  }
  return true;
}

long long quadratic_form(const IntMatrix& q, const std::vector<long long>& v) {
  long long sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    long long row = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      row = checked_add(row, checked_mul(q.at(i, j), v[j]));
    }
    sum = checked_add(sum, checked_mul(v[i], row));
  }
  return sum;
}

SymIntMatrix::SymIntMatrix(IntMatrix q) {
  require_symmetric(q);
  transform_ = IntMatrix::identity(q.rows());
  original_ = q;
  current_ = std::move(q);
}

void SymIntMatrix::add(std::size_t target, std::size_t source,
                       long long factor) {
  apply({Move::Kind::kAdd, target, source, factor});
}

void SymIntMatrix::swap(std::size_t a, std::size_t b) {
  apply({Move::Kind::kSwap, a, b, 0});
}

void SymIntMatrix::negate(std::size_t i) {
  apply({Move::Kind::kNegate, i, i, 0});
}

void SymIntMatrix::apply(const Move& m) {
  const std::size_t n = size();
  if (m.target >= n || m.source >= n) {
    throw Error(ErrorCode::kInvalidArgument, "move index out of range");
  }
  auto& c = current_;
  auto& t = transform_;
  switch (m.kind) {
    case Move::Kind::kAdd:
      if (m.target == m.source) {
        throw Error(ErrorCode::kInvalidArgument, "add move needs two indices");
      }
      if (m.factor == 0) return;
      for (std::size_t i = 0; i < n; ++i) {
        c.at(i, m.target) =
            checked_add(c.at(i, m.target), checked_mul(m.factor, c.at(i, m.source)));
        t.at(i, m.target) =
            checked_add(t.at(i, m.target), checked_mul(m.factor, t.at(i, m.source)));
      }
      for (std::size_t j = 0; j < n; ++j) {
        c.at(m.target, j) =
            checked_add(c.at(m.target, j), checked_mul(m.factor, c.at(m.source, j)));
      }
      break;
    case Move::Kind::kSwap:
      if (m.target == m.source) return;
      for (std::size_t i = 0; i < n; ++i) {
        std::swap(c.at(i, m.target), c.at(i, m.source));
        std::swap(t.at(i, m.target), t.at(i, m.source));
      }
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(c.at(m.target, j), c.at(m.source, j));
      }
      break;
    case Move::Kind::kNegate:
      for (std::size_t i = 0; i < n; ++i) {
        c.at(i, m.target) = -c.at(i, m.target);
        c.at(m.target, i) = -c.at(m.target, i);
        t.at(i, m.target) = -t.at(i, m.target);
      }
      break;
  }
  log_.push_back(m);
}

bool SymIntMatrix::replay_matches() const {
  SymIntMatrix fresh(original_);
  for (const auto& m : log_) fresh.apply(m);
  return fresh.current_ == current_ && fresh.transform_ == transform_ &&
         transform_.transpose() * original_ * transform_ == current_;
}

NullitySplit nullity_split(const IntMatrix& q) {
  SymIntMatrix s(q);
  const std::size_t n = q.rows();
  IntMatrix w = q;  // q * transform
  auto add = [&](std::size_t t, std::size_t src, long long f) {
    s.add(t, src, f);
    for (std::size_t i = 0; i < n; ++i) {
      w.at(i, t) = checked_add(w.at(i, t), checked_mul(f, w.at(i, src)));
    }
  };
  auto swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    s.swap(a, b);
    for (std::size_t i = 0; i < n; ++i) std::swap(w.at(i, a), w.at(i, b));
  };

  std::size_t p = 0;
  for (std::size_t i = 0; i < n && p < n; ++i) {
    while (true) {
      std::vector<std::size_t> nz;
      for (std::size_t j = p; j < n; ++j)
        if (w.at(i, j) != 0) nz.push_back(j);
      if (nz.empty()) break;
      const std::size_t m = *std::min_element(
          nz.begin(), nz.end(), [&](std::size_t a, std::size_t b) {
            return abs_ll(w.at(i, a)) < abs_ll(w.at(i, b));
          });
      if (nz.size() == 1) {
        swap(p, m);
        ++p;
        break;
      }
      for (std::size_t j : nz) {
        if (j != m) add(j, m, -(w.at(i, j) / w.at(i, m)));
      }
    }
  }

  NullitySplit out;
  if (p == n) {
    out.rank = n;
    out.transform = IntMatrix::identity(n);
    out.a = out.block = q;
    return out;
  }
  out.rank = p;
  out.nullity = n - p;
  out.transform = s.transform();
  out.block = s.current();
  out.a = out.block.block(0, 0, p, p);
  out.log = s.log();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = p; j < n; ++j)
      if (out.block.at(i, j) != 0 || out.block.at(j, i) != 0) {
        throw std::logic_error("nullity_split: kernel block is not zero");
      }
  return out;
}

std::vector<std::vector<long long>> vectors_of_norm(const IntMatrix& a,
                                                    long long norm,
                                                    std::size_t limit) {
  require_symmetric(a);
  const std::size_t n = a.rows();
  std::vector<std::vector<long long>> found;
  if (n == 0 || norm <= 0) return found;

  // Fincke-Pohst: x^t a x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
  std::vector<std::vector<long double>> q(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = a.at(i, j);
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i][i] <= 0) {
      throw Error(ErrorCode::kLatticeInput, "form is not positive definite");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }

  const long double eps = 1e-6L * (static_cast<long double>(norm) + 1);
  std::vector<long long> x(n, 0);
  std::function<bool(std::size_t, long double)> search =
      [&](std::size_t i, long double rem) -> bool {
    long double center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q[i][j] * x[j];
    const long double radius = std::sqrt(std::max(0.0L, rem) / q[i][i]);
    const auto lo = static_cast<long long>(std::ceil(center - radius - eps));
    const auto hi = static_cast<long long>(std::floor(center + radius + eps));
    for (long long v = lo; v <= hi; ++v) {
      const long double t = v - center;
      const long double used = q[i][i] * t * t;
      if (used > rem + eps) continue;
      x[i] = v;
      if (i == 0) {
        const bool nonzero =
            std::any_of(x.begin(), x.end(), [](long long e) { return e != 0; });
        if (nonzero && quadratic_form(a, x) == norm) {
          found.push_back(x);
          if (limit && found.size() >= limit) return true;
        }
      } else if (search(i - 1, rem - used)) {
        return true;
      }
    }
    x[i] = 0;
    return false;
  };
  search(n - 1, static_cast<long double>(norm));
  return found;
}

DiagonalResult is_standard_diagonal(const IntMatrix& a) {
  require_symmetric(a);
  if (!positive_definite(a)) {
    throw Error(ErrorCode::kLatticeInput, "form is not positive definite");
  }
  if (determinant(a) != 1) {
    throw Error(ErrorCode::kLatticeInput, "form is not unimodular");
  }
  const std::size_t n = a.rows();
  SymIntMatrix s(a);
  for (std::size_t t = 0; t < n; ++t) {
    const IntMatrix rest = s.current().block(t, t, n - t, n - t);
    auto vs = vectors_of_norm(rest, 1);
    if (vs.empty()) {
      return {false, s.transform(), s.log(), t, rest};
    }
    // Sparsest vector, then lowest support, with a positive leading entry.
    auto key = [](const std::vector<long long>& x) {
      std::vector<long long> k{
          std::count_if(x.begin(), x.end(), [](long long e) { return e != 0; })};
      for (long long e : x) k.push_back(e == 0 ? 1 : (e > 0 ? 0 : 2));
      for (long long e : x) k.push_back(abs_ll(e));
      return k;
    };
    const auto best = *std::min_element(
        vs.begin(), vs.end(),
        [&](const auto& x, const auto& y) { return key(x) < key(y); });
    std::vector<long long> v(n, 0);
    std::copy(best.begin(), best.end(), v.begin() + static_cast<long>(t));

    while (true) {
      std::vector<std::size_t> nz;
      for (std::size_t j = t; j < n; ++j)
        if (v[j] != 0) nz.push_back(j);
      const std::size_t m = *std::min_element(
          nz.begin(), nz.end(), [&](std::size_t x, std::size_t y) {
            return abs_ll(v[x]) < abs_ll(v[y]);
          });
      if (nz.size() == 1) {
        s.swap(m, t);
        if (v[m] < 0) s.negate(t);
        break;
      }
      for (std::size_t j : nz) {
        if (j == m) continue;
        const long long f = v[j] / v[m];
        s.add(m, j, f);
        v[j] -= f * v[m];
      }
    }
    if (s.current().at(t, t) != 1) {
      throw std::logic_error("is_standard_diagonal: split vector lost norm 1");
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      const long long c = s.current().at(t, j);
      if (c != 0) s.add(j, t, -c);
    }
  }
  if (s.current() != IntMatrix::identity(n) || !s.replay_matches()) {
    throw std::logic_error("is_standard_diagonal: transform check failed");
  }
  return {true, s.transform(), s.log(), n, {}};
}

std::string to_string(SplitFailure f) {
  switch (f) {
    case SplitFailure::kNone: return "none";
    case SplitFailure::kNotUnimodular: return "not-unimodular";
    case SplitFailure::kNotPositiveDefinite: return "not-positive-definite";
    case SplitFailure::kNotDiagonalizable: return "not-diagonalizable";
  }
  return "none";
}

HandleSplitReport handle_split_report(const IntMatrix& q) {
  require_symmetric(q);
  const NullitySplit ns = nullity_split(q);
  HandleSplitReport r;
  r.n = q.rows();
  r.rank = ns.rank;
  r.nullity = ns.nullity;
  r.a = ns.a;
  r.transform = ns.transform;
  const std::string target = "diag(I_" + std::to_string(r.rank) + ", 0_" +
                             std::to_string(r.nullity) + ")";

  auto fail = [&](SplitFailure f, std::string witness) {
    r.failure = f;
    r.witness = std::move(witness);
    r.conclusion = "not congruent to " + target + ": " + to_string(f);
    return r;
  };

  if (r.rank > 0) {
    const long long det = determinant(ns.a);
    if (det != 1 && det != -1) {
      return fail(SplitFailure::kNotUnimodular,
                  "det A = " + std::to_string(det));
    }
    for (std::size_t k = 1; k <= r.rank; ++k) {
      const long long minor = determinant(ns.a.block(0, 0, k, k));
      if (minor <= 0) {
        return fail(SplitFailure::kNotPositiveDefinite,
                    "leading minor " + std::to_string(k) + " of A is " +
                        std::to_string(minor));
      }
    }
    const DiagonalResult d = is_standard_diagonal(ns.a);
    if (!d.standard) {
      return fail(SplitFailure::kNotDiagonalizable,
                  "after splitting off " + std::to_string(d.stage) +
                      " unit vectors, the remaining block " +
                      to_string(d.witness) + " has no vector of norm 1");
    }
    IntMatrix ext = IntMatrix::identity(r.n);
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t j = 0; j < r.rank; ++j) ext.at(i, j) = d.transform.at(i, j);
    r.transform = ns.transform * ext;
  }
  const long long det_t = determinant(r.transform);
  if ((det_t != 1 && det_t != -1) ||
      r.transform.transpose() * q * r.transform !=
          IntMatrix::standard(r.rank, r.nullity)) {
    throw std::logic_error("handle_split_report: transform check failed");
  }
  r.congruent = true;
  r.conclusion = "congruent to " + target;
  return r;
}

IntMatrix e8() {
  IntMatrix m(8, 8);
  for (std::size_t i = 0; i < 8; ++i) m.at(i, i) = 2;
  auto edge = [&m](std::size_t a, std::size_t b) { m.at(a, b) = m.at(b, a) = -1; };
  for (std::size_t i = 0; i + 1 < 7; ++i) edge(i, i + 1);
  edge(2, 7);
  return m;
}

Scrambled scramble(const IntMatrix& q, std::uint64_t seed, int moves,
                   long long max_entry) {
  SymIntMatrix s(q);
  const std::size_t n = q.rows();
  if (n == 0) return {q, IntMatrix{}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> factor(-2, 1);
  int accepted = 0;
  for (int attempt = 0; accepted < moves && attempt < 50 * moves; ++attempt) {
    Move m;
    const int k = kind(rng);
    if (k < 7 && n > 1) {
      m.kind = Move::Kind::kAdd;
      m.target = pick(rng);
      do m.source = pick(rng); while (m.source == m.target);
      const int f = factor(rng);
      m.factor = f >= 0 ? f + 1 : f;
    } else if (k < 9 && n > 1) {
      m.kind = Move::Kind::kSwap;
      m.target = pick(rng);
      m.source = pick(rng);
    } else {
      m.kind = Move::Kind::kNegate;
      m.target = m.source = pick(rng);
    }
    SymIntMatrix trial = s;
    trial.apply(m);
    if (trial.current().max_abs() <= max_entry &&
        trial.transform().max_abs() <= max_entry) {
      s = std::move(trial);
      ++accepted;
    }
  }
  return {s.current(), s.transform()};
}

SelfTestResult self_test(std::uint64_t seed, int cases, std::size_t max_n) {
  SelfTestResult out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const std::size_t n = 1 + rng() % max_n;
    const std::size_t k = rng() % (n + 1);
    const IntMatrix target = IntMatrix::standard(n - k, k);
    const std::uint64_t case_seed = rng();
    ++out.cases;
    try {
      const Scrambled sc = scramble(target, case_seed);
      const HandleSplitReport r = handle_split_report(sc.matrix);
      const long long det = determinant(r.transform);
      if (r.congruent && r.rank == n - k && r.nullity == k &&
          (det == 1 || det == -1) &&
          r.transform.transpose() * sc.matrix * r.transform == target) {
        ++out.recovered;
        continue;
      }
      out.failures.push_back("case " + std::to_string(i) + ": " + r.conclusion);
    } catch (const std::exception& e) {
      out.failures.push_back("case " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace conecalc::lattice
