#include "conecalc/f2u.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include <boost/dynamic_bitset.hpp>

#include "conecalc/error.hpp"

namespace conecalc::f2u {

void Basis::push_back(std::string label, int grading) {
  labels.push_back(std::move(label));
  gradings.push_back(grading);
}

std::optional<int> implied_power(int to_grading, int from_grading,
                                 int degree) {
  const int diff = to_grading - from_grading - degree;
  if (diff < 0 || diff % 2 != 0) return std::nullopt;
  return diff / 2;
}

Chain Chain::zero(std::size_t size, int grading) {
  return Chain{grading, std::vector<std::uint8_t>(size, 0)};
}

Chain Chain::basis_vector(const Basis& basis, std::size_t index, int upower) {
  Chain c = zero(basis.size(), basis.gradings[index] - 2 * upower);
  c.bits[index] = 1;
  return c;
}

bool Chain::is_zero() const {
  return std::none_of(bits.begin(), bits.end(),
                      [](std::uint8_t b) { return b != 0; });
}

bool Chain::fits(const Basis& basis) const {
  if (bits.size() != basis.size()) return false;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] && !implied_power(basis.gradings[i], grading, 0)) return false;
  }
  return true;
}

Chain& Chain::operator+=(const Chain& other) {
  if (other.bits.size() != bits.size() ||
      (other.grading != grading && !other.is_zero() && !is_zero())) {
    throw Error(ErrorCode::kNonHomogeneous,
                "adding chains of different gradings");
  }
  if (is_zero()) grading = other.grading;
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] ^= other.bits[i];
  return *this;
}

MonomialMatrix::MonomialMatrix(Basis rows, Basis cols, int degree)
    : rows_(std::move(rows)),
      cols_(std::move(cols)),
      degree_(degree),
      bits_(rows_.size() * cols_.size(), 0) {}

MonomialMatrix MonomialMatrix::identity(const Basis& basis) {
  MonomialMatrix m(basis, basis, 0);
  for (std::size_t i = 0; i < basis.size(); ++i) m.flip(i, i);
  return m;
}

void MonomialMatrix::add_term(std::size_t row, std::size_t col, int upower) {
  if (row >= rows_.size() || col >= cols_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix term out of range");
  }
  const auto expected =
      implied_power(rows_.gradings[row], cols_.gradings[col], degree_);
  if (upower < 0 || !expected || *expected != upower) {
    throw Error(ErrorCode::kNonHomogeneous,
                "term " + cols_.labels[col] + " -> U^" +
                    std::to_string(upower) + " " + rows_.labels[row] +
                    " is not homogeneous of degree " +
                    std::to_string(degree_));
  }
  flip(row, col);
}

int MonomialMatrix::power(std::size_t row, std::size_t col) const {
  return (rows_.gradings[row] - cols_.gradings[col] - degree_) / 2;
}

bool MonomialMatrix::admissible(std::size_t row, std::size_t col) const {
  return implied_power(rows_.gradings[row], cols_.gradings[col], degree_)
      .has_value();
}

bool MonomialMatrix::is_zero() const {
  return std::none_of(bits_.begin(), bits_.end(),
                      [](std::uint8_t b) { return b != 0; });
}

int MonomialMatrix::max_power() const {
  int best = 0;
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t c = 0; c < cols_.size(); ++c)
      if (test(r, c)) best = std::max(best, power(r, c));
  return best;
}

MonomialMatrix MonomialMatrix::operator*(const MonomialMatrix& rhs) const {
  if (cols_.gradings != rhs.rows_.gradings) {
    throw Error(ErrorCode::kInvalidArgument,
                "composing maps with mismatched bases");
  }
  MonomialMatrix out(rows_, rhs.cols_, degree_ + rhs.degree_);
  const std::size_t inner = cols_.size();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t m = 0; m < inner; ++m) {
      if (!test(i, m)) continue;
      for (std::size_t j = 0; j < rhs.cols_.size(); ++j) {
        if (rhs.test(m, j)) out.flip(i, j);
      }
    }
  }
  return out;
}

MonomialMatrix MonomialMatrix::operator+(const MonomialMatrix& rhs) const {
  if (rows_.gradings != rhs.rows_.gradings ||
      cols_.gradings != rhs.cols_.gradings || degree_ != rhs.degree_) {
    throw Error(ErrorCode::kNonHomogeneous, "adding incompatible maps");
  }
  MonomialMatrix out = *this;
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] ^= rhs.bits_[k];
  return out;
}

Chain MonomialMatrix::apply(const Chain& x) const {
  if (x.bits.size() != cols_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "chain size mismatch");
  }
  Chain out = Chain::zero(rows_.size(), x.grading + degree_);
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (!x.bits[j]) continue;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (test(i, j)) out.bits[i] ^= 1;
    }
  }
  return out;
}

void MonomialMatrix::add_row(std::size_t dst, std::size_t src) {
  const auto k = implied_power(rows_.gradings[dst], rows_.gradings[src], 0);
  const std::size_t n = cols_.size();
  bool any = false;
  for (std::size_t c = 0; c < n; ++c) {
    if (bits_[src * n + c]) {
      bits_[dst * n + c] ^= 1;
      any = true;
    }
  }
  if (any && !k) throw std::logic_error("row operation with negative power");
}

void MonomialMatrix::add_col(std::size_t dst, std::size_t src) {
  const auto k = implied_power(cols_.gradings[src], cols_.gradings[dst], 0);
  const std::size_t n = cols_.size();
  bool any = false;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (bits_[r * n + src]) {
      bits_[r * n + dst] ^= 1;
      any = true;
    }
  }
  if (any && !k) throw std::logic_error("column operation with negative power");
}

namespace {

// Active entry with the smallest exponent; ties by labels, then positions.
std::optional<Pivot> find_pivot(const MonomialMatrix& m,
                                const std::vector<bool>& row_active,
                                const std::vector<bool>& col_active) {
  std::optional<Pivot> best;
  auto key = [&m](const Pivot& p) {
    return std::tie(p.power, m.rows().labels[p.row], m.cols().labels[p.col],
                    p.row, p.col);
  };
  for (std::size_t r = 0; r < m.row_count(); ++r) {
    if (!row_active[r]) continue;
    for (std::size_t c = 0; c < m.col_count(); ++c) {
      if (!col_active[c] || !m.test(r, c)) continue;
      Pivot cand{r, c, m.power(r, c)};
      if (!best || key(cand) < key(*best)) best = cand;
    }
  }
  return best;
}

}  // namespace

std::vector<int> SmithForm::exponents() const {
  std::vector<int> out;
  out.reserve(pivots.size());
  for (const auto& p : pivots) out.push_back(p.power);
  return out;
}

SmithForm snf_monomial(const MonomialMatrix& m) {
  SmithForm form{MonomialMatrix::identity(m.rows()),
                 MonomialMatrix::identity(m.cols()), m, {}};
  MonomialMatrix& work = form.diagonal;
  std::vector<bool> row_active(m.row_count(), true);
  std::vector<bool> col_active(m.col_count(), true);

  while (auto pivot = find_pivot(work, row_active, col_active)) {
    const std::size_t r = pivot->row;
    const std::size_t c = pivot->col;
    for (std::size_t j = 0; j < work.col_count(); ++j) {
      if (j == c || !work.test(r, j)) continue;
      work.add_col(j, c);
      form.col_transform.add_col(j, c);
    }
    for (std::size_t i = 0; i < work.row_count(); ++i) {
      if (i == r || !work.test(i, c)) continue;
      work.add_row(i, r);
      form.row_transform.add_row(i, r);
    }
    row_active[r] = false;
    col_active[c] = false;
    form.pivots.push_back(*pivot);
  }
  return form;
}

GradedModule GradedModule::canonical(std::vector<int> free,
                                     std::vector<TorsionSummand> torsion) {
  for (const auto& t : torsion) {
    if (t.order < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "torsion order must be positive");
    }
  }
  std::sort(free.begin(), free.end());
  std::sort(torsion.begin(), torsion.end());
  return GradedModule{std::move(free), std::move(torsion)};
}

int GradedModule::f2_dimension(int grading) const {
  int dim = 0;
  for (int top : free) {
    if (grading <= top && (top - grading) % 2 == 0) ++dim;
  }
  for (const auto& t : torsion) {
    if (grading <= t.grading && (t.grading - grading) % 2 == 0 &&
        (t.grading - grading) / 2 < t.order) {
      ++dim;
    }
  }
  return dim;
}

HomologyPresentation::HomologyPresentation(const MonomialMatrix& d)
    : differential_(d),
      change_(MonomialMatrix::identity(d.cols())),
      inverse_(MonomialMatrix::identity(d.cols())),
      reduced_(d),
      role_(d.cols().size(), -1) {}

HomologyPresentation homology(const MonomialMatrix& d) {
  if (d.rows().gradings != d.cols().gradings || d.degree() != -1) {
    throw Error(ErrorCode::kInvalidArgument,
                "differential must be a square map of degree -1");
  }
  if (!(d * d).is_zero()) {
    throw Error(ErrorCode::kDifferentialSquare, "d o d != 0");
  }

  HomologyPresentation p(d);
  const std::size_t n = d.col_count();
  std::vector<bool> active(n, true);

  // Base change e_dst -> e_dst + U^k e_src on the complex.
  auto rebase = [&p](std::size_t dst, std::size_t src) {
    p.reduced_.add_col(dst, src);
    p.reduced_.add_row(src, dst);
    p.change_.add_col(dst, src);
    p.inverse_.add_row(src, dst);
  };

  while (auto pivot = find_pivot(p.reduced_, active, active)) {
    const std::size_t target = pivot->row;
    const std::size_t source = pivot->col;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != source && active[j] && p.reduced_.test(target, j)) {
        rebase(j, source);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i != target && active[i] && p.reduced_.test(i, source)) {
        rebase(target, i);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (p.reduced_.test(k, target) || p.reduced_.test(source, k) ||
          (k != target && p.reduced_.test(k, source)) ||
          (k != source && p.reduced_.test(target, k))) {
        throw std::logic_error("pair did not split off");
      }
    }
    active[target] = false;
    active[source] = false;
    p.role_[source] = 0;
    p.role_[target] = pivot->power + 1;
    p.pairs_.push_back(*pivot);
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (p.role_[k] == -1) {
      p.generators_.push_back({k, d.cols().gradings[k], 0});
    } else if (p.role_[k] > 1) {
      p.generators_.push_back({k, d.cols().gradings[k], p.role_[k] - 1});
    }
  }
  std::stable_sort(p.generators_.begin(), p.generators_.end(),
                   [](const auto& a, const auto& b) {
                     const bool fa = a.order == 0;
                     const bool fb = b.order == 0;
                     if (fa != fb) return fa;
                     return std::tie(a.grading, a.order) <
                            std::tie(b.grading, b.order);
                   });
  for (const auto& g : p.generators_) {
    p.generator_basis_.push_back(d.cols().labels[g.position], g.grading);
  }
  return p;
}

GradedModule HomologyPresentation::module() const {
  std::vector<int> free;
  std::vector<TorsionSummand> torsion;
  for (const auto& g : generators_) {
    if (g.order == 0) {
      free.push_back(g.grading);
    } else {
      torsion.push_back({g.grading, g.order});
    }
  }
  return GradedModule::canonical(std::move(free), std::move(torsion));
}

Chain HomologyPresentation::representative(std::size_t generator) const {
  const auto& g = generators_.at(generator);
  Chain c = Chain::zero(change_.row_count(), g.grading);
  for (std::size_t i = 0; i < change_.row_count(); ++i) {
    c.bits[i] = change_.test(i, g.position) ? 1 : 0;
  }
  return c;
}

bool HomologyPresentation::is_cycle(const Chain& x) const {
  return differential_.apply(x).is_zero();
}

bool HomologyPresentation::is_boundary(const Chain& cycle) const {
  const Chain y = inverse_.apply(cycle);
  const auto& g = differential_.cols().gradings;
  for (std::size_t k = 0; k < y.bits.size(); ++k) {
    if (!y.bits[k]) continue;
    if (role_[k] <= 0) return false;
    const int order = role_[k] - 1;
    const int exponent = (g[k] - y.grading) / 2;
    if (exponent < order) return false;
  }
  return true;
}

Chain HomologyPresentation::homology_class(const Chain& cycle) const {
  const Chain y = inverse_.apply(cycle);
  Chain out = Chain::zero(generators_.size(), cycle.grading);
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    const auto& g = generators_[k];
    if (!y.bits[g.position]) continue;
    const int exponent = (g.grading - cycle.grading) / 2;
    if (g.order == 0 || exponent < g.order) out.bits[k] = 1;
  }
  return out;
}

MonomialMatrix HomologyPresentation::reduce(
    const MonomialMatrix& into_homology) const {
  if (into_homology.rows().gradings != generator_basis_.gradings) {
    throw Error(ErrorCode::kInvalidArgument,
                "map does not land in this homology");
  }
  MonomialMatrix out = into_homology;
  for (std::size_t r = 0; r < generators_.size(); ++r) {
    const int order = generators_[r].order;
    if (order == 0) continue;
    for (std::size_t c = 0; c < out.col_count(); ++c) {
      if (out.test(r, c) && out.power(r, c) >= order) out.flip(r, c);
    }
  }
  return out;
}

MonomialMatrix induced_map(const MonomialMatrix& f,
                           const HomologyPresentation& src,
                           const HomologyPresentation& dst) {
  const auto& d_src = src.differential();
  const auto& d_dst = dst.differential();
  if (f.cols().gradings != d_src.cols().gradings ||
      f.rows().gradings != d_dst.rows().gradings) {
    throw Error(ErrorCode::kInvalidArgument,
                "map bases do not match the complexes");
  }
  const MonomialMatrix lhs = f * d_src;
  const MonomialMatrix rhs = d_dst * f;
  for (std::size_t i = 0; i < lhs.row_count(); ++i)
    for (std::size_t j = 0; j < lhs.col_count(); ++j)
      if (lhs.test(i, j) != rhs.test(i, j)) {
        throw Error(ErrorCode::kNotChainMap, "f o d != d o f");
      }

  MonomialMatrix out(dst.generator_basis(), src.generator_basis(), f.degree());
  for (std::size_t g = 0; g < src.generators().size(); ++g) {
    const Chain image = f.apply(src.representative(g));
    const Chain cls = dst.homology_class(image);
    for (std::size_t r = 0; r < cls.bits.size(); ++r) {
      if (cls.bits[r]) out.flip(r, g);
    }
  }
  return out;
}

bool class_is_zero(const HomologyPresentation& p, const Chain& z) {
  if (!z.fits(p.differential().cols())) {
    throw Error(ErrorCode::kNonHomogeneous, "chain does not fit the basis");
  }
  if (!p.is_cycle(z)) throw Error(ErrorCode::kNotCycle, "not a cycle");
  return p.is_boundary(z);
}

int truncation_bound(int max_power, int genus, int n) {
  if (const char* env = std::getenv("CONECALC_TRUNC_T")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 &&
        v < std::numeric_limits<int>::max() / 4) {
      return static_cast<int>(v);
    }
  }
  return 2 * (max_power + genus + std::abs(n) + 1);
}

TruncatedSolver::TruncatedSolver(const MonomialMatrix& d, int bound)
    : d_(d), bound_(bound) {
  if (bound < 1) throw Error(ErrorCode::kInvalidArgument, "bound must be > 0");
}

std::vector<TruncatedSolver::Slot> TruncatedSolver::piece(int grading) const {
  std::vector<Slot> slots;
  const auto& g = d_.cols().gradings;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto k = implied_power(g[i], grading, 0);
    if (k && *k < bound_) slots.push_back({i, *k});
  }
  return slots;
}

namespace {

using Bits = boost::dynamic_bitset<>;

// Incremental row echelon basis over F2.
class EchelonSpan {
 public:
  explicit EchelonSpan(std::size_t width) : width_(width) {}

  Bits reduce(Bits v) const {
    for (const auto& [lead, row] : rows_) {
      if (v.test(lead)) v ^= row;
    }
    return v;
  }

  bool insert(const Bits& v) {
    Bits r = reduce(v);
    const auto lead = r.find_first();
    if (lead == Bits::npos) return false;
    for (auto& [l, row] : rows_) {
      if (row.test(lead)) row ^= r;
    }
    rows_.emplace_back(lead, std::move(r));
    return true;
  }

  bool contains(const Bits& v) const { return reduce(v).none(); }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t width_;
  std::vector<std::pair<std::size_t, Bits>> rows_;
};

}  // namespace

bool TruncatedSolver::is_boundary(const Chain& z) const {
  const auto target = piece(z.grading);
  const auto source = piece(z.grading + 1);
  std::vector<long> slot_of(d_.col_count() * 1, -1);
  for (std::size_t s = 0; s < target.size(); ++s) {
    slot_of[target[s].index] = static_cast<long>(s);
  }

  EchelonSpan span(target.size());
  for (const auto& src : source) {
    Bits image(target.size());
    for (std::size_t i = 0; i < d_.row_count(); ++i) {
      if (!d_.test(i, src.index)) continue;
      const int k = src.upower + d_.power(i, src.index);
      if (k < bound_ && slot_of[i] >= 0) image.flip(slot_of[i]);
    }
    span.insert(image);
  }

  Bits v(target.size());
  for (std::size_t i = 0; i < z.bits.size(); ++i) {
    if (z.bits[i] && slot_of[i] >= 0) v.flip(slot_of[i]);
  }
  return span.contains(v);
}

int TruncatedSolver::homology_dimension(int grading) const {
  auto rank_of = [this](int from_grading) {
    const auto source = piece(from_grading);
    const auto target = piece(from_grading - 1);
    std::vector<long> slot_of(d_.col_count(), -1);
    for (std::size_t s = 0; s < target.size(); ++s) {
      slot_of[target[s].index] = static_cast<long>(s);
    }
    EchelonSpan span(target.size());
    for (const auto& src : source) {
      Bits image(target.size());
      for (std::size_t i = 0; i < d_.row_count(); ++i) {
        if (!d_.test(i, src.index)) continue;
        const int k = src.upower + d_.power(i, src.index);
        if (k < bound_ && slot_of[i] >= 0) image.flip(slot_of[i]);
      }
      span.insert(image);
    }
    return static_cast<int>(span.rank());
  };
  const int dim = static_cast<int>(piece(grading).size());
  return dim - rank_of(grading) - rank_of(grading + 1);
}

bool truncated_is_boundary(const MonomialMatrix& d, const Chain& z,
                           int bound) {
  const bool coarse = TruncatedSolver(d, bound).is_boundary(z);
  const bool fine = TruncatedSolver(d, 2 * bound).is_boundary(z);
  if (coarse != fine) {
    throw std::logic_error("truncated solver unstable under doubling T");
  }
  return coarse;
}

}  // namespace conecalc::f2u
