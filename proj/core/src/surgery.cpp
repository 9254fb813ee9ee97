#include "conecalc/surgery.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace conecalc::surgery {

namespace {

void require_flip(const cfk::KnotComplex& c) {
  if (!c.flip) {
    throw Error(ErrorCode::kMissingFlip,
                c.name + ": no flip map; only V-derived values are available");
  }
}

f2u::Basis basis_of(const cfk::KnotComplex& c, const std::vector<int>& shifts) {
  f2u::Basis b;
  for (std::size_t i = 0; i < c.generators.size(); ++i) {
    b.push_back(c.generators[i].id,
                c.generators[i].maslov - 2 * shifts[i]);
  }
  return b;
}

// Exponent of the tower-to-tower entry of a map between homologies whose
// free parts have rank one.
int tower_exponent(const f2u::HomologyPresentation& src,
                   const f2u::HomologyPresentation& dst,
                   const f2u::MonomialMatrix& induced) {
  const auto& sg = src.generators();
  const auto& dg = dst.generators();
  if (sg.empty() || dg.empty() || sg[0].order != 0 || dg[0].order != 0 ||
      (sg.size() > 1 && sg[1].order == 0) ||
      (dg.size() > 1 && dg[1].order == 0)) {
    throw Error(ErrorCode::kTotalHomology, "expected a single tower");
  }
  if (!induced.test(0, 0)) {
    throw Error(ErrorCode::kTotalHomology,
                "map vanishes on the tower; complex is not a knot complex");
  }
  return induced.power(0, 0);
}

}  // namespace

Subcomplex build_As(const cfk::KnotComplex& c, int s) {
  std::vector<int> shifts;
  for (const auto& g : c.generators) shifts.push_back(std::max(0, g.alexander - s));
  auto d = cfk::shifted_differential(c, shifts);
  return {s, std::move(shifts), std::move(d)};
}

Subcomplex build_B(const cfk::KnotComplex& c) {
  std::vector<int> shifts(c.generators.size(), 0);
  auto d = cfk::shifted_differential(c, shifts);
  return {0, std::move(shifts), std::move(d)};
}

f2u::MonomialMatrix map_v(const cfk::KnotComplex& c, int s) {
  const Subcomplex a = build_As(c, s);
  const std::vector<int> zero(c.generators.size(), 0);
  f2u::MonomialMatrix m(basis_of(c, zero), basis_of(c, a.shifts), 0);
  for (std::size_t i = 0; i < c.generators.size(); ++i) {
    m.add_term(i, i, a.shifts[i]);
  }
  return m;
}

f2u::MonomialMatrix map_h(const cfk::KnotComplex& c, int s) {
  require_flip(c);
  const Subcomplex a = build_As(c, s);
  const std::vector<int> zero(c.generators.size(), 0);
  f2u::MonomialMatrix m(basis_of(c, zero), basis_of(c, a.shifts), -2 * s);
  for (const auto& t : *c.flip) {
    const std::size_t from = c.index_of(t.from);
    const int p = a.shifts[from] + s + t.upower;
    if (p < 0) {
      throw Error(ErrorCode::kInvalidFlip,
                  "flip term from " + t.from + " leaves C{i <= 0}");
    }
    m.add_term(c.index_of(t.to), from, p);
  }
  return m;
}

int compute_V(const cfk::KnotComplex& c, int s) {
  const auto a = f2u::homology(build_As(c, s).differential);
  const auto b = f2u::homology(build_B(c).differential);
  return tower_exponent(a, b, f2u::induced_map(map_v(c, s), a, b));
}

HValue compute_H(const cfk::KnotComplex& c, int s, bool force_direct) {
  if (!c.flip) {
    if (force_direct) require_flip(c);
    return {compute_V(c, -s), Mode::kTheorem};
  }
  const auto a = f2u::homology(build_As(c, s).differential);
  const auto b = f2u::homology(build_B(c).differential);
  return {tower_exponent(a, b, f2u::induced_map(map_h(c, s), a, b)),
          Mode::kDirect};
}

int d_one(const cfk::KnotComplex& c) { return -2 * compute_V(c, 0); }

VHTable vh_table(const cfk::KnotComplex& c, int s_min, int s_max,
                 bool force_direct) {
  if (s_min > s_max) {
    throw Error(ErrorCode::kInvalidArgument, "empty s-range");
  }
  VHTable table;
  table.knot = c.name;
  table.genus = cfk::genus(c);
  table.h_mode = c.flip ? Mode::kDirect : Mode::kTheorem;
  if (force_direct) require_flip(c);
  for (int s = s_min; s <= s_max; ++s) {
    table.rows.push_back({s, compute_V(c, s), compute_H(c, s).value});
  }
  table.d1 = d_one(c);
  return table;
}

VHTable vh_table(const cfk::KnotComplex& c) {
  const int b = std::max(cfk::genus(c), 1);
  return vh_table(c, -b, b);
}

int half_width(int genus, int n) { return std::max(genus, n / 2 + 1); }

int label_of(int n, int s) { return ((s % n) + n) % n; }

int column_shift(int n, int s) {
  const int r = label_of(n, s);
  return (s * (s - n) - r * (r - n)) / n;
}

Rational label_offset(int n, int label) {
  const long long e = 2LL * label - n;
  return Rational(e * e - n, 4LL * n);
}

const ConePiece* ConeComplex::find(ConePiece::Kind kind, int s) const {
  for (const auto& p : pieces) {
    if (p.kind == kind && p.s == s) return &p;
  }
  return nullptr;
}

std::pair<int, int> ConeComplex::a_range() const {
  return {1 - half_width, half_width - 1};
}

std::pair<int, int> ConeComplex::b_range() const {
  return {n - half_width + 1, half_width - 1};
}

f2u::Chain ConeComplex::include_B(int s, const f2u::Chain& in_b) const {
  const ConePiece* piece = find(ConePiece::Kind::kB, s);
  if (!piece) {
    throw Error(ErrorCode::kInvalidArgument,
                "B column " + std::to_string(s) + " is outside the window");
  }
  if (in_b.bits.size() != piece->size) {
    throw Error(ErrorCode::kInvalidArgument, "chain size mismatch");
  }
  f2u::Chain z =
      f2u::Chain::zero(differential.col_count(), in_b.grading + piece->shift);
  std::copy(in_b.bits.begin(), in_b.bits.end(),
            z.bits.begin() + static_cast<long>(piece->offset));
  return z;
}

ConeComplex build_cone(const cfk::KnotComplex& c, int n, int extra) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  if (extra < 0) throw Error(ErrorCode::kInvalidArgument, "extra must be >= 0");
  require_flip(c);

  ConeComplex cone;
  cone.n = n;
  cone.half_width = half_width(cfk::genus(c), n) + extra;
  const auto [a_lo, a_hi] = cone.a_range();
  const auto [b_lo, b_hi] = cone.b_range();
  const std::size_t size = c.generators.size();

  f2u::Basis basis;
  std::map<int, Subcomplex> a_pieces;
  for (int s = a_lo; s <= a_hi; ++s) {
    Subcomplex a = build_As(c, s);
    const int shift = column_shift(n, s);
    cone.pieces.push_back(
        {ConePiece::Kind::kA, s, basis.size(), size, shift});
    for (std::size_t i = 0; i < size; ++i) {
      basis.push_back("A" + std::to_string(s) + "." + c.generators[i].id,
                      a.differential.cols().gradings[i] + shift);
      cone.labels.push_back(label_of(n, s));
    }
    a_pieces.emplace(s, std::move(a));
  }
  const Subcomplex b = build_B(c);
  for (int s = b_lo; s <= b_hi; ++s) {
    const int shift = column_shift(n, s) - 1;
    cone.pieces.push_back(
        {ConePiece::Kind::kB, s, basis.size(), size, shift});
    for (std::size_t i = 0; i < size; ++i) {
      basis.push_back("B" + std::to_string(s) + "." + c.generators[i].id,
                      b.differential.cols().gradings[i] + shift);
      cone.labels.push_back(label_of(n, s));
    }
  }

  f2u::MonomialMatrix d(basis, basis, -1);
  auto copy_block = [&d](const f2u::MonomialMatrix& m, std::size_t row0,
                         std::size_t col0) {
    for (std::size_t i = 0; i < m.row_count(); ++i)
      for (std::size_t j = 0; j < m.col_count(); ++j)
        if (m.test(i, j)) d.add_term(row0 + i, col0 + j, m.power(i, j));
  };
  for (const auto& piece : cone.pieces) {
    if (piece.kind == ConePiece::Kind::kA) {
      copy_block(a_pieces.at(piece.s).differential, piece.offset,
                 piece.offset);
      if (const auto* target = cone.find(ConePiece::Kind::kB, piece.s)) {
        copy_block(map_v(c, piece.s), target->offset, piece.offset);
      }
      if (const auto* target = cone.find(ConePiece::Kind::kB, piece.s + n)) {
        copy_block(map_h(c, piece.s), target->offset, piece.offset);
      }
    } else {
      copy_block(b.differential, piece.offset, piece.offset);
    }
  }
  cone.differential = std::move(d);
  return cone;
}

int SurgeryHomology::total_free_rank() const {
  int rank = 0;
  for (const auto& l : labels) rank += l.module.free_rank();
  return rank;
}

SurgeryHomology homology_of(const ConeComplex& cone,
                            const f2u::HomologyPresentation& p,
                            std::string knot) {
  std::vector<std::vector<int>> free(cone.n);
  std::vector<std::vector<f2u::TorsionSummand>> torsion(cone.n);
  for (const auto& g : p.generators()) {
    const int label = cone.labels[g.position];
    if (g.order == 0) {
      free[label].push_back(g.grading);
    } else {
      torsion[label].push_back({g.grading, g.order});
    }
  }
  SurgeryHomology out;
  out.knot = std::move(knot);
  out.n = cone.n;
  for (int r = 0; r < cone.n; ++r) {
    out.labels.push_back(
        {r, label_offset(cone.n, r),
         f2u::GradedModule::canonical(std::move(free[r]),
                                      std::move(torsion[r]))});
  }
  return out;
}

SurgeryHomology cone_homology(const cfk::KnotComplex& c, int n, int extra) {
  const ConeComplex cone = build_cone(c, n, extra);
  return homology_of(cone, f2u::homology(cone.differential), c.name);
}

bool truncation_stability(const cfk::KnotComplex& c, int n, int extra) {
  return cone_homology(c, n, 0) == cone_homology(c, n, extra);
}

}  // namespace conecalc::surgery
