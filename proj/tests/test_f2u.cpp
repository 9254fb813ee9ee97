#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "conecalc/cfk.hpp"
#include "conecalc/error.hpp"
#include "conecalc/f2u.hpp"
#include "conecalc/surgery.hpp"
#include "oracle.hpp"

using namespace conecalc;
using f2u::Basis;
using f2u::MonomialMatrix;

namespace {

Basis basis(std::initializer_list<int> gradings) {
  Basis b;
  int i = 0;
  for (int g : gradings) b.push_back("e" + std::to_string(i++), g);
  return b;
}

// Single arrows x -> U^k y plus free generators, conjugated by random
// degree-0 basis changes.
MonomialMatrix random_complex(std::mt19937& rng, int pairs, int free) {
  Basis b;
  std::vector<std::pair<int, int>> arrows;
  std::uniform_int_distribution<int> grading(-6, 6);
  std::uniform_int_distribution<int> order(0, 3);
  for (int p = 0; p < pairs; ++p) {
    const int g = 2 * grading(rng) + 1;
    const int k = order(rng);
    b.push_back("x" + std::to_string(p), g);
    b.push_back("y" + std::to_string(p), g - 1 + 2 * k);
    arrows.push_back({2 * p, k});
  }
  for (int f = 0; f < free; ++f) b.push_back("z" + std::to_string(f), 2 * grading(rng));
  MonomialMatrix d(b, b, -1);
  for (auto [x, k] : arrows) d.add_term(x + 1, x, k);

  // Conjugate by E = I + U^k E_ij (an involution over F2).
  std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
  for (int step = 0; step < 30; ++step) {
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    const int gap = b.gradings[i] - b.gradings[j];
    if (i == j || gap < 0 || gap % 2 != 0) continue;
    d.add_row(i, j);
    d.add_col(j, i);
  }
  return d;
}

}  // namespace

TEST(F2U, ImpliedPower) {
  EXPECT_EQ(f2u::implied_power(0, 1, -1), 0);
  EXPECT_EQ(f2u::implied_power(0, -1, -1), 1);
  EXPECT_EQ(f2u::implied_power(2, -1, -1), 2);
  EXPECT_EQ(f2u::implied_power(2, 0, 0), 1);
  EXPECT_EQ(f2u::implied_power(1, 0, 0), std::nullopt);
  EXPECT_EQ(f2u::implied_power(0, 2, 0), std::nullopt);
}

TEST(F2U, RejectsNonHomogeneousTerm) {
  MonomialMatrix d(basis({0, -1}), basis({0, -1}), -1);
  EXPECT_NO_THROW(d.add_term(1, 0, 0));
  try {
    d.add_term(0, 1, 0);
    FAIL() << "expected kNonHomogeneous";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonHomogeneous);
  }
}

TEST(F2U, CompositionMultipliesMonomials) {
  MonomialMatrix f(basis({4}), basis({3}), -1);
  f.add_term(0, 0, 1);
  MonomialMatrix g(basis({3}), basis({4}), -3);
  g.add_term(0, 0, 1);
  const MonomialMatrix h = f * g;
  EXPECT_EQ(h.degree(), -4);
  ASSERT_TRUE(h.test(0, 0));
  EXPECT_EQ(h.power(0, 0), 2);
}

TEST(F2U, SmithFormReplay) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const MonomialMatrix d = random_complex(rng, 4, 2);
    const f2u::SmithForm f = f2u::snf_monomial(d);
    EXPECT_EQ(f.row_transform * d * f.col_transform, f.diagonal);
    for (std::size_t i = 0; i < d.row_count(); ++i) {
      int in_row = 0;
      for (std::size_t j = 0; j < d.col_count(); ++j) in_row += f.diagonal.test(i, j);
      EXPECT_LE(in_row, 1);
    }
    for (const auto& p : f.pivots) {
      ASSERT_TRUE(f.diagonal.test(p.row, p.col));
      EXPECT_EQ(f.diagonal.power(p.row, p.col), p.power);
    }
  }
}

TEST(F2U, HomologyMatchesGradedPieceOracle) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const MonomialMatrix d = random_complex(rng, 3 + trial % 3, trial % 3);
    ASSERT_TRUE((d * d).is_zero());
    const auto h = f2u::homology(d);
    const auto module = h.module();
    const oracle::Complex c = oracle::from_matrix(d);
    for (int g = -20; g <= 20; ++g) {
      EXPECT_EQ(module.f2_dimension(g), oracle::homology_dim(c, g))
          << "trial " << trial << " grading " << g;
    }
  }
}

TEST(F2U, ChangeOfBasisIsInverse) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const MonomialMatrix d = random_complex(rng, 4, 1);
    const auto h = f2u::homology(d);
    EXPECT_EQ(h.inverse_change() * h.change_of_basis(),
              MonomialMatrix::identity(d.cols()));
    EXPECT_EQ(h.inverse_change() * d * h.change_of_basis(), h.reduced());
  }
}

TEST(F2U, RepresentativesAreCyclesAndNotBoundaries) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const MonomialMatrix d = random_complex(rng, 3, 2);
    const auto h = f2u::homology(d);
    const oracle::Complex c = oracle::from_matrix(d);
    for (std::size_t g = 0; g < h.generators().size(); ++g) {
      const f2u::Chain z = h.representative(g);
      EXPECT_TRUE(h.is_cycle(z));
      EXPECT_FALSE(h.is_boundary(z));
      EXPECT_FALSE(oracle::is_boundary(c, z.grading, oracle::to_slots(c, z)));
    }
  }
}

TEST(F2U, BoundaryTestAgreesWithOracle) {
  std::mt19937 rng(3);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 30; ++trial) {
    const MonomialMatrix d = random_complex(rng, 3, 1);
    const auto h = f2u::homology(d);
    const oracle::Complex c = oracle::from_matrix(d);
    for (int g = -8; g <= 8; ++g) {
      // Random cycles in grading g: sums of d of random chains plus
      // random multiples of generators.
      f2u::Chain z = f2u::Chain::zero(d.col_count(), g);
      for (std::size_t i = 0; i < d.col_count(); ++i) {
        if (d.cols().gradings[i] >= g + 1 &&
            (d.cols().gradings[i] - g - 1) % 2 == 0 && coin(rng)) {
          const int k = (d.cols().gradings[i] - g - 1) / 2;
          z += d.apply(f2u::Chain::basis_vector(d.cols(), i, k));
        }
      }
      for (std::size_t gen = 0; gen < h.generators().size(); ++gen) {
        const auto rep = h.representative(gen);
        if (rep.grading >= g && (rep.grading - g) % 2 == 0 && coin(rng)) {
          f2u::Chain shifted = rep;
          shifted.grading = g;
          z += shifted;
        }
      }
      ASSERT_TRUE(h.is_cycle(z));
      EXPECT_EQ(h.is_boundary(z),
                oracle::is_boundary(c, g, oracle::to_slots(c, z)));
      EXPECT_EQ(h.is_boundary(z),
                f2u::truncated_is_boundary(d, z, f2u::truncation_bound(d.max_power(), 4, 1)));
    }
  }
}

TEST(F2U, RejectsNonDifferential) {
  MonomialMatrix d(basis({1, 0, -1}), basis({1, 0, -1}), -1);
  d.add_term(1, 0, 0);
  d.add_term(2, 1, 0);
  try {
    f2u::homology(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDifferentialSquare);
  }
}

TEST(F2U, ClassIsZeroRejectsNonCycle) {
  MonomialMatrix d(basis({1, 0}), basis({1, 0}), -1);
  d.add_term(1, 0, 0);
  const auto h = f2u::homology(d);
  try {
    f2u::class_is_zero(h, f2u::Chain::basis_vector(d.cols(), 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCycle);
  }
  EXPECT_TRUE(f2u::class_is_zero(h, f2u::Chain::basis_vector(d.cols(), 1)));
}

TEST(F2U, TorsionOrdersFromSingleArrow) {
  // x -> U^2 y: F[U] / U^2 generated by y.
  MonomialMatrix d(basis({0, 3}), basis({0, 3}), -1);
  d.add_term(1, 0, 2);
  const auto module = f2u::homology(d).module();
  EXPECT_EQ(module.free_rank(), 0);
  ASSERT_EQ(module.torsion.size(), 1u);
  EXPECT_EQ(module.torsion[0].grading, 3);
  EXPECT_EQ(module.torsion[0].order, 2);
}

TEST(F2U, InducedMapOfCompositionIsComposition) {
  // A_s -> A_{s+1} -> B composes to v_s.
  for (const auto& name : cfk::builtin_names()) {
    const auto c = cfk::builtin(name);
    const int g = cfk::genus(c);
    for (int s = -g - 1; s <= g; ++s) {
      const auto a0 = surgery::build_As(c, s);
      const auto a1 = surgery::build_As(c, s + 1);
      MonomialMatrix incl(a1.differential.cols(), a0.differential.cols(), 0);
      for (std::size_t i = 0; i < c.generators.size(); ++i) {
        incl.add_term(i, i, a0.shifts[i] - a1.shifts[i]);
      }
      const auto h0 = f2u::homology(a0.differential);
      const auto h1 = f2u::homology(a1.differential);
      const auto hb = f2u::homology(surgery::build_B(c).differential);
      const auto v0 = f2u::induced_map(surgery::map_v(c, s), h0, hb);
      const auto v1 = f2u::induced_map(surgery::map_v(c, s + 1), h1, hb);
      const auto i01 = f2u::induced_map(incl, h0, h1);
      EXPECT_EQ(hb.reduce(v1 * i01), v0) << name << " s=" << s;
    }
  }
}

TEST(F2U, InducedMapRejectsNonChainMap) {
  MonomialMatrix d(basis({1, 0}), basis({1, 0}), -1);
  d.add_term(1, 0, 0);
  MonomialMatrix z(basis({0}), basis({0}), -1);
  const auto src = f2u::homology(d);
  const auto dst = f2u::homology(z);
  // f(y) = e, f(x) = 0: f d(x) = e but d f(x) = 0.
  MonomialMatrix f(z.cols(), d.cols(), 0);
  f.add_term(0, 1, 0);
  try {
    f2u::induced_map(f, src, dst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotChainMap);
  }
}

TEST(F2U, TruncatedSolverDimensionsNearTop) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const MonomialMatrix d = random_complex(rng, 3, 1);
    const auto module = f2u::homology(d).module();
    const f2u::TruncatedSolver solver(d, 40);
    for (int g = -10; g <= 14; ++g) {
      EXPECT_EQ(solver.homology_dimension(g), module.f2_dimension(g));
    }
  }
}

TEST(F2U, TruncationBoundHonorsEnvironment) {
  const int base = f2u::truncation_bound(3, 1, 2);
  EXPECT_EQ(base, 2 * (3 + 1 + 2 + 1));
  ::setenv("CONECALC_TRUNC_T", "77", 1);
  EXPECT_EQ(f2u::truncation_bound(3, 1, 2), 77);
  ::setenv("CONECALC_TRUNC_T", "junk", 1);
  EXPECT_EQ(f2u::truncation_bound(3, 1, 2), base);
  ::unsetenv("CONECALC_TRUNC_T");
}
