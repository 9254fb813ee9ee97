#include <gtest/gtest.h>

#include "conecalc/cfk.hpp"
#include "conecalc/cobordism.hpp"
#include "conecalc/surgery.hpp"
#include "oracle.hpp"

using namespace conecalc;
using cobordism::Verdict;

TEST(Cobordism, GradingShiftValues) {
  EXPECT_EQ(cobordism::grading_shift(1, 0), Rational(-1));
  EXPECT_EQ(cobordism::grading_shift(1, -1), Rational(-1));
  EXPECT_EQ(cobordism::grading_shift(2, 0), Rational(-3, 4));
  EXPECT_EQ(cobordism::grading_shift(3, 1), Rational(1, 1) * Rational(25 - 15, 12));
  // Symmetric under conjugation s -> -s - n.
  for (int n = 1; n <= 5; ++n)
    for (int s = -6; s <= 6; ++s)
      EXPECT_EQ(cobordism::grading_shift(n, s), cobordism::grading_shift(n, -s - n));
}

TEST(Cobordism, DegreeIsShiftOfColumnLabel) {
  for (const auto& name : cfk::builtin_names()) {
    const auto c = cfk::builtin(name);
    for (int n = 1; n <= 3; ++n) {
      for (int s = -2; s <= 2; ++s) {
        const auto h = cobordism::handle_map_class(c, n, s);
        const auto label = cobordism::column_label(n, s);
        EXPECT_EQ(h.degree, cobordism::grading_shift(label.n, label.s))
            << name << " n=" << n << " s=" << s;
        EXPECT_EQ(label.evaluation(), 2 * s - n);
      }
    }
  }
}

TEST(Cobordism, HandleMapMatchesOracleBoundaryTest) {
  for (const auto& name : cfk::builtin_names()) {
    const auto c = cfk::builtin(name);
    for (int n = 1; n <= 3; ++n) {
      for (int s = -2; s <= 2; ++s) {
        const auto h = cobordism::handle_map_class(c, n, s);
        const int extra = h.half_width - surgery::half_width(cfk::genus(c), n);
        const auto cone = surgery::build_cone(c, n, extra);
        const auto o = oracle::from_matrix(cone.differential);
        const auto v = oracle::to_slots(o, h.cycle);
        ASSERT_TRUE(oracle::is_cycle(o, h.cycle.grading, v));
        EXPECT_EQ(h.is_zero, oracle::is_boundary(o, h.cycle.grading, v))
            << name << " n=" << n << " s=" << s;
      }
    }
  }
}

TEST(Cobordism, RightHandedTrefoilMapsVanish) {
  // S^3_n of the right-handed trefoil is an L-space for n >= 1 and the
  // degree (c1^2 - 5)/4 is odd for n = 1, so the map has nowhere to land.
  const auto c = cfk::builtin("rh_trefoil");
  for (int s = -2; s <= 2; ++s) {
    EXPECT_TRUE(cobordism::handle_map_class(c, 1, s).is_zero) << s;
  }
}

TEST(Cobordism, TorusKnotMapsSurvive) {
  const auto c = cfk::builtin("t25");
  EXPECT_FALSE(cobordism::handle_map_class(c, 1, 0).is_zero);
  EXPECT_FALSE(cobordism::handle_map_class(c, 1, 1).is_zero);
}

TEST(Cobordism, VanishingReportConsistent) {
  for (const auto& name : cfk::builtin_names()) {
    const auto c = cfk::builtin(name);
    for (int n = 1; n <= 3; ++n) {
      const auto r = cobordism::vanishing_report(c, n);
      EXPECT_TRUE(r.consistent) << name << " n=" << n;
      EXPECT_EQ(r.d1, surgery::d_one(c));
      EXPECT_EQ(r.theorem_applies, r.d1 == 0);
      for (const auto& e : r.per_s) {
        if (e.mode != surgery::Mode::kTheorem) continue;
        EXPECT_EQ(e.verdict, r.theorem_applies ? Verdict::kZero : Verdict::kUndetermined);
      }
    }
  }
}

TEST(Cobordism, VanishingReportRange) {
  const auto r = cobordism::vanishing_report(cfk::builtin("figure_eight"), 2,
                                             std::pair{-4, 4});
  int direct = 0;
  for (const auto& e : r.per_s) direct += e.mode == surgery::Mode::kDirect;
  EXPECT_EQ(direct, 9);
  EXPECT_TRUE(r.all_direct_zero());
}

TEST(Cobordism, TheoremOnlyWithoutFlip) {
  auto c = cfk::builtin("lh_trefoil");
  c.flip.reset();
  const auto r = cobordism::vanishing_report(c, 1);
  for (const auto& e : r.per_s) EXPECT_EQ(e.mode, surgery::Mode::kTheorem);
  EXPECT_TRUE(r.theorem_applies);
}

TEST(Cobordism, ObstructionVerdicts) {
  using cobordism::FillingVerdict;
  EXPECT_EQ(cobordism::obstruct_filling(cfk::builtin("figure_eight"), 4).verdict,
            FillingVerdict::kObstructed);
  EXPECT_EQ(cobordism::obstruct_filling(cfk::builtin("lh_trefoil"), 1).verdict,
            FillingVerdict::kObstructed);
  EXPECT_EQ(cobordism::obstruct_filling(cfk::builtin("unknot"), 2).verdict,
            FillingVerdict::kObstructed);
  EXPECT_EQ(cobordism::obstruct_filling(cfk::builtin("rh_trefoil"), 1).verdict,
            FillingVerdict::kInconclusive);
  EXPECT_EQ(cobordism::obstruct_filling(cfk::builtin("t25"), 1).verdict,
            FillingVerdict::kInconclusive);
  const auto r = cobordism::obstruct_filling(cfk::builtin("figure_eight"), 4);
  EXPECT_FALSE(r.explanation.empty());
  EXPECT_EQ(r.evidence, cobordism::vanishing_report(cfk::builtin("figure_eight"), 4));
}
