// Acceptance suite: one PASS/FAIL line per criterion.  With an argument k,
// runs criterion k only.  Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conecalc/cfk.hpp"
#include "conecalc/cobordism.hpp"
#include "conecalc/f2u.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/surgery.hpp"

using namespace conecalc;

namespace {

constexpr double kUnknotSeconds = 1.0;
constexpr double kLatticeSeconds = 30.0;
constexpr int kLatticeCases = 200;
constexpr std::size_t kLatticeMaxN = 8;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << what;
      else note << "; " << what;
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void unknot_suite(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = cfk::builtin("unknot");
  for (int s = 0; s <= 3; ++s)
    o.require(surgery::compute_V(c, s) == 0, "V_" + std::to_string(s) + " != 0");
  for (int s = -3; s <= 0; ++s)
    o.require(surgery::compute_H(c, s).value == 0, "H_" + std::to_string(s) + " != 0");
  o.require(surgery::d_one(c) == 0, "d1 != 0");
  for (int n : {1, 2, 3, 5}) {
    const int r = surgery::cone_homology(c, n).total_free_rank();
    o.require(r == n, "n=" + std::to_string(n) + " free rank " + std::to_string(r));
  }
  const double t = seconds_since(t0);
  o.require(t < kUnknotSeconds, "runtime " + std::to_string(t) + " s");
}

void rh_trefoil(Outcome& o) {
  const auto c = cfk::builtin("rh_trefoil");
  o.require(surgery::compute_V(c, 0) == 1, "V_0 != 1");
  o.require(surgery::compute_V(c, 1) == 0, "V_1 != 0");
  o.require(surgery::d_one(c) == -2, "d1 != -2");
  const int b = surgery::half_width(cfk::genus(c), 1);
  bool nonzero = false;
  for (int s = -b; s <= b; ++s) nonzero |= !cobordism::handle_map_class(c, 1, s).is_zero;
  o.require(nonzero, "handle_map_class is zero for every s in [-" + std::to_string(b) +
                         ", " + std::to_string(b) + "] at n=1");
}

void lh_trefoil(Outcome& o) {
  const auto c = cfk::builtin("lh_trefoil");
  o.require(surgery::d_one(c) == 0, "d1 != 0");
  for (int n : {1, 2, 3}) {
    const auto r = cobordism::vanishing_report(c, n);
    const std::string tag = "n=" + std::to_string(n);
    o.require(r.consistent, tag + " direct and theorem disagree");
    for (const auto& e : r.per_s)
      o.require(e.verdict == cobordism::Verdict::kZero,
                tag + " s=" + std::to_string(e.s) + " not zero");
    o.require(cobordism::obstruct_filling(c, n).verdict ==
                  cobordism::FillingVerdict::kObstructed,
              tag + " not OBSTRUCTED");
  }
}

void figure_eight(Outcome& o) {
  const auto c = cfk::builtin("figure_eight");
  o.require(surgery::compute_V(c, 0) == 0, "V_0 != 0");
  for (int n : {1, 2, 3}) {
    const int b = surgery::half_width(cfk::genus(c), n);
    for (int s = -b; s <= b; ++s)
      o.require(cobordism::handle_map_class(c, n, s).is_zero,
                "n=" + std::to_string(n) + " s=" + std::to_string(s) + " not a boundary");
  }
}

void equation_suite(Outcome& o) {
  int checks = 0;
  for (const auto& name : cfk::builtin_names()) {
    const auto c = cfk::builtin(name);
    const int g = cfk::genus(c);
    o.require(surgery::d_one(c) == -2 * surgery::compute_V(c, 0), name + " d1");
    for (int s = -g - 2; s <= g + 2; ++s) {
      const std::string tag = name + " s=" + std::to_string(s);
      o.require(surgery::compute_V(c, s + 1) <= surgery::compute_V(c, s), tag + " V not monotone");
      const auto h = surgery::compute_H(c, s, true);
      o.require(h.value == surgery::compute_V(c, -s), tag + " H_s != V_-s");
      checks += 2;
    }
  }
  o.note << (o.pass ? "" : "; ") << checks << " relations checked";
}

void truncation(Outcome& o) {
  for (const auto& name : cfk::builtin_names())
    for (int n : {1, 2})
      for (int extra = 1; extra <= 3; ++extra)
        o.require(surgery::truncation_stability(cfk::builtin(name), n, extra),
                  name + " n=" + std::to_string(n) + " +" + std::to_string(extra));
}

void grading_shifts(Outcome& o) {
  o.require(cobordism::grading_shift(1, 0) == Rational(-1), "(1,0)");
  o.require(cobordism::grading_shift(1, -1) == Rational(-1), "(1,-1)");
  o.require(cobordism::grading_shift(2, 0) == Rational(-3, 4), "(2,0)");
}

void lattice_suite(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto e8 = lattice::e8();
  o.require(lattice::vectors_of_norm(e8, 1).empty(), "E8 has a norm-1 vector");
  o.require(!lattice::is_standard_diagonal(e8).standard, "E8 accepted");

  std::mt19937_64 rng(0x5eed);
  int recovered = 0;
  for (int i = 0; i < kLatticeCases; ++i) {
    const std::size_t n = 1 + rng() % kLatticeMaxN;
    const std::size_t k = rng() % (n + 1);
    const auto target = lattice::IntMatrix::standard(n - k, k);
    const auto sc = lattice::scramble(target, rng());
    const std::string tag = "case " + std::to_string(i);

    const auto r = lattice::handle_split_report(sc.matrix);
    const long long det = lattice::determinant(r.transform);
    const bool ok = r.congruent && (det == 1 || det == -1) &&
                    r.transform.transpose() * sc.matrix * r.transform == target;
    o.require(ok, tag + " not recovered");
    recovered += ok;

    const auto split = lattice::nullity_split(sc.matrix);
    lattice::SymIntMatrix replay(sc.matrix);
    for (const auto& m : split.log) replay.apply(m);
    o.require(replay.current() == split.block && replay.transform() == split.transform,
              tag + " nullity replay differs");
    if (split.rank > 0) {
      const auto d = lattice::is_standard_diagonal(split.a);
      lattice::SymIntMatrix again(split.a);
      for (const auto& m : d.log) again.apply(m);
      o.require(again.transform() == d.transform &&
                    again.current() == lattice::IntMatrix::identity(split.rank),
                tag + " diagonal replay differs");
    }
  }
  const double t = seconds_since(t0);
  o.require(t < kLatticeSeconds, "runtime " + std::to_string(t) + " s");
  o.note << (o.pass ? "" : "; ") << recovered << "/" << kLatticeCases << " recovered";
}

// Every boundary question asked of the cone, answered by the SNF
// presentation and by the truncated solver at T and 2T.
void fallback_solver(Outcome& o) {
  int questions = 0;
  for (const auto& name : cfk::builtin_names()) {
    const auto c = cfk::builtin(name);
    const int g = cfk::genus(c);
    for (int n : {1, 2, 3}) {
      const int base = surgery::half_width(g, n);
      const int b = base + 1;
      const auto cone = surgery::build_cone(c, n, b - base + n);
      const auto& d = cone.differential;
      const auto p = f2u::homology(d);
      const int t = f2u::truncation_bound(d.max_power(), g, n);
      const f2u::TruncatedSolver at_t(d, t);
      const f2u::TruncatedSolver at_2t(d, 2 * t);
      const std::string tag = name + " n=" + std::to_string(n);

      auto ask = [&](const f2u::Chain& z, const std::string& what) {
        const bool snf = p.is_boundary(z);
        o.require(at_t.is_boundary(z) == snf && at_2t.is_boundary(z) == snf,
                  tag + " " + what);
        ++questions;
      };

      const auto hb = f2u::homology(surgery::build_B(c).differential);
      const auto tower = hb.representative(0);
      for (int s = -b; s <= b; ++s) {
        if (!cone.find(surgery::ConePiece::Kind::kB, s)) continue;
        ask(cone.include_B(s, tower), "B_" + std::to_string(s));
      }
      for (std::size_t i = 0; i < p.generators().size(); ++i) {
        const auto& gen = p.generators()[i];
        f2u::Chain z = p.representative(i);
        ask(z, "generator " + std::to_string(i));
        if (gen.order == 0) continue;
        z.grading -= 2 * (gen.order - 1);
        ask(z, "U^(order-1) generator " + std::to_string(i));
        z.grading -= 2;
        ask(z, "U^order generator " + std::to_string(i));
      }
    }
  }
  o.note << (o.pass ? "" : "; ") << questions << " membership queries";
}

struct Criterion {
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"unknot suite", unknot_suite},
      {"right-handed trefoil", rh_trefoil},
      {"left-handed trefoil", lh_trefoil},
      {"figure-eight", figure_eight},
      {"equation suite", equation_suite},
      {"truncation stability", truncation},
      {"grading shifts", grading_shifts},
      {"lattice suite", lattice_suite},
      {"fallback solver consistency", fallback_solver},
  };
  std::size_t only = 0;
  if (argc > 1) only = std::strtoul(argv[1], nullptr, 10);
  if (only > criteria.size()) {
    std::cerr << "no criterion " << argv[1] << "\n";
    return 2;
  }

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && only != i + 1) continue;
    Outcome o;
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all &= o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].title;
    const std::string note = o.note.str();
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << "\n";
  }
  return all ? 0 : 1;
}
