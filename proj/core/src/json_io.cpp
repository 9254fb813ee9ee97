#include "conecalc/json_io.hpp"

#include <array>

#include "conecalc/rational.hpp"

namespace conecalc::json_io {

namespace {

constexpr std::array kCodes = {
    ErrorCode::kParse,          ErrorCode::kDifferentialSquare,
    ErrorCode::kGrading,        ErrorCode::kFiltration,
    ErrorCode::kAsymmetric,     ErrorCode::kTotalHomology,
    ErrorCode::kInvalidFlip,    ErrorCode::kMissingFlip,
    ErrorCode::kUnknownBuiltin, ErrorCode::kNotRealizable,
    ErrorCode::kNonHomogeneous, ErrorCode::kNotChainMap,
    ErrorCode::kNotCycle,       ErrorCode::kLatticeInput,
    ErrorCode::kArithmeticOverflow, ErrorCode::kInvalidArgument,
};

ErrorCode code_from(const std::string& s) {
  for (ErrorCode c : kCodes)
    if (conecalc::to_string(c) == s) return c;
  throw Error(ErrorCode::kParse, "unknown error code '" + s + "'");
}

surgery::Mode mode_from(const std::string& s) {
  if (s == "direct") return surgery::Mode::kDirect;
  if (s == "theorem") return surgery::Mode::kTheorem;
  throw Error(ErrorCode::kParse, "unknown mode '" + s + "'");
}

cobordism::Verdict verdict_from(const std::string& s) {
  for (auto v : {cobordism::Verdict::kZero, cobordism::Verdict::kNonzero,
                 cobordism::Verdict::kUndetermined})
    if (cobordism::to_string(v) == s) return v;
  throw Error(ErrorCode::kParse, "unknown verdict '" + s + "'");
}

cobordism::FillingVerdict filling_from(const std::string& s) {
  for (auto v : {cobordism::FillingVerdict::kObstructed,
                 cobordism::FillingVerdict::kInconclusive})
    if (cobordism::to_string(v) == s) return v;
  throw Error(ErrorCode::kParse, "unknown verdict '" + s + "'");
}

lattice::SplitFailure failure_from(const std::string& s) {
  for (auto f : {lattice::SplitFailure::kNone,
                 lattice::SplitFailure::kNotUnimodular,
                 lattice::SplitFailure::kNotPositiveDefinite,
                 lattice::SplitFailure::kNotDiagonalizable})
    if (lattice::to_string(f) == s) return f;
  throw Error(ErrorCode::kParse, "unknown failure '" + s + "'");
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

}  // namespace

std::string to_string(surgery::Mode m) {
  return m == surgery::Mode::kDirect ? "direct" : "theorem";
}

json matrix_to_json(const lattice::IntMatrix& m) { return m.to_rows(); }

lattice::IntMatrix matrix_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_array()) throw Error(ErrorCode::kParse, "matrix must be an array");
    std::vector<std::vector<long long>> rows;
    for (const auto& r : j) {
      if (!r.is_array()) throw Error(ErrorCode::kParse, "matrix row must be an array");
      std::vector<long long> row;
      for (const auto& e : r) {
        if (!e.is_number_integer()) {
          throw Error(ErrorCode::kParse, "matrix entries must be integers");
        }
        row.push_back(e.get<long long>());
      }
      rows.push_back(std::move(row));
    }
    try {
      return lattice::IntMatrix::from_rows(rows);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, e.what());
    }
  });
}

json to_json(const cfk::ValidationReport& r) {
  json issues = json::array();
  for (const auto& i : r.issues) {
    issues.push_back({{"code", conecalc::to_string(i.code)}, {"detail", i.detail}});
  }
  return {{"knot", r.name}, {"ok", r.ok()}, {"issues", issues}};
}

template <>
cfk::ValidationReport from_json(const json& j) {
  return guarded([&] {
    cfk::ValidationReport r;
    r.name = j.at("knot").get<std::string>();
    for (const auto& i : j.at("issues")) {
      r.issues.push_back({code_from(i.at("code").get<std::string>()),
                          i.at("detail").get<std::string>()});
    }
    return r;
  });
}

json to_json(const surgery::VHTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"s", r.s}, {"V", r.V}, {"H", r.H}});
  return {{"knot", t.knot}, {"genus", t.genus}, {"h_mode", to_string(t.h_mode)},
          {"d1", t.d1},     {"rows", rows}};
}

template <>
surgery::VHTable from_json(const json& j) {
  return guarded([&] {
    surgery::VHTable t;
    t.knot = j.at("knot").get<std::string>();
    t.genus = j.at("genus").get<int>();
    t.h_mode = mode_from(j.at("h_mode").get<std::string>());
    t.d1 = j.at("d1").get<int>();
    for (const auto& r : j.at("rows")) {
      t.rows.push_back({r.at("s").get<int>(), r.at("V").get<int>(),
                        r.at("H").get<int>()});
    }
    return t;
  });
}

json to_json(const surgery::SurgeryHomology& h) {
  json labels = json::array();
  for (const auto& l : h.labels) {
    json torsion = json::array();
    for (const auto& t : l.module.torsion) {
      torsion.push_back({{"grading", t.grading}, {"order", t.order}});
    }
    labels.push_back({{"label", l.label},
                      {"offset", conecalc::to_string(l.offset)},
                      {"free", l.module.free},
                      {"torsion", torsion}});
  }
  return {{"knot", h.knot},
          {"n", h.n},
          {"total_free_rank", h.total_free_rank()},
          {"labels", labels}};
}

template <>
surgery::SurgeryHomology from_json(const json& j) {
  return guarded([&] {
    surgery::SurgeryHomology h;
    h.knot = j.at("knot").get<std::string>();
    h.n = j.at("n").get<int>();
    for (const auto& l : j.at("labels")) {
      std::vector<f2u::TorsionSummand> torsion;
      for (const auto& t : l.at("torsion")) {
        torsion.push_back({t.at("grading").get<int>(), t.at("order").get<int>()});
      }
      h.labels.push_back(
          {l.at("label").get<int>(),
           parse_rational(l.at("offset").get<std::string>()),
           f2u::GradedModule::canonical(l.at("free").get<std::vector<int>>(),
                                        std::move(torsion))});
    }
    return h;
  });
}

json to_json(const cobordism::VanishingReport& r) {
  json per_s = json::array();
  for (const auto& e : r.per_s) {
    per_s.push_back({{"s", e.s},
                     {"verdict", cobordism::to_string(e.verdict)},
                     {"mode", to_string(e.mode)}});
  }
  return {{"knot", r.knot},
          {"n", r.n},
          {"d1", r.d1},
          {"theorem_applies", r.theorem_applies},
          {"consistent", r.consistent},
          {"per_s", per_s},
          {"conclusion", r.conclusion}};
}

template <>
cobordism::VanishingReport from_json(const json& j) {
  return guarded([&] {
    cobordism::VanishingReport r;
    r.knot = j.at("knot").get<std::string>();
    r.n = j.at("n").get<int>();
    r.d1 = j.at("d1").get<int>();
    r.theorem_applies = j.at("theorem_applies").get<bool>();
    r.consistent = j.at("consistent").get<bool>();
    for (const auto& e : j.at("per_s")) {
      r.per_s.push_back({e.at("s").get<int>(),
                         verdict_from(e.at("verdict").get<std::string>()),
                         mode_from(e.at("mode").get<std::string>())});
    }
    r.conclusion = j.at("conclusion").get<std::string>();
    return r;
  });
}

json to_json(const cobordism::ObstructionReport& r) {
  return {{"knot", r.knot},
          {"n", r.n},
          {"d1", r.d1},
          {"verdict", cobordism::to_string(r.verdict)},
          {"explanation", r.explanation},
          {"evidence", to_json(r.evidence)}};
}

template <>
cobordism::ObstructionReport from_json(const json& j) {
  return guarded([&] {
    cobordism::ObstructionReport r;
    r.knot = j.at("knot").get<std::string>();
    r.n = j.at("n").get<int>();
    r.d1 = j.at("d1").get<int>();
    r.verdict = filling_from(j.at("verdict").get<std::string>());
    r.explanation = j.at("explanation").get<std::vector<std::string>>();
    r.evidence = from_json<cobordism::VanishingReport>(j.at("evidence"));
    return r;
  });
}

json to_json(const lattice::HandleSplitReport& r) {
  return {{"n", r.n},
          {"rank", r.rank},
          {"nullity", r.nullity},
          {"verdict", r.congruent ? "congruent" : "not-congruent"},
          {"failure", lattice::to_string(r.failure)},
          {"a", matrix_to_json(r.a)},
          {"transform", matrix_to_json(r.transform)},
          {"witness", r.witness},
          {"conclusion", r.conclusion}};
}

template <>
lattice::HandleSplitReport from_json(const json& j) {
  return guarded([&] {
    lattice::HandleSplitReport r;
    r.n = j.at("n").get<std::size_t>();
    r.rank = j.at("rank").get<std::size_t>();
    r.nullity = j.at("nullity").get<std::size_t>();
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict != "congruent" && verdict != "not-congruent") {
      throw Error(ErrorCode::kParse, "unknown verdict '" + verdict + "'");
    }
    r.congruent = verdict == "congruent";
    r.failure = failure_from(j.at("failure").get<std::string>());
    r.a = matrix_from_json(j.at("a"));
    r.transform = matrix_from_json(j.at("transform"));
    r.witness = j.at("witness").get<std::string>();
    r.conclusion = j.at("conclusion").get<std::string>();
    return r;
  });
}

}  // namespace conecalc::json_io
