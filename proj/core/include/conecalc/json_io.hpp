#pragma once

// JSON forms of every report.  from_json(to_json(x)) == x; fields derived from
// others (ok, total_free_rank) are written but ignored on input.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "conecalc/cfk.hpp"
#include "conecalc/cobordism.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/surgery.hpp"

namespace conecalc::json_io {

using nlohmann::json;

json to_json(const cfk::ValidationReport& r);
json to_json(const surgery::VHTable& t);
json to_json(const surgery::SurgeryHomology& h);
json to_json(const cobordism::VanishingReport& r);
json to_json(const cobordism::ObstructionReport& r);
json to_json(const lattice::HandleSplitReport& r);

// Throws kParse on a schema mismatch.
template <class T>
T from_json(const json& j);

template <class T>
T parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  return from_json<T>(j);
}

template <class T>
std::string render(const T& x) {
  return to_json(x).dump(2);
}

// Array of arrays of integers.  Throws kParse.
lattice::IntMatrix matrix_from_json(const json& j);
json matrix_to_json(const lattice::IntMatrix& m);

std::string to_string(surgery::Mode m);

}  // namespace conecalc::json_io
