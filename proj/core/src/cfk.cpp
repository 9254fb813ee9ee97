#include "conecalc/cfk.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <utility>

#include <nlohmann/json.hpp>

namespace conecalc::cfk {

using nlohmann::json;

std::size_t KnotComplex::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].id == id) return i;
  }
  throw Error(ErrorCode::kParse,
              "unknown generator '" + std::string(id) + "'");
}

namespace {

std::vector<Term> read_terms(const json& arr, const char* field) {
  if (!arr.is_array()) {
    throw Error(ErrorCode::kParse, std::string(field) + " must be an array");
  }
  std::vector<Term> terms;
  for (const auto& t : arr) {
    if (!t.is_object() || !t.contains("from") || !t.contains("to") ||
        !t.contains("upower") || !t["from"].is_string() ||
        !t["to"].is_string() || !t["upower"].is_number_integer()) {
      throw Error(ErrorCode::kParse,
                  std::string("malformed term in ") + field);
    }
    terms.push_back({t["from"].get<std::string>(), t["to"].get<std::string>(),
                     t["upower"].get<int>()});
  }
  return terms;
}

json write_terms(const std::vector<Term>& terms) {
  json arr = json::array();
  for (const auto& t : terms) {
    arr.push_back({{"from", t.from}, {"to", t.to}, {"upower", t.upower}});
  }
  return arr;
}

// Terms reduced mod 2: (from, to, power) -> parity.
using TermCount = std::map<std::tuple<std::size_t, std::size_t, int>, int>;

TermCount compose(const TermCount& first, const TermCount& second) {
  TermCount out;
  for (const auto& [a, pa] : first) {
    if (!(pa & 1)) continue;
    for (const auto& [b, pb] : second) {
      if (!(pb & 1) || std::get<0>(b) != std::get<1>(a)) continue;
      out[{std::get<0>(a), std::get<1>(b), std::get<2>(a) + std::get<2>(b)}] ^=
          1;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

TermCount count_terms(const KnotComplex& c, const std::vector<Term>& terms) {
  TermCount out;
  for (const auto& t : terms) {
    out[{c.index_of(t.from), c.index_of(t.to), t.upower}] ^= 1;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::string describe(const Term& t) {
  return t.from + " -> U^" + std::to_string(t.upower) + " " + t.to;
}

bool known_ids(const KnotComplex& c, const std::vector<Term>& terms,
               std::vector<Issue>& issues, ErrorCode code) {
  std::set<std::string> ids;
  for (const auto& g : c.generators) ids.insert(g.id);
  bool ok = true;
  for (const auto& t : terms) {
    if (!ids.count(t.from) || !ids.count(t.to)) {
      issues.push_back({code, "term " + describe(t) +
                                  " refers to an unknown generator"});
      ok = false;
    }
  }
  return ok;
}

f2u::MonomialMatrix flip_restriction(const KnotComplex& c,
                                     const std::vector<Term>& flip) {
  // C{j <= 0} with basis U^A(x) x  ->  C{i <= 0} with basis x.
  f2u::Basis src;
  f2u::Basis dst;
  for (const auto& g : c.generators) {
    src.push_back(g.id, g.maslov - 2 * g.alexander);
    dst.push_back(g.id, g.maslov);
  }
  f2u::MonomialMatrix m(dst, src, 0);
  for (const auto& t : flip) {
    const std::size_t from = c.index_of(t.from);
    m.add_term(c.index_of(t.to), from,
               t.upower + c.generators[from].alexander);
  }
  return m;
}

}  // namespace

KnotComplex parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  if (!doc.is_object() || !doc.contains("generators") ||
      !doc["generators"].is_array()) {
    throw Error(ErrorCode::kParse, "expected an object with 'generators'");
  }
  KnotComplex c;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      throw Error(ErrorCode::kParse, "'name' must be a string");
    }
    c.name = doc["name"].get<std::string>();
  }
  for (const auto& g : doc["generators"]) {
    if (!g.is_object() || !g.contains("id") || !g["id"].is_string() ||
        !g.contains("maslov") || !g["maslov"].is_number_integer() ||
        !g.contains("alexander") || !g["alexander"].is_number_integer()) {
      throw Error(ErrorCode::kParse, "malformed generator entry");
    }
    c.generators.push_back({g["id"].get<std::string>(), g["maslov"].get<int>(),
                            g["alexander"].get<int>()});
  }
  if (doc.contains("differential")) {
    c.differential = read_terms(doc["differential"], "differential");
  }
  if (doc.contains("flip") && !doc["flip"].is_null()) {
    c.flip = read_terms(doc["flip"], "flip");
  }
  return c;
}

std::string render(const KnotComplex& c) {
  json doc;
  doc["name"] = c.name;
  doc["generators"] = json::array();
  for (const auto& g : c.generators) {
    doc["generators"].push_back(
        {{"id", g.id}, {"maslov", g.maslov}, {"alexander", g.alexander}});
  }
  doc["differential"] = write_terms(c.differential);
  if (c.flip) doc["flip"] = write_terms(*c.flip);
  return doc.dump(2);
}

f2u::MonomialMatrix shifted_differential(const KnotComplex& c,
                                         const std::vector<int>& shifts) {
  f2u::Basis basis;
  for (std::size_t i = 0; i < c.generators.size(); ++i) {
    const auto& g = c.generators[i];
    basis.push_back(g.id, g.maslov - 2 * shifts[i]);
  }
  f2u::MonomialMatrix d(basis, basis, -1);
  for (const auto& t : c.differential) {
    const std::size_t from = c.index_of(t.from);
    const std::size_t to = c.index_of(t.to);
    const int p = t.upower + shifts[from] - shifts[to];
    if (p < 0) {
      throw Error(ErrorCode::kFiltration,
                  "term " + describe(t) + " leaves the subcomplex");
    }
    d.add_term(to, from, p);
  }
  return d;
}

std::vector<Issue> check_flip(const KnotComplex& c,
                              const std::vector<Term>& flip) {
  std::vector<Issue> issues;
  if (!known_ids(c, flip, issues, ErrorCode::kInvalidFlip)) return issues;

  for (const auto& t : flip) {
    const auto& from = c.generators[c.index_of(t.from)];
    const auto& to = c.generators[c.index_of(t.to)];
    if (to.maslov - 2 * t.upower != from.maslov) {
      issues.push_back({ErrorCode::kInvalidFlip,
                        "flip term " + describe(t) + " changes Maslov grading"});
    }
    // U^p y lies at (i, j) = (-p, A(y) - p); x lies at (0, A(x)).
    if (-t.upower > from.alexander || to.alexander - t.upower > 0) {
      issues.push_back({ErrorCode::kInvalidFlip,
                        "flip term " + describe(t) +
                            " does not swap the filtrations"});
    }
  }
  if (!issues.empty()) return issues;

  const TermCount d = count_terms(c, c.differential);
  const TermCount phi = count_terms(c, flip);
  if (compose(d, phi) != compose(phi, d)) {
    issues.push_back({ErrorCode::kInvalidFlip,
                      "flip does not commute with the differential"});
    return issues;
  }

  try {
    std::vector<int> j_shift;
    for (const auto& g : c.generators) j_shift.push_back(g.alexander);
    const auto src = f2u::homology(shifted_differential(c, j_shift));
    const auto dst = f2u::homology(
        shifted_differential(c, std::vector<int>(c.generators.size(), 0)));
    const auto induced =
        f2u::induced_map(flip_restriction(c, flip), src, dst);
    const f2u::GradedModule tower = f2u::GradedModule::canonical({0}, {});
    if (src.module() != tower || dst.module() != tower ||
        !induced.test(0, 0)) {
      issues.push_back({ErrorCode::kInvalidFlip,
                        "flip is not an isomorphism on homology"});
    }
  } catch (const Error& e) {
    issues.push_back({ErrorCode::kInvalidFlip,
                      std::string("flip is not a filtered chain map: ") +
                          e.what()});
  }
  return issues;
}

ValidationReport validate(const KnotComplex& c) {
  ValidationReport report{c.name, {}};
  auto& issues = report.issues;

  std::set<std::string> ids;
  for (const auto& g : c.generators) {
    if (!ids.insert(g.id).second) {
      issues.push_back({ErrorCode::kParse, "duplicate generator id " + g.id});
    }
  }
  if (c.generators.empty()) {
    issues.push_back({ErrorCode::kParse, "complex has no generators"});
  }
  if (!issues.empty() ||
      !known_ids(c, c.differential, issues, ErrorCode::kParse)) {
    return report;
  }

  for (const auto& t : c.differential) {
    const auto& from = c.generators[c.index_of(t.from)];
    const auto& to = c.generators[c.index_of(t.to)];
    if (t.upower < 0 || to.alexander - t.upower > from.alexander) {
      issues.push_back({ErrorCode::kFiltration,
                        "term " + describe(t) + " raises a filtration"});
    }
    if (to.maslov - 2 * t.upower != from.maslov - 1) {
      issues.push_back({ErrorCode::kGrading,
                        "term " + describe(t) +
                            " is not of Maslov degree -1"});
    }
  }

  const TermCount d = count_terms(c, c.differential);
  const TermCount d2 = compose(d, d);
  for (const auto& [key, parity] : d2) {
    issues.push_back({ErrorCode::kDifferentialSquare,
                      "d^2 has term " + c.generators[std::get<0>(key)].id +
                          " -> U^" + std::to_string(std::get<2>(key)) + " " +
                          c.generators[std::get<1>(key)].id});
  }

  std::multiset<std::pair<int, int>> gradings;
  std::multiset<std::pair<int, int>> reflected;
  for (const auto& g : c.generators) {
    gradings.insert({g.maslov, g.alexander});
    reflected.insert({g.maslov - 2 * g.alexander, -g.alexander});
  }
  if (gradings != reflected) {
    issues.push_back({ErrorCode::kAsymmetric,
                      "gradings are not symmetric under (M, A) -> "
                      "(M - 2A, -A)"});
  }
  if (!issues.empty()) return report;

  const auto b = f2u::homology(
      shifted_differential(c, std::vector<int>(c.generators.size(), 0)));
  if (b.module() != f2u::GradedModule::canonical({0}, {})) {
    issues.push_back({ErrorCode::kTotalHomology,
                      "homology of C{i <= 0} is not F2[U] with top grading 0"});
    return report;
  }

  if (c.flip) {
    auto flip_issues = check_flip(c, *c.flip);
    issues.insert(issues.end(), flip_issues.begin(), flip_issues.end());
  }
  return report;
}

void require_valid(const KnotComplex& c) {
  const auto report = validate(c);
  if (!report.ok()) {
    const auto& first = report.issues.front();
    throw Error(first.code, (c.name.empty() ? "complex" : c.name) + ": " +
                                first.detail);
  }
}

int genus(const KnotComplex& c) {
  int g = 0;
  for (const auto& x : c.generators) g = std::max(g, std::abs(x.alexander));
  return g;
}

KnotComplex staircase_from_lspace(const StaircaseSpec& spec,
                                  std::string name) {
  const auto& coeffs = spec.coefficients;
  if (coeffs.empty() || coeffs.size() % 2 == 0) {
    throw Error(ErrorCode::kNotRealizable,
                "need an odd number of coefficients t^d .. t^-d");
  }
  const int top = static_cast<int>(coeffs.size() / 2);
  std::vector<int> exponents;
  int sign = 1;
  int sum = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != coeffs[coeffs.size() - 1 - k]) {
      throw Error(ErrorCode::kNotRealizable, "coefficients not symmetric");
    }
    if (coeffs[k] == 0) continue;
    if (coeffs[k] != sign) {
      throw Error(ErrorCode::kNotRealizable,
                  "nonzero coefficients must be +1, -1, +1, ...");
    }
    exponents.push_back(top - static_cast<int>(k));
    sign = -sign;
    sum += coeffs[k];
  }
  if (sum != 1) {
    throw Error(ErrorCode::kNotRealizable, "polynomial must evaluate to 1");
  }
  if (exponents.size() > 26) {
    throw Error(ErrorCode::kNotRealizable, "staircase too long");
  }

  KnotComplex c;
  c.name = std::move(name);
  int maslov = 0;
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (k > 0) {
      if (k % 2 == 1) {
        maslov += 1 - 2 * (exponents[k - 1] - exponents[k]);
      } else {
        maslov -= 1;
      }
    }
    c.generators.push_back(
        {std::string(1, static_cast<char>('a' + k)), maslov, exponents[k]});
  }
  for (std::size_t k = 1; k < exponents.size(); k += 2) {
    const auto& mid = c.generators[k].id;
    c.differential.push_back(
        {mid, c.generators[k - 1].id, exponents[k - 1] - exponents[k]});
    c.differential.push_back({mid, c.generators[k + 1].id, 0});
  }
  c.flip = default_flip(c);
  require_valid(c);
  return c;
}

KnotComplex mirror(const KnotComplex& c) {
  KnotComplex m;
  m.name = c.name;
  for (const auto& g : c.generators) {
    m.generators.push_back({g.id, -g.maslov, -g.alexander});
  }
  for (const auto& t : c.differential) {
    m.differential.push_back({t.to, t.from, t.upower});
  }
  if (c.flip) {
    m.flip.emplace();
    for (const auto& t : *c.flip) m.flip->push_back({t.to, t.from, t.upower});
  }
  return m;
}

std::vector<Term> default_flip(const KnotComplex& c) {
  const std::size_t n = c.generators.size();
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = c.generators[i];
    for (std::size_t j = 0; j < n; ++j) {
      const auto& y = c.generators[j];
      if (y.alexander == -x.alexander &&
          y.maslov == x.maslov - 2 * x.alexander) {
        candidates[i].push_back(j);
      }
    }
    // Prefer fixing x, then ids in order.
    std::stable_sort(candidates[i].begin(), candidates[i].end(),
                     [i, &c](std::size_t a, std::size_t b) {
                       if ((a == i) != (b == i)) return a == i;
                       return c.generators[a].id < c.generators[b].id;
                     });
    if (candidates[i].empty()) {
      throw Error(ErrorCode::kInvalidFlip,
                  "no partner for generator " + x.id +
                      "; supply the flip explicitly");
    }
  }

  constexpr long kMaxAttempts = 100000;
  long attempts = 0;
  std::vector<std::size_t> sigma(n);
  std::vector<bool> used(n, false);
  std::vector<Term> found;

  auto to_terms = [&]() {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
      terms.push_back({c.generators[i].id, c.generators[sigma[i]].id,
                       -c.generators[i].alexander});
    }
    return terms;
  };

  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      if (++attempts > kMaxAttempts) return true;
      auto terms = to_terms();
      if (check_flip(c, terms).empty()) {
        found = std::move(terms);
        return true;
      }
      return false;
    }
    for (std::size_t j : candidates[i]) {
      if (used[j]) continue;
      used[j] = true;
      sigma[i] = j;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  search(search, 0);

  if (found.empty()) {
    throw Error(ErrorCode::kInvalidFlip,
                "no generator matching gives a valid flip; supply the flip "
                "explicitly");
  }
  return found;
}

namespace {

std::vector<Term> reduce_mod2(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  std::vector<Term> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back() == t) {
      out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

KnotComplex canonical(KnotComplex c) {
  std::sort(c.generators.begin(), c.generators.end());
  c.differential = reduce_mod2(std::move(c.differential));
  if (c.flip) c.flip = reduce_mod2(std::move(*c.flip));
  return c;
}

bool structurally_equal(const KnotComplex& a, const KnotComplex& b) {
  KnotComplex ca = canonical(a);
  KnotComplex cb = canonical(b);
  ca.name.clear();
  cb.name.clear();
  return ca == cb;
}

std::vector<std::string> builtin_names() {
  return {"unknot", "rh_trefoil", "lh_trefoil", "figure_eight", "t25", "t34"};
}

KnotComplex builtin(std::string_view name) {
  KnotComplex c;
  c.name = std::string(name);
  if (name == "unknot") {
    c.generators = {{"a", 0, 0}};
  } else if (name == "rh_trefoil") {
    c.generators = {{"a", 0, 1}, {"b", -1, 0}, {"c", -2, -1}};
    c.differential = {{"b", "a", 1}, {"b", "c", 0}};
  } else if (name == "lh_trefoil") {
    c.generators = {{"a", 0, -1}, {"b", 1, 0}, {"c", 2, 1}};
    c.differential = {{"a", "b", 1}, {"c", "b", 0}};
  } else if (name == "figure_eight") {
    // Central generator x plus an acyclic box a -> b, U c; b -> U d; c -> d.
    c.generators = {
        {"x", 0, 0}, {"a", 0, 0}, {"b", -1, -1}, {"c", 1, 1}, {"d", 0, 0}};
    c.differential = {
        {"a", "b", 0}, {"a", "c", 1}, {"b", "d", 1}, {"c", "d", 0}};
  } else if (name == "t25") {
    return staircase_from_lspace({{1, -1, 1, -1, 1}}, "t25");
  } else if (name == "t34") {
    return staircase_from_lspace({{1, -1, 0, 1, 0, -1, 1}}, "t34");
  } else {
    throw Error(ErrorCode::kUnknownBuiltin,
                "unknown builtin '" + std::string(name) + "'");
  }
  c.flip = default_flip(c);
  require_valid(c);
  return c;
}

}  // namespace conecalc::cfk
