#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "conecalc/cfk.hpp"
#include "conecalc/cobordism.hpp"
#include "conecalc/json_io.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/surgery.hpp"

namespace conecalc::cli {

namespace {

struct Config {
  std::string builtin;
  std::string file;
  int n = 1;
  std::string s_range;
  bool json = false;
  bool verify = false;
  bool direct = false;
  bool self_test = false;
  int extra = 0;
  std::uint64_t seed = 1;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingFlip:
      return 3;
    case ErrorCode::kParse:
    case ErrorCode::kDifferentialSquare:
    case ErrorCode::kGrading:
    case ErrorCode::kFiltration:
    case ErrorCode::kAsymmetric:
    case ErrorCode::kTotalHomology:
    case ErrorCode::kInvalidFlip:
    case ErrorCode::kUnknownBuiltin:
    case ErrorCode::kNotRealizable:
    case ErrorCode::kLatticeInput:
    case ErrorCode::kInvalidArgument:
      return 2;
    default:
      return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::pair<int, int>> parse_range(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':', 1);
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    const int lo = std::stoi(a, &used_a);
    const int hi = std::stoi(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) {
      throw std::invalid_argument(text);
    }
    if (lo > hi) throw Error(ErrorCode::kInvalidArgument, "empty s-range");
    return std::pair{lo, hi};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidArgument,
                "--s-range expects a:b, got '" + text + "'");
  }
}

cfk::KnotComplex load(const Config& cfg) {
  if (cfg.builtin.empty() == cfg.file.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "exactly one of --builtin and --file is required");
  }
  if (!cfg.builtin.empty()) return cfk::builtin(cfg.builtin);
  return cfk::parse(read_file(cfg.file));
}

cfk::KnotComplex load_valid(const Config& cfg) {
  cfk::KnotComplex c = load(cfg);
  cfk::require_valid(c);
  if (cfg.direct && !c.has_flip()) {
    throw Error(ErrorCode::kMissingFlip,
                c.name + ": direct mode requested but the complex has no flip");
  }
  return c;
}

void require_n(const Config& cfg) {
  if (cfg.n < 1) throw Error(ErrorCode::kInvalidArgument, "-n must be >= 1");
  if (cfg.extra < 0) throw Error(ErrorCode::kInvalidArgument, "--extra must be >= 0");
}

std::string absolute(const Rational& offset, int grading) {
  return to_string(offset + grading);
}

int cmd_validate(const Config& cfg, std::ostream& out) {
  const cfk::KnotComplex c = load(cfg);
  const cfk::ValidationReport r = cfk::validate(c);
  if (cfg.json) {
    out << json_io::render(r) << '\n';
  } else {
    out << r.name << ": " << (r.ok() ? "valid" : "INVALID") << '\n';
    for (const auto& i : r.issues) {
      out << "  [" << to_string(i.code) << "] " << i.detail << '\n';
    }
    if (r.ok()) {
      out << "  genus " << cfk::genus(c) << ", "
          << (c.has_flip() ? "flip present (direct mode available)"
                           : "no flip (theorem mode only)")
          << '\n';
    }
  }
  return r.ok() ? 0 : 2;
}

int cmd_invariants(const Config& cfg, std::ostream& out) {
  const cfk::KnotComplex c = load_valid(cfg);
  const int b = std::max(cfk::genus(c), 1);
  const auto [lo, hi] = parse_range(cfg.s_range).value_or(std::pair{-b, b});
  const surgery::VHTable t = surgery::vh_table(c, lo, hi, cfg.direct);
  if (cfg.json) {
    out << json_io::render(t) << '\n';
    return 0;
  }
  out << "knot " << t.knot << ", genus " << t.genus << ", H_s "
      << (t.h_mode == surgery::Mode::kDirect ? "from the flip map"
                                             : "as V_{-s} (theorem mode)")
      << '\n';
  out << std::setw(6) << "s" << std::setw(6) << "V_s" << std::setw(6) << "H_s"
      << '\n';
  for (const auto& r : t.rows) {
    out << std::setw(6) << r.s << std::setw(6) << r.V << std::setw(6) << r.H
        << '\n';
  }
  out << "d(S^3_1(K)) = -2 V_0 = " << t.d1 << '\n';
  return 0;
}

int cmd_surgery(const Config& cfg, std::ostream& out) {
  require_n(cfg);
  const cfk::KnotComplex c = load_valid(cfg);
  const surgery::SurgeryHomology h = surgery::cone_homology(c, cfg.n, cfg.extra);
  std::optional<bool> stable;
  if (cfg.verify) {
    stable = true;
    for (int e = 1; e <= 3; ++e) {
      *stable = *stable &&
                surgery::cone_homology(c, cfg.n, cfg.extra + e) == h;
    }
  }
  if (cfg.json) {
    auto j = json_io::to_json(h);
    if (stable) j["truncation_stable"] = *stable;
    out << j.dump(2) << '\n';
    return stable.value_or(true) ? 0 : 1;
  }
  out << "HF^-(S^3_" << h.n << "(" << h.knot
      << ")) from the mapping cone (absolute gradings)\n";
  for (const auto& l : h.labels) {
    out << "  Spin^c " << l.label << ":";
    for (int g : l.module.free) out << "  F[U] top " << absolute(l.offset, g);
    for (const auto& t : l.module.torsion) {
      out << "  F[U]/U^" << t.order << " at " << absolute(l.offset, t.grading);
    }
    if (l.module.free_rank() == 1) {
      out << "  (d = " << absolute(l.offset, l.module.free.front()) << ")";
    }
    out << '\n';
  }
  out << "total free rank " << h.total_free_rank() << '\n';
  if (stable) {
    out << "truncation stability (window +1..+3): "
        << (*stable ? "stable" : "UNSTABLE") << '\n';
  }
  return stable.value_or(true) ? 0 : 1;
}

int cmd_cobordism(const Config& cfg, std::ostream& out) {
  require_n(cfg);
  const cfk::KnotComplex c = load_valid(cfg);
  const auto range = parse_range(cfg.s_range);
  const cobordism::VanishingReport r =
      cobordism::vanishing_report(c, cfg.n, range);
  if (cfg.json) {
    out << json_io::render(r) << '\n';
    return 0;
  }
  out << "2-handle maps of W_" << r.n << "(" << r.knot
      << "); B_s carries t with <c1, F> = 2s - n\n";
  for (const auto& e : r.per_s) {
    out << "  s = " << std::setw(3) << e.s << "  "
        << std::setw(7) << json_io::to_string(e.mode) << "  "
        << cobordism::to_string(e.verdict);
    if (e.mode == surgery::Mode::kDirect) {
      out << "  (degree "
          << to_string(cobordism::handle_map_class(c, r.n, e.s).degree) << ")";
    }
    out << '\n';
  }
  out << r.conclusion << '\n';
  return 0;
}

int cmd_obstruct(const Config& cfg, std::ostream& out) {
  require_n(cfg);
  const cfk::KnotComplex c = load_valid(cfg);
  const cobordism::ObstructionReport r =
      cobordism::obstruct_filling(c, cfg.n, parse_range(cfg.s_range));
  if (cfg.json) {
    out << json_io::render(r) << '\n';
    return 0;
  }
  out << "Is W_" << r.n << "(" << r.knot << ") a symplectic filling of S^3_"
      << r.n << "(" << r.knot << ")?\n";
  out << "VERDICT: " << cobordism::to_string(r.verdict) << '\n';
  for (std::size_t i = 0; i < r.explanation.size(); ++i) {
    out << "  " << i + 1 << ". " << r.explanation[i] << '\n';
  }
  int direct = 0;
  int direct_zero = 0;
  int theorem_zero = 0;
  int theorem = 0;
  for (const auto& e : r.evidence.per_s) {
    const bool zero = e.verdict == cobordism::Verdict::kZero;
    if (e.mode == surgery::Mode::kDirect) {
      ++direct;
      direct_zero += zero;
    } else {
      ++theorem;
      theorem_zero += zero;
    }
  }
  out << "evidence: theorem mode " << theorem_zero << "/" << theorem
      << " zero";
  if (direct > 0) {
    out << "; direct cone " << direct_zero << "/" << direct << " zero";
  } else {
    out << "; direct cone unavailable (no flip)";
  }
  out << '\n' << r.evidence.conclusion << '\n';
  return 0;
}

int cmd_lattice(const Config& cfg, std::ostream& out) {
  if (cfg.self_test) {
    const auto t = lattice::self_test(cfg.seed);
    if (cfg.json) {
      out << nlohmann::json{{"seed", cfg.seed},
                            {"cases", t.cases},
                            {"recovered", t.recovered},
                            {"failures", t.failures}}
                 .dump(2)
          << '\n';
    } else {
      out << "lattice self-test, seed " << cfg.seed << ": " << t.recovered
          << "/" << t.cases << " scrambles recovered with verified transforms\n";
      for (const auto& f : t.failures) out << "  " << f << '\n';
    }
    return t.recovered == t.cases ? 0 : 1;
  }
  lattice::IntMatrix q;
  if (cfg.builtin.empty() == cfg.file.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "exactly one of --builtin and --file is required");
  }
  if (!cfg.builtin.empty()) {
    if (cfg.builtin != "e8") {
      throw Error(ErrorCode::kUnknownBuiltin,
                  "unknown lattice '" + cfg.builtin + "' (known: e8)");
    }
    q = lattice::e8();
  } else {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(cfg.file));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParse, e.what());
    }
    q = json_io::matrix_from_json(j.is_object() && j.contains("matrix")
                                      ? j.at("matrix")
                                      : j);
  }
  const lattice::HandleSplitReport r = lattice::handle_split_report(q);
  if (cfg.json) {
    out << json_io::render(r) << '\n';
    return 0;
  }
  out << "form of size " << r.n << ": rank " << r.rank << ", nullity "
      << r.nullity << '\n';
  out << "VERDICT: " << r.conclusion << '\n';
  if (!r.congruent) out << "witness: " << r.witness << '\n';
  out << "transform: " << lattice::to_string(r.transform) << '\n';
  return 0;
}

void add_input(CLI::App* sub, Config& cfg) {
  sub->add_option("--builtin", cfg.builtin, "Built-in knot name");
  sub->add_option("--file", cfg.file, "Complex file (JSON)");
  sub->add_flag("--json", cfg.json, "JSON output");
}

void add_surgery_opts(CLI::App* sub, Config& cfg) {
  sub->add_option("-n", cfg.n, "Surgery coefficient (>= 1)");
  sub->add_option("--extra", cfg.extra, "Widen the cone window by this much");
  sub->add_flag("--direct", cfg.direct, "Require the flip map (exit 3 if absent)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  Config cfg;
  CLI::App app{"Knot Floer mapping-cone calculator"};
  app.name("conecalc");
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a complex file");
  add_input(validate, cfg);

  auto* invariants = app.add_subcommand("invariants", "V_s, H_s and d(S^3_1(K))");
  add_input(invariants, cfg);
  invariants->add_option("--s-range", cfg.s_range, "Window a:b (use --s-range=a:b)");
  invariants->add_flag("--direct", cfg.direct, "Require the flip map (exit 3 if absent)");

  auto* surgery = app.add_subcommand("surgery", "HF^- of n-surgery");
  add_input(surgery, cfg);
  add_surgery_opts(surgery, cfg);
  surgery->add_flag("--verify", cfg.verify, "Check stability under window growth");

  auto* cobordism = app.add_subcommand("cobordism", "2-handle map classes");
  add_input(cobordism, cfg);
  add_surgery_opts(cobordism, cfg);
  cobordism->add_option("--s-range", cfg.s_range, "Window a:b");

  auto* obstruct = app.add_subcommand("obstruct", "Symplectic filling obstruction");
  add_input(obstruct, cfg);
  add_surgery_opts(obstruct, cfg);
  obstruct->add_option("--s-range", cfg.s_range, "Window a:b");

  auto* lat = app.add_subcommand("lattice", "Handle-splitting lattice report");
  add_input(lat, cfg);
  lat->add_flag("--self-test", cfg.self_test, "Run seeded scramble-and-recover tests");
  lat->add_option("--seed", cfg.seed, "Seed for --self-test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(cfg, out);
    if (invariants->parsed()) return cmd_invariants(cfg, out);
    if (surgery->parsed()) return cmd_surgery(cfg, out);
    if (cobordism->parsed()) return cmd_cobordism(cfg, out);
    if (obstruct->parsed()) return cmd_obstruct(cfg, out);
    return cmd_lattice(cfg, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace conecalc::cli
