#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "conecalc/cfk.hpp"
#include "conecalc/cobordism.hpp"
#include "conecalc/json_io.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/surgery.hpp"

using namespace conecalc;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "conecalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(CONECALC_DATA_DIR) + "/" + name;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"validate", "--builtin", "rh_trefoil"}).code, 0);
  EXPECT_EQ(run({"validate", "--file", data("trefoil_bad_filtration.json")}).code, 2);
  EXPECT_EQ(run({"validate", "--builtin", "nope"}).code, 2);
  EXPECT_EQ(run({"validate", "--file", data("missing.json")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"surgery", "--file", data("rh_trefoil_noflip.json"), "-n", "1"}).code, 3);
  EXPECT_EQ(run({"cobordism", "--file", data("rh_trefoil_noflip.json"), "-n", "1", "--direct"}).code, 3);
  EXPECT_EQ(run({"cobordism", "--file", data("rh_trefoil_noflip.json"), "-n", "1"}).code, 0);
  EXPECT_EQ(run({"surgery", "--builtin", "unknot", "-n", "0"}).code, 2);
  EXPECT_EQ(run({"lattice", "--file", data("e8.json")}).code, 0);
  EXPECT_EQ(run({"lattice", "--self-test", "--seed", "5"}).code, 0);
}

TEST(Cli, InvariantsText) {
  const auto r = run({"invariants", "--builtin", "rh_trefoil"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("d(S^3_1(K)) = -2 V_0 = -2"), std::string::npos);
}

TEST(Cli, JsonMatchesLibrary) {
  const auto rh = cfk::builtin("rh_trefoil");
  auto r = run({"invariants", "--builtin", "rh_trefoil", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_io::parse<surgery::VHTable>(r.out), surgery::vh_table(rh));

  r = run({"surgery", "--builtin", "rh_trefoil", "-n", "2", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_io::parse<surgery::SurgeryHomology>(r.out), surgery::cone_homology(rh, 2));

  r = run({"cobordism", "--builtin", "figure_eight", "-n", "3", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_io::parse<cobordism::VanishingReport>(r.out),
            cobordism::vanishing_report(cfk::builtin("figure_eight"), 3));

  r = run({"obstruct", "--builtin", "lh_trefoil", "-n", "2", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_io::parse<cobordism::ObstructionReport>(r.out),
            cobordism::obstruct_filling(cfk::builtin("lh_trefoil"), 2));

  r = run({"lattice", "--builtin", "e8", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_io::parse<lattice::HandleSplitReport>(r.out),
            lattice::handle_split_report(lattice::e8()));

  r = run({"validate", "--file", data("trefoil_bad_filtration.json"), "--json"});
  EXPECT_EQ(r.code, 2);
  const auto report = json_io::parse<cfk::ValidationReport>(r.out);
  EXPECT_FALSE(report.ok());
}

TEST(Cli, VerdictIndependentOfFormat) {
  for (const char* knot : {"figure_eight", "rh_trefoil", "lh_trefoil"}) {
    const auto text = run({"obstruct", "--builtin", knot, "-n", "1"});
    const auto js = run({"obstruct", "--builtin", knot, "-n", "1", "--json"});
    ASSERT_EQ(text.code, 0);
    ASSERT_EQ(js.code, 0);
    const auto verdict = json_io::json::parse(js.out)["verdict"].get<std::string>();
    EXPECT_NE(text.out.find("VERDICT: " + verdict), std::string::npos) << knot;
  }
}

TEST(Cli, SRange) {
  const auto r = run({"cobordism", "--builtin", "unknot", "-n", "1", "--s-range=-3:3", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto rep = json_io::parse<cobordism::VanishingReport>(r.out);
  EXPECT_EQ(rep.per_s.front().s, -3);
  EXPECT_EQ(rep.per_s.back().s, 3);
  EXPECT_EQ(run({"cobordism", "--builtin", "unknot", "-n", "1", "--s-range=3:-3"}).code, 2);
}

TEST(Cli, SurgeryVerify) {
  const auto r = run({"surgery", "--builtin", "t25", "-n", "2", "--verify"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(JsonIo, RoundTrips) {
  for (const auto& name : cfk::builtin_names()) {
    const auto c = cfk::builtin(name);
    const auto t = surgery::vh_table(c);
    EXPECT_EQ(json_io::parse<surgery::VHTable>(json_io::render(t)), t);
    const auto h = surgery::cone_homology(c, 3);
    EXPECT_EQ(json_io::parse<surgery::SurgeryHomology>(json_io::render(h)), h);
    const auto v = cobordism::vanishing_report(c, 2);
    EXPECT_EQ(json_io::parse<cobordism::VanishingReport>(json_io::render(v)), v);
    const auto o = cobordism::obstruct_filling(c, 1);
    EXPECT_EQ(json_io::parse<cobordism::ObstructionReport>(json_io::render(o)), o);
    const auto val = cfk::validate(c);
    EXPECT_EQ(json_io::parse<cfk::ValidationReport>(json_io::render(val)), val);
  }
  const auto l = lattice::handle_split_report(lattice::IntMatrix::standard(3, 2));
  EXPECT_EQ(json_io::parse<lattice::HandleSplitReport>(json_io::render(l)), l);
}

TEST(JsonIo, SchemaErrors) {
  for (const char* text : {"{", "[]", R"({"knot": 1})"}) {
    try {
      json_io::parse<surgery::VHTable>(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
  }
  try {
    json_io::matrix_from_json(json_io::json::parse("[[1, 2], [3]]"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}
