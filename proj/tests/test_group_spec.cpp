#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "hermlie/run_report.hpp"

using namespace hermlie;
using nlohmann::json;

namespace {

const char* kU2Clone = R"({
  "name": "hopf-like",
  "dimension": 4,
  "structure_constants": [
    {"i": 1, "j": 2, "k": 3, "v": 1.0},
    {"i": 2, "j": 3, "k": 1, "v": 1.0},
    {"i": 3, "j": 1, "k": 2, "v": 1.0}
  ],
  "metric": "killing_negative",
  "torus_basis": [3, 4]
})";

RunOptions opts_for(const std::string& cmd) {
  RunOptions o;
  o.command = cmd;
  o.source = "test";
  return o;
}

}  // namespace

TEST_CASE("group spec file reproduces the u2 preset") {
  GroupSpec spec = parse_group_spec(json::parse(kU2Clone));
  ResolvedGroup grp = resolve_group(spec);
  CHECK(grp.name == "hopf-like");
  auto u2 = preset("u2");
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(grp.algebra.c(k, i, j) == u2->algebra.c(k, i, j));
  // -Killing normalized to unit diagonal = identity here
  CHECK((grp.metric - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  auto out = run_hodge(grp, opts_for("hodge"));
  CHECK(out.exit_code == kExitPass);
  CHECK(out.report["hodge"]["match"].get<bool>());
}

TEST_CASE("explicit metric matrices are accepted and validated") {
  json j = json::parse(kU2Clone);
  j["metric"] = {{2.0, 0, 0, 0}, {0, 2.0, 0, 0}, {0, 0, 2.0, 0}, {0, 0, 0, 1.0}};
  GroupSpec spec = parse_group_spec(j);
  ResolvedGroup grp = resolve_group(spec);
  CHECK(grp.metric(0, 0) == 2.0);
  // scaled bi-invariant metric still passes every suite
  auto out = run_verify(grp, opts_for("verify"));
  CHECK(out.exit_code == kExitPass);
}

TEST_CASE("spec parse errors are located") {
  json j = json::parse(kU2Clone);
  j["structure_constants"][0]["k"] = 9;
  CHECK_THROWS_WITH(parse_group_spec(j),
                    Catch::Matchers::ContainsSubstring("structure_constants[0]"));

  json dup = json::parse(kU2Clone);
  dup["structure_constants"].push_back({{"i", 2}, {"j", 1}, {"k", 3}, {"v", 1.0}});
  CHECK_THROWS_WITH(resolve_group(parse_group_spec(dup)),
                    Catch::Matchers::ContainsSubstring("contradicts the antisymmetric completion"));

  json badmetric = json::parse(kU2Clone);
  badmetric["metric"] = {{1.0, 2.0, 0, 0}, {0, 1.0, 0, 0}, {0, 0, 1.0, 0}, {0, 0, 0, 1.0}};
  CHECK_THROWS_WITH(parse_group_spec(badmetric),
                    Catch::Matchers::ContainsSubstring("not symmetric"));

  json nodim = json::parse(R"({"name": "x"})");
  CHECK_THROWS_WITH(parse_group_spec(nodim), Catch::Matchers::ContainsSubstring("dimension"));
}

TEST_CASE("validate flags a broken Jacobi identity with exit code 2") {
  // [e1,e2] = e3 with [e1,e3] = e1 fails Jacobi on (e1,e2,e3)
  json j = json::parse(R"({
    "name": "broken",
    "dimension": 3,
    "structure_constants": [
      {"i": 1, "j": 2, "k": 3, "v": 1.0},
      {"i": 1, "j": 3, "k": 1, "v": 1.0}
    ],
    "metric": [[1.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]]
  })");
  ResolvedGroup grp = resolve_group(parse_group_spec(j));
  auto out = run_validate(grp, opts_for("validate"));
  CHECK(out.exit_code == kExitInput);
  CHECK_FALSE(out.report["algebra"]["passed"].get<bool>());
  CHECK(std::stod(out.report["algebra"]["jacobi"].get<std::string>()) > 0.5);
}

TEST_CASE("validate passes presets and reports the abelian torus note") {
  GroupSpec spec;
  spec.preset_id = "t4";
  auto out = run_validate(resolve_group(spec), opts_for("validate"));
  CHECK(out.exit_code == kExitPass);
  CHECK(out.report["frame"]["status"].get<std::string>().find("abelian") != std::string::npos);

  GroupSpec u2;
  u2.preset_id = "su2xu1";
  CHECK(run_validate(resolve_group(u2), opts_for("validate")).exit_code == kExitPass);
}

TEST_CASE("odd-dimensional algebras validate but cannot run hodge") {
  GroupSpec spec;
  spec.preset_id = "su2";
  ResolvedGroup grp = resolve_group(spec);
  auto val = run_validate(grp, opts_for("validate"));
  CHECK(val.exit_code == kExitPass);
  CHECK(val.report["frame"]["status"].get<std::string>().find("odd dimension") !=
        std::string::npos);
  auto hodge = run_hodge(grp, opts_for("hodge"));
  CHECK(hodge.exit_code == kExitInput);
}

TEST_CASE("verify honors the suite subset") {
  GroupSpec spec;
  spec.preset_id = "t4";
  RunOptions opt = opts_for("verify");
  opt.suites = {"lichnerowicz"};
  auto out = run_verify(resolve_group(spec), opt);
  CHECK(out.exit_code == kExitPass);
  REQUIRE(out.report["suites"].size() == 1);
  CHECK(out.report["suites"][0]["name"] == "lichnerowicz");
}

TEST_CASE("near-threshold eigenvalues raise a spectral-gap warning, exit 3") {
  // su(2) + su(2) with the second bracket scaled by eps: the (0,1) Laplacian
  // has eigenvalues {0, 1/2, eps^2/2}, and eps = 3e-4 lands the small one
  // inside the warning band around 1e-8 * lambda_max
  json j = json::parse(R"({
    "name": "nearly-degenerate",
    "dimension": 6,
    "structure_constants": [
      {"i": 1, "j": 2, "k": 3, "v": 1.0},
      {"i": 2, "j": 3, "k": 1, "v": 1.0},
      {"i": 3, "j": 1, "k": 2, "v": 1.0},
      {"i": 4, "j": 5, "k": 6, "v": 3e-4},
      {"i": 5, "j": 6, "k": 4, "v": 3e-4},
      {"i": 6, "j": 4, "k": 5, "v": 3e-4}
    ],
    "metric": [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],
               [0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]],
    "torus_basis": [3, 6]
  })");
  ResolvedGroup grp = resolve_group(parse_group_spec(j));
  auto out = run_hodge(grp, opts_for("hodge"));
  CHECK(out.exit_code == kExitInconclusive);
  CHECK(out.report["hodge"]["spectral_gap_warning"].get<bool>());
}

TEST_CASE("machine-readable reports are byte-identical across runs") {
  for (const std::string cmd : {"validate", "hodge", "verify"}) {
    GroupSpec spec;
    spec.preset_id = "su2xsu2";
    auto a = run_command(resolve_group(spec), opts_for(cmd));
    auto b = run_command(resolve_group(spec), opts_for(cmd));
    CHECK(a.report.dump(2) == b.report.dump(2));
    CHECK(a.exit_code == b.exit_code);
  }
}

TEST_CASE("changing the seed keeps the verdicts stable") {
  GroupSpec spec;
  spec.preset_id = "su3";
  RunOptions opt = opts_for("hodge");
  opt.seed = 12345;
  ResolvedGroup grp = resolve_group(parse_group_spec(json::parse(R"({"preset":"su3"})")), 12345);
  auto out = run_hodge(grp, opt);
  CHECK(out.exit_code == kExitPass);
  CHECK(out.report["hodge"]["match"].get<bool>());
}
