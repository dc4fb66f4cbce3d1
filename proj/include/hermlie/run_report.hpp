#pragma once

#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>

#include "hermlie/clifford.hpp"
#include "hermlie/group_spec.hpp"
#include "hermlie/suites.hpp"

namespace hermlie {

// Exit-code contract: 0 all-pass, 1 identity failure, 2 input/validation
// error, 3 spectral-gap warning (inconclusive).
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2, kExitInconclusive = 3 };

struct RunOptions {
  std::string command;
  std::string source;  // "preset:<id>" or "file:<path>"
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-9;
  std::vector<std::string> suites;  // verify only; empty = all
};

struct RunOutput {
  nlohmann::ordered_json report;
  int exit_code = kExitPass;
};

namespace report_detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

inline nlohmann::ordered_json header(const RunOptions& opt, const std::string& name) {
  nlohmann::ordered_json j;
  j["tool"] = "hermlie";
  j["command"] = opt.command;
  j["spec"] = {{"name", name}, {"source", opt.source}};
  j["provenance"] = {{"seed", opt.seed}, {"tolerance", opt.tol}, {"catalog", preset_ids()}};
  return j;
}

inline nlohmann::ordered_json check_row(const CheckResult& c) {
  nlohmann::ordered_json row;
  row["name"] = c.name;
  row["status"] = c.status == CheckStatus::Pass
                      ? "pass"
                      : (c.status == CheckStatus::Fail ? "fail" : "not_applicable");
  if (c.status != CheckStatus::NotApplicable) {
    row["residual"] = fmt(c.residual);
    row["tolerance"] = fmt(c.tolerance);
  }
  if (!c.note.empty()) row["note"] = c.note;
  return row;
}

inline nlohmann::ordered_json suite_block(const SuiteReport& rep) {
  nlohmann::ordered_json j;
  j["name"] = rep.suite;
  j["passed"] = rep.all_passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) j["checks"].push_back(check_row(c));
  return j;
}

inline nlohmann::ordered_json frame_block(const SamelsonFrame& fr) {
  nlohmann::ordered_json j;
  j["real_dimension"] = fr.N;
  j["complex_dimension"] = fr.n;
  j["rank"] = fr.torus_dim;
  j["r"] = fr.r;
  j["positive_roots"] = fr.m;
  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (int c = 0; c < fr.roots.cols(); ++c) {
    nlohmann::ordered_json root = nlohmann::ordered_json::array();
    for (int s = 0; s < fr.roots.rows(); ++s) root.push_back(fmt(fr.roots(s, c).imag()));
    roots.push_back(root);
  }
  j["root_imag_parts"] = roots;
  j["residuals"] = {{"eigen_relation", fmt(fr.diag.eigen_relation)},
                    {"orthonormality", fmt(fr.diag.orthonormality)},
                    {"integrability", fmt(fr.diag.integrability)},
                    {"compatibility", fmt(fr.diag.compatibility)}};
  return j;
}

}  // namespace report_detail

inline RunOutput run_validate(const ResolvedGroup& grp, const RunOptions& opt) {
  using nlohmann::ordered_json;
  RunOutput out;
  out.report = report_detail::header(opt, grp.name);

  const ValidationReport val = validate(grp.algebra);
  out.report["algebra"] = {{"dimension", grp.algebra.dim()},
                           {"antisymmetry", report_detail::fmt(val.antisymmetry)},
                           {"jacobi", report_detail::fmt(val.jacobi)},
                           {"unimodularity", report_detail::fmt(val.unimodularity)},
                           {"passed", val.passed()}};
  HermitianStructure probe{grp.metric, Eigen::MatrixXd::Zero(grp.algebra.dim(), grp.algebra.dim())};
  out.report["metric"] = {
      {"bi_invariance_residual", report_detail::fmt(probe.bi_invariance_residual(grp.algebra))}};
  if (!val.passed()) {
    out.report["frame"] = {{"status", "skipped: algebra validation failed"}};
    out.report["exit_code"] = kExitInput;
    out.exit_code = kExitInput;
    return out;
  }

  if (grp.algebra.dim() % 2 != 0) {
    out.report["frame"] = {
        {"status", "not_applicable: odd dimension admits no complex structure"}};
    out.report["exit_code"] = kExitPass;
    return out;
  }
  try {
    const SamelsonFrame fr = samelson_frame(grp.algebra, grp.metric, grp.options);
    out.report["frame"] = report_detail::frame_block(fr);
    out.report["frame"]["status"] =
        (fr.m == 0) ? "constructed (abelian: maximal torus is the whole algebra)" : "constructed";
  } catch (const std::exception& e) {
    out.report["frame"] = {{"status", std::string("error: ") + e.what()}};
    out.report["exit_code"] = kExitInput;
    out.exit_code = kExitInput;
    return out;
  }
  out.report["exit_code"] = kExitPass;
  return out;
}

inline RunOutput run_hodge(const ResolvedGroup& grp, const RunOptions& opt) {
  using nlohmann::ordered_json;
  RunOutput out;
  out.report = report_detail::header(opt, grp.name);
  try {
    const SamelsonFrame fr = samelson_frame(grp.algebra, grp.metric, grp.options);
    out.report["frame"] = report_detail::frame_block(fr);
    ordered_json table = ordered_json::array();
    bool warning = false;
    bool match = true;
    for (int p = 0; p <= fr.n; ++p) {
      const HodgeResult hr = hodge_number(grp.algebra, fr, p);
      const int predicted = static_cast<int>(binomial(fr.r, p));
      ordered_json row;
      row["p"] = p;
      row["h"] = hr.h;
      row["predicted"] = predicted;
      row["lambda_max"] = report_detail::fmt(hr.lambda_max);
      row["threshold"] = report_detail::fmt(hr.threshold);
      row["spectral_gap_warning"] = hr.spectral_gap_warning;
      table.push_back(row);
      warning = warning || hr.spectral_gap_warning;
      match = match && (hr.h == predicted);
    }
    out.report["hodge"] = {{"table", table}, {"match", match}, {"spectral_gap_warning", warning}};
    out.exit_code = !match ? kExitFail : (warning ? kExitInconclusive : kExitPass);
  } catch (const std::exception& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitInput;
  }
  out.report["exit_code"] = out.exit_code;
  return out;
}

inline RunOutput run_verify(const ResolvedGroup& grp, const RunOptions& opt) {
  using nlohmann::ordered_json;
  RunOutput out;
  out.report = report_detail::header(opt, grp.name);
  auto wants = [&](const std::string& s) {
    if (opt.suites.empty()) return true;
    for (const auto& w : opt.suites)
      if (w == s || w == "all") return true;
    return false;
  };
  try {
    const SamelsonFrame fr = samelson_frame(grp.algebra, grp.metric, grp.options);
    const HermitianStructure herm{grp.metric, fr.J};
    out.report["frame"] = report_detail::frame_block(fr);
    ordered_json suites = ordered_json::array();
    bool failed = false;
    if (wants("identities")) {
      const SuiteReport rep = identity_suite(grp.algebra, herm, opt.tol);
      suites.push_back(report_detail::suite_block(rep));
      failed = failed || !rep.all_passed();
    }
    if (wants("weyl")) {
      const SuiteReport rep = weyl_suite(grp.algebra, herm, opt.tol);
      suites.push_back(report_detail::suite_block(rep));
      failed = failed || !rep.all_passed();
    }
    if (wants("hopf")) {
      const SuiteReport rep = generalized_hopf_check(grp.algebra, herm, opt.tol);
      suites.push_back(report_detail::suite_block(rep));
      failed = failed || !rep.all_passed();
    }
    if (wants("clifford")) {
      const SuiteReport rep = clifford_suite(grp.algebra, herm, fr, opt.seed);
      suites.push_back(report_detail::suite_block(rep));
      failed = failed || !rep.all_passed();
    }
    if (wants("lichnerowicz")) {
      if (herm.bi_invariant(grp.algebra)) {
        const SuiteReport rep = lichnerowicz_verify(grp.algebra, herm, fr, opt.seed);
        suites.push_back(report_detail::suite_block(rep));
        failed = failed || !rep.all_passed();
      } else {
        SuiteReport rep;
        rep.suite = "lichnerowicz";
        rep.checks.push_back(CheckResult::not_applicable(
            "box_square.matrix_identity", "metric is not bi-invariant"));
        suites.push_back(report_detail::suite_block(rep));
      }
    }
    out.report["suites"] = suites;
    out.exit_code = failed ? kExitFail : kExitPass;
  } catch (const std::exception& e) {
    out.report["error"] = e.what();
    out.exit_code = kExitInput;
  }
  out.report["exit_code"] = out.exit_code;
  return out;
}

inline RunOutput run_command(const ResolvedGroup& grp, const RunOptions& opt) {
  if (opt.command == "validate") return run_validate(grp, opt);
  if (opt.command == "hodge") return run_hodge(grp, opt);
  if (opt.command == "verify") return run_verify(grp, opt);
  throw std::invalid_argument("unknown command " + opt.command);
}

// Aligned plain-text rendering of the machine-readable report.
inline std::string render_human(const nlohmann::ordered_json& rep) {
  std::ostringstream os;
  os << "hermlie " << rep.value("command", "?") << "  spec="
     << rep["spec"].value("name", "?") << "  seed=" << rep["provenance"]["seed"] << "\n";
  if (rep.contains("algebra")) {
    const auto& a = rep["algebra"];
    os << "  algebra   dim=" << a["dimension"] << "  antisym=" << a["antisymmetry"].get<std::string>()
       << "  jacobi=" << a["jacobi"].get<std::string>()
       << "  unimod=" << a["unimodularity"].get<std::string>()
       << (a["passed"].get<bool>() ? "  [ok]" : "  [FAIL]") << "\n";
  }
  if (rep.contains("metric"))
    os << "  metric    bi-invariance residual "
       << rep["metric"]["bi_invariance_residual"].get<std::string>() << "\n";
  if (rep.contains("frame")) {
    const auto& f = rep["frame"];
    if (f.contains("status") && !f.contains("complex_dimension")) {
      os << "  frame     " << f["status"].get<std::string>() << "\n";
    } else {
      os << "  frame     N=" << f["real_dimension"] << " n=" << f["complex_dimension"]
         << " rank=" << f["rank"] << " r=" << f["r"] << " m=" << f["positive_roots"];
      if (f.contains("status")) os << "  " << f["status"].get<std::string>();
      os << "\n";
    }
  }
  if (rep.contains("error")) os << "  error     " << rep["error"].get<std::string>() << "\n";
  if (rep.contains("hodge")) {
    os << "  p    h^{0,p}  C(r,p)  status\n";
    for (const auto& row : rep["hodge"]["table"]) {
      os << "  " << row["p"] << "    " << row["h"] << "        " << row["predicted"] << "       "
         << (row["h"] == row["predicted"] ? "ok" : "MISMATCH")
         << (row["spectral_gap_warning"].get<bool>() ? "  [spectral-gap warning]" : "") << "\n";
    }
    os << "  hodge " << (rep["hodge"]["match"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  if (rep.contains("suites")) {
    for (const auto& suite : rep["suites"]) {
      os << "  suite " << suite["name"].get<std::string>()
         << (suite["passed"].get<bool>() ? "  [pass]" : "  [FAIL]") << "\n";
      for (const auto& c : suite["checks"]) {
        os << "    " << c["status"].get<std::string>() << "  " << c["name"].get<std::string>();
        if (c.contains("residual"))
          os << "  residual=" << c["residual"].get<std::string>()
             << " tol=" << c["tolerance"].get<std::string>();
        if (c.contains("note")) os << "  (" << c["note"].get<std::string>() << ")";
        os << "\n";
      }
    }
  }
  os << "exit " << rep.value("exit_code", 0) << "\n";
  return os.str();
}

}  // namespace hermlie
