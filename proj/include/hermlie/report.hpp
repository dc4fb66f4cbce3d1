#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace hermlie {

enum class CheckStatus { Pass, Fail, NotApplicable };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::NotApplicable;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;

  static CheckResult of(std::string name, double residual, double tol, std::string note = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.residual = residual;
    c.tolerance = tol;
    c.status = (residual < tol) ? CheckStatus::Pass : CheckStatus::Fail;
    c.note = std::move(note);
    return c;
  }

  static CheckResult not_applicable(std::string name, std::string note) {
    CheckResult c;
    c.name = std::move(name);
    c.status = CheckStatus::NotApplicable;
    c.residual = std::nan("");
    c.note = std::move(note);
    return c;
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }

  double worst_residual() const {
    double worst = 0.0;
    for (const auto& c : checks)
      if (c.status != CheckStatus::NotApplicable && std::isfinite(c.residual))
        worst = std::max(worst, c.residual);
    return worst;
  }
};

}  // namespace hermlie
