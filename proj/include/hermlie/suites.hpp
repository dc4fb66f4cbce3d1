#pragma once

#include "hermlie/connections.hpp"
#include "hermlie/report.hpp"

namespace hermlie {

// Structural residuals of a connection, used by tests and by the validate
// command.
inline double metric_compatibility_residual(const ConnectionCoefficients& conn,
                                            const Eigen::MatrixXd& g) {
  double worst = 0.0;
  for (int i = 0; i < conn.dim(); ++i)
    worst = std::max(worst, (conn[i].transpose() * g + g * conn[i]).cwiseAbs().maxCoeff());
  return worst;
}

inline double weyl_metric_residual(const ConnectionCoefficients& conn, const Eigen::MatrixXd& g,
                                   const InvariantForm& theta) {
  double worst = 0.0;
  for (int i = 0; i < conn.dim(); ++i) {
    const double ti = theta.coeff()(i).real();
    worst = std::max(worst,
                     (conn[i].transpose() * g + g * conn[i] + ti * g).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline double hermitian_residual(const ConnectionCoefficients& conn, const Eigen::MatrixXd& J) {
  double worst = 0.0;
  for (int i = 0; i < conn.dim(); ++i)
    worst = std::max(worst, (conn[i] * J - J * conn[i]).cwiseAbs().maxCoeff());
  return worst;
}

// Lowered torsion g(T(X,Y),Z) as a degree-3 coefficient array, plus the
// residual of its total antisymmetry.
inline InvariantForm torsion_three_form(const ConnectionCoefficients& conn, const LieAlgebra& alg,
                                        const Eigen::MatrixXd& g, double* antisym_residual) {
  const int N = conn.dim();
  std::vector<Eigen::MatrixXd> lowered(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    Eigen::MatrixXd Ti(N, N);  // T(e_i, e_j) components: column j
    for (int j = 0; j < N; ++j) {
      Eigen::VectorXd t = conn[i].col(j) - conn[j].col(i);
      for (int k = 0; k < N; ++k) t(k) -= alg.c(k, i, j);
      Ti.col(j) = t;
    }
    lowered[static_cast<std::size_t>(i)] = g * Ti;  // (l,j) = g(T(e_i,e_j), e_l)
  }
  auto val = [&](int i, int j, int l) { return lowered[static_cast<std::size_t>(i)](l, j); };
  InvariantForm out(N, 3);
  double worst = 0.0;
  Tuple t(3);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (int l = j + 1; l < N; ++l) {
        t[0] = i;
        t[1] = j;
        t[2] = l;
        out.set_coefficient(t, val(i, j, l));
        // total antisymmetry: cyclic and swap relations
        worst = std::max({worst, std::abs(val(i, j, l) - val(j, l, i)),
                          std::abs(val(i, j, l) + val(j, i, l)), std::abs(val(i, j, l) + val(i, l, j))});
      }
  // diagonal slots must vanish
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) worst = std::max(worst, std::abs(val(i, i, j)));
  if (antisym_residual) *antisym_residual = worst;
  return out;
}

// Shared geometric invariants of a Hermitian pair, computed once per suite.
struct HermitianInvariants {
  int n = 0;
  InvariantForm omega, domega, dc_omega, ddc_omega;
  LeeForm lee;
  InvariantForm dtheta, djtheta;
  double dstar_theta = 0.0;
  double norm_domega2 = 0.0;
  ConnectionCoefficients lc, chern, bismut;
  CurvatureData curv_lc, curv_chern, curv_bismut;
};

inline HermitianInvariants hermitian_invariants(const LieAlgebra& alg,
                                                const HermitianStructure& herm) {
  HermitianInvariants inv;
  inv.n = herm.complex_dim();
  inv.omega = herm.kahler_form();
  inv.domega = ce_differential(inv.omega, alg);
  inv.dc_omega = dc_differential(inv.omega, alg, herm.J);
  inv.ddc_omega = ce_differential(inv.dc_omega, alg);
  inv.lee = lee_form_or_zero(alg, herm);
  inv.dtheta = ce_differential(inv.lee.theta, alg);
  inv.djtheta = ce_differential(inv.lee.jtheta, alg);
  inv.dstar_theta = codifferential(inv.lee.theta, alg, herm.g).coeff()(0).real();
  inv.norm_domega2 = inner(inv.domega, inv.domega, herm.g).real();
  inv.lc = connection(alg, herm, ConnectionKind::LeviCivita);
  inv.chern = connection(alg, herm, ConnectionKind::Chern);
  inv.bismut = connection(alg, herm, ConnectionKind::Bismut);
  inv.curv_lc = curvature(inv.lc, alg, herm);
  inv.curv_chern = curvature(inv.chern, alg, herm);
  inv.curv_bismut = curvature(inv.bismut, alg, herm);
  return inv;
}

// The trace/norm identity suite relating the Chern and Bismut Ricci data to
// the Lee form, the scalar curvature and the torsion.
inline SuiteReport identity_suite(const LieAlgebra& alg, const HermitianStructure& herm,
                                  double tol = 1e-9) {
  SuiteReport rep;
  rep.suite = "identities";
  const HermitianInvariants inv = hermitian_invariants(alg, herm);
  const int n = inv.n;
  const double nm1 = n - 1;
  const double th2 = inv.lee.norm2;
  const double s = inv.curv_lc.s;
  const double u = inv.curv_chern.u;
  const double b = inv.curv_bismut.b;
  const double dst = inv.dstar_theta;

  const InvariantForm& rho_c = inv.curv_chern.ricci_form;
  const InvariantForm& rho_b = inv.curv_bismut.ricci_form;

  rep.checks.push_back(CheckResult::of(
      "ricci.chern_minus_bismut", (rho_c - rho_b - cplx(nm1) * inv.djtheta).max_abs(), tol));
  rep.checks.push_back(CheckResult::of(
      "trace.chern_scalar", std::abs(2 * u - s + nm1 * dst - 0.5 * inv.norm_domega2), tol));

  const double trace_djtheta = form_j_trace(inv.djtheta, herm);
  rep.checks.push_back(CheckResult::of(
      "trace.djtheta_value", std::abs(trace_djtheta - 2 * nm1 * th2 - 2 * dst), tol));
  if (n > 1) {
    const InvariantForm ddstar_omega =
        ce_differential(codifferential(inv.omega, alg, herm.g), alg);
    const double pairing = inner(ddstar_omega, inv.omega, herm.g).real();
    rep.checks.push_back(CheckResult::of(
        "trace.djtheta_ddstar_route", std::abs(trace_djtheta - 2.0 / nm1 * pairing), tol));
  } else {
    rep.checks.push_back(
        CheckResult::not_applicable("trace.djtheta_ddstar_route", "degenerate for complex dimension 1"));
  }

  rep.checks.push_back(CheckResult::of(
      "trace.chern_bismut_relation", std::abs(2 * u - b - 2 * nm1 * dst - 2 * nm1 * nm1 * th2), tol));
  rep.checks.push_back(CheckResult::of(
      "trace.bismut_scalar",
      std::abs(b - s + 3 * nm1 * dst + 2 * nm1 * nm1 * th2 - 0.5 * inv.norm_domega2), tol));

  const InvariantForm omega_wedge = wedge(inv.omega, inv.omega);
  const double lhs10 = inner(inv.ddc_omega, omega_wedge, herm.g).real();
  rep.checks.push_back(CheckResult::of(
      "pairing.ddc_omega_squared",
      std::abs(lhs10 - 2 * nm1 * nm1 * th2 + 2 * inv.norm_domega2 - 2 * nm1 * dst), tol));

  const InvariantForm theta_wedge = wedge(inv.lee.theta, inv.omega);
  rep.checks.push_back(CheckResult::of(
      "norm.lee_wedge_omega", std::abs(inner(theta_wedge, theta_wedge, herm.g).real() - nm1 * th2),
      tol));

  // Induced connections on the anticanonical line: difference of the Chern
  // and Bismut connection 1-forms is (n-1) i J theta, and their curvatures
  // reproduce the Ricci forms.
  const Eigen::MatrixXcd W = type10_basis(herm.J);
  Eigen::MatrixXcd frame(herm.dim(), herm.dim());
  frame.leftCols(n) = W;
  frame.rightCols(n) = W.conjugate();
  const Eigen::MatrixXcd coframe = frame.inverse();
  const LineConnectionForm sig_c = line_connection_form(inv.chern, frame, coframe);
  const LineConnectionForm sig_b = line_connection_form(inv.bismut, frame, coframe);
  InvariantForm diff = sig_c.sigma - sig_b.sigma;
  diff -= cplx(0, 1) * cplx(nm1) * inv.lee.jtheta;
  rep.checks.push_back(CheckResult::of("line.chern_bismut_difference", diff.max_abs(), 1e-10));
  rep.checks.push_back(CheckResult::of(
      "rho_c.line_curvature", (line_curvature(sig_c, alg) - rho_c).max_abs(), tol));
  rep.checks.push_back(CheckResult::of(
      "rho_b.line_curvature", (line_curvature(sig_b, alg) - rho_b).max_abs(), tol));

  // balanced + ddc-closed forces Kahler
  if (std::sqrt(th2) < 1e-10 && inv.ddc_omega.max_abs() < 1e-10) {
    rep.checks.push_back(
        CheckResult::of("balanced.strong_kt_kahler", std::sqrt(inv.norm_domega2), tol));
  } else {
    rep.checks.push_back(CheckResult::not_applicable(
        "balanced.strong_kt_kahler", "structure is not balanced with ddc Omega = 0"));
  }
  return rep;
}

// Weyl-connection suite: the skew Ricci identity always, and the comparisons
// with the Bismut Ricci form whenever the Weyl connection preserves J
// (dimension 4, or locally conformally Kahler).
inline SuiteReport weyl_suite(const LieAlgebra& alg, const HermitianStructure& herm,
                              double tol = 1e-9) {
  SuiteReport rep;
  rep.suite = "weyl";
  const HermitianInvariants inv = hermitian_invariants(alg, herm);
  const int n = inv.n;
  const int N = herm.dim();

  const ConnectionCoefficients weyl = connection(alg, herm, ConnectionKind::Weyl);
  const CurvatureData curv_w = curvature(weyl, alg, herm);

  rep.checks.push_back(CheckResult::of(
      "weyl.skew_ricci", (curv_w.ricci_skew - cplx(0.5 * n) * inv.dtheta).max_abs(), tol));

  const double lck_residual = (inv.domega - wedge(inv.lee.theta, inv.omega)).max_abs();
  const double dtheta_norm = inv.dtheta.max_abs();
  const bool dim4 = (N == 4);
  const bool lck = lck_residual < 1e-10 && dtheta_norm < 1e-10;
  char premise[160];
  std::snprintf(premise, sizeof premise,
                "dim=%d, |dOmega - theta^Omega|=%.3e, |dtheta|=%.3e", N, lck_residual,
                dtheta_norm);

  if (dim4)
    rep.checks.push_back(CheckResult::of("weyl.dim4_lee_wedge", lck_residual, tol));

  if (!dim4 && !lck) {
    for (const char* name : {"weyl.preserves_J", "weyl.rW_is_11", "weyl.line_connection",
                             "weyl.line_curvature", "weyl.lck_ricci", "weyl.surface_ricci",
                             "weyl.rhoW_decomposition"})
      rep.checks.push_back(CheckResult::not_applicable(name, premise));
    return rep;
  }

  rep.checks.push_back(
      CheckResult::of("weyl.preserves_J", hermitian_residual(weyl, herm.J), 1e-10));

  const InvariantForm& rW = curv_w.ricci_form;
  const double off11 =
      pq_project(rW, herm.J, 2, 0).max_abs() + pq_project(rW, herm.J, 0, 2).max_abs();
  rep.checks.push_back(CheckResult::of("weyl.rW_is_11", off11, tol));

  const Eigen::MatrixXcd W10 = type10_basis(herm.J);
  Eigen::MatrixXcd frame(N, N);
  frame.leftCols(n) = W10;
  frame.rightCols(n) = W10.conjugate();
  const Eigen::MatrixXcd coframe = frame.inverse();
  const LineConnectionForm sig_b = line_connection_form(inv.bismut, frame, coframe);
  const LineConnectionForm sig_w = line_connection_form(weyl, frame, coframe);

  // sigma^B = sigma^W - ((n-2)/2) i J theta + (n/2) theta
  InvariantForm d104 = sig_b.sigma - sig_w.sigma;
  d104 += cplx(0, 0.5 * (n - 2)) * inv.lee.jtheta;
  d104 -= cplx(0.5 * n) * inv.lee.theta;
  rep.checks.push_back(CheckResult::of("weyl.line_connection", d104.max_abs(), tol));

  // i rho^B = i rho^W - ((n-2)/2) i dJtheta + (n/2) dtheta
  const InvariantForm rho_w = line_curvature(sig_w, alg);
  InvariantForm d105 = inv.curv_bismut.ricci_form - rho_w;
  d105 += cplx(0.5 * (n - 2)) * inv.djtheta;
  d105 += cplx(0, 0.5 * n) * inv.dtheta;
  rep.checks.push_back(CheckResult::of("weyl.line_curvature", d105.max_abs(), tol));

  if (lck) {
    InvariantForm d102 = inv.curv_bismut.ricci_form - rW;
    d102 += cplx(0.5 * (n - 2)) * inv.djtheta;
    rep.checks.push_back(CheckResult::of("weyl.lck_ricci", d102.max_abs(), tol));
  } else {
    rep.checks.push_back(CheckResult::not_applicable("weyl.lck_ricci", premise));
  }

  if (dim4) {
    const InvariantForm off_part = pq_project(inv.djtheta, herm.J, 2, 0) +
                                   pq_project(inv.djtheta, herm.J, 0, 2);
    InvariantForm d103 = inv.curv_bismut.ricci_form - rW + off_part;
    rep.checks.push_back(CheckResult::of("weyl.surface_ricci", d103.max_abs(), tol));
    // rho^W = r^W - (dJtheta)^{(2,0)+(0,2)} + i dtheta
    InvariantForm ddir = rho_w - rW + off_part;
    ddir -= cplx(0, 1) * inv.dtheta;
    rep.checks.push_back(CheckResult::of("weyl.rhoW_decomposition", ddir.max_abs(), tol));
  } else {
    rep.checks.push_back(CheckResult::not_applicable("weyl.surface_ricci", premise));
    rep.checks.push_back(CheckResult::not_applicable("weyl.rhoW_decomposition", premise));
  }
  return rep;
}

// Generalized Hopf: Lee form parallel for the Levi-Civita connection and
// nonzero; then dJtheta = |theta|^2 Omega + theta ^ Jtheta must hold.
inline SuiteReport generalized_hopf_check(const LieAlgebra& alg, const HermitianStructure& herm,
                                          double tol = 1e-9) {
  SuiteReport rep;
  rep.suite = "hopf";
  const HermitianInvariants inv = hermitian_invariants(alg, herm);

  // (nabla_X theta)(Y) = -theta(nabla_X Y) on invariant data
  const int N = herm.dim();
  const Eigen::VectorXd th = inv.lee.theta.coeff().real();
  Eigen::MatrixXd grad(N, N);
  for (int i = 0; i < N; ++i) grad.row(i) = -(th.transpose() * inv.lc[i]);
  const double parallel_residual = grad.cwiseAbs().maxCoeff();
  const bool nonzero = std::sqrt(inv.lee.norm2) > 1e-10;

  if (parallel_residual < 1e-10 && nonzero) {
    rep.checks.push_back(CheckResult::of("hopf.lee_parallel", parallel_residual, 1e-10));
    InvariantForm d427 = inv.djtheta - cplx(inv.lee.norm2) * inv.omega -
                         wedge(inv.lee.theta, inv.lee.jtheta);
    rep.checks.push_back(CheckResult::of("hopf.djtheta_identity", d427.max_abs(), tol));
  } else {
    char note[120];
    std::snprintf(note, sizeof note, "|nabla theta|=%.3e, |theta|^2=%.3e", parallel_residual,
                  inv.lee.norm2);
    rep.checks.push_back(CheckResult::not_applicable("hopf.lee_parallel", note));
    rep.checks.push_back(CheckResult::not_applicable("hopf.djtheta_identity", note));
  }
  return rep;
}

}  // namespace hermlie
