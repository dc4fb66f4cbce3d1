#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hermlie/dolbeault.hpp"
#include "hermlie/suites.hpp"

namespace hermlie {

// Clifford module structure on the graded space ⊕_p Λ^{0,p} (dimension 2^n),
// built from the J-adapted orthonormal real frame x_j = (Z_j + conj Z_j)/√2,
// y_j = i(Z_j - conj Z_j)/√2.  A real 1-form xi acts by
//   c(xi) = √2 ( xi^{0,1} ∧ .  -  contraction by the dual of xi^{1,0} ),
// which gives c(xi)^2 = -|xi|^2 Id; k-forms act by antisymmetrized products
// of the frame actions.  Calibration facts locked by tests: c(Omega) is
// (n-2p) i on Λ^{0,p}, and (0,2)-forms raise the degree by two.
class CliffordAction {
 public:
  CliffordAction(const SamelsonFrame& fr, const HermitianStructure& herm) : n_(fr.n) {
    const int N = fr.N;
    adapted_.resize(N, N);
    for (int j = 0; j < n_; ++j) {
      const Eigen::VectorXcd z = fr.s_basis.col(j);
      const Eigen::VectorXcd x = (z + z.conjugate()) / std::sqrt(2.0);
      const Eigen::VectorXcd y = cplx(0, 1) * (z - z.conjugate()) / std::sqrt(2.0);
      if (x.imag().cwiseAbs().maxCoeff() > 1e-12 || y.imag().cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("CliffordAction: frame is not conjugation-symmetric");
      adapted_.col(2 * j) = x.real();
      adapted_.col(2 * j + 1) = y.real();
    }
    const double ortho =
        (adapted_.transpose() * herm.g * adapted_ - Eigen::MatrixXd::Identity(N, N))
            .cwiseAbs()
            .maxCoeff();
    if (ortho > 1e-9)
      throw std::invalid_argument("CliffordAction: coframe is not g-orthonormal");
    double j_adapted = 0.0;
    for (int j = 0; j < n_; ++j)
      j_adapted = std::max(j_adapted,
                           (herm.J * adapted_.col(2 * j) - adapted_.col(2 * j + 1)).norm());
    if (j_adapted > 1e-9)
      throw std::invalid_argument("CliffordAction: coframe is not J-adapted");

    offsets_ = graded_offsets(n_);
    const Eigen::Index total = offsets_[static_cast<std::size_t>(n_) + 1];
    create_.reserve(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(total, total);
      for (int p = 0; p < n_; ++p) {
        const auto dom = all_tuples(n_, p);
        Tuple ins;
        for (std::size_t t = 0; t < dom.size(); ++t) {
          const int pos = tuple_insert(dom[t], j, ins);
          if (pos < 0) continue;
          const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
          E(offsets_[static_cast<std::size_t>(p) + 1] + tuple_rank(ins, n_),
            offsets_[static_cast<std::size_t>(p)] + static_cast<Eigen::Index>(t)) = sign;
        }
      }
      create_.push_back(E);
    }
    frame_action_.reserve(2 * static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      const Eigen::MatrixXcd& E = create_[static_cast<std::size_t>(j)];
      const Eigen::MatrixXcd I = E.adjoint();
      frame_action_.push_back(E - I);                // c(x^j)
      frame_action_.push_back(cplx(0, 1) * (E + I)); // c(y^j)
    }
  }

  int n() const { return n_; }
  Eigen::Index dim() const { return offsets_[static_cast<std::size_t>(n_) + 1]; }
  const std::vector<Eigen::Index>& offsets() const { return offsets_; }
  const Eigen::MatrixXd& adapted_frame() const { return adapted_; }

  const Eigen::MatrixXcd& frame_action(int idx) const {
    return frame_action_[static_cast<std::size_t>(idx)];
  }
  const Eigen::MatrixXcd& creation(int j) const { return create_[static_cast<std::size_t>(j)]; }

  // Quantization of an arbitrary invariant form (e-basis coefficients).
  Eigen::MatrixXcd action(const InvariantForm& a) const {
    const int k = a.degree();
    const Eigen::Index total = dim();
    if (k == 0) return a.coeff()(0) * Eigen::MatrixXcd::Identity(total, total);
    const InvariantForm ad = pullback(a, adapted_.cast<cplx>());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
    const auto tuples = all_tuples(2 * n_, k);
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const cplx c = ad.coeff()(static_cast<Eigen::Index>(t));
      if (std::abs(c) < 1e-300) continue;
      Eigen::MatrixXcd prod = frame_action_[static_cast<std::size_t>(tuples[t][0])];
      for (std::size_t s = 1; s < tuples[t].size(); ++s)
        prod = prod * frame_action_[static_cast<std::size_t>(tuples[t][s])];
      out += c * prod;
    }
    return out;
  }

  Eigen::MatrixXcd block(const Eigen::MatrixXcd& op, int p_out, int p_in) const {
    return op.block(offsets_[static_cast<std::size_t>(p_out)], offsets_[static_cast<std::size_t>(p_in)],
                    binomial(n_, p_out), binomial(n_, p_in));
  }

  // Derivation extension of an endomorphism m of conj(s) acting on the
  // coframe, sum_{st} m_{st} E_s I_t.
  Eigen::MatrixXcd derivation(const Eigen::MatrixXcd& m) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
    for (int s = 0; s < n_; ++s)
      for (int t = 0; t < n_; ++t) {
        if (m(s, t) == cplx(0.0)) continue;
        out += m(s, t) * (create_[static_cast<std::size_t>(s)] *
                          create_[static_cast<std::size_t>(t)].adjoint());
      }
    return out;
  }

 private:
  int n_ = 0;
  Eigen::MatrixXd adapted_;
  std::vector<Eigen::Index> offsets_;
  std::vector<Eigen::MatrixXcd> create_;
  std::vector<Eigen::MatrixXcd> frame_action_;
};

// Real (1,1)-form with Hermitian coefficient matrix H on the (1,0) coframe:
// alpha = -i sum_{jk} H_{jk} zeta^j ^ conj(zeta^k).  H = Id gives Omega, and
// positive definite H gives a positive form.
inline InvariantForm form_from_hermitian_matrix(const SamelsonFrame& fr,
                                                const Eigen::MatrixXcd& H) {
  InvariantForm out(fr.N, 2);
  for (int j = 0; j < fr.n; ++j)
    for (int k = 0; k < fr.n; ++k) {
      if (H(j, k) == cplx(0.0)) continue;
      out += cplx(0, -1) * H(j, k) * wedge(fr.zeta_form(j), fr.zeta_bar_form(k));
    }
  return out;
}

struct SpectralSignReport {
  int p = 0;
  double trace_a = 0.0;          // a = sum_j alpha(J e_j, e_j)
  double min_A_eigenvalue = 0.0; // spectrum of A(X,Y) = alpha(JX,Y)
  std::vector<double> plus_eigenvalues;   // (a/2) Id + i c(alpha) on block p
  std::vector<double> minus_eigenvalues;  // (-a/2) Id + i c(alpha) on block p
  double hermiticity = 0.0;
  double off_11_residual = 0.0;
};

// Spectral report for (±a/2) Id + i c(alpha) on Λ^{0,p}; rejects forms with a
// (2,0)/(0,2) component.
inline SpectralSignReport spectral_sign_report(const InvariantForm& alpha, int p, const CliffordAction& cl,
                                    const HermitianStructure& herm) {
  SpectralSignReport rep;
  rep.p = p;
  rep.off_11_residual = pq_project(alpha, herm.J, 2, 0).max_abs() +
                        pq_project(alpha, herm.J, 0, 2).max_abs();
  if (rep.off_11_residual > 1e-10 * std::max(1.0, alpha.max_abs()))
    throw std::invalid_argument("spectral_sign_report: form is not of type (1,1)");
  rep.trace_a = form_j_trace(alpha, herm);

  Eigen::MatrixXd A(herm.dim(), herm.dim());
  for (int i = 0; i < herm.dim(); ++i)
    for (int j = 0; j < herm.dim(); ++j) {
      double acc = 0.0;
      for (int m = 0; m < herm.dim(); ++m)
        if (herm.J(m, i) != 0.0) acc += herm.J(m, i) * detail::form_value(alpha, {m, j});
      A(i, j) = acc;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esA(0.5 * (A + A.transpose()));
  rep.min_A_eigenvalue = esA.eigenvalues().minCoeff();

  const Eigen::MatrixXcd op = cplx(0, 1) * cl.block(cl.action(alpha), p, p);
  rep.hermiticity = (op - op.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd herm_op = 0.5 * (op + op.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm_op);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    rep.plus_eigenvalues.push_back(0.5 * rep.trace_a + es.eigenvalues()(i));
    rep.minus_eigenvalues.push_back(-0.5 * rep.trace_a + es.eigenvalues()(i));
  }
  return rep;
}

// Calibration suite: Clifford relations, the Omega block eigenvalues, the
// wedge-with-Omega operator identity on random (1,1)-forms, and the
// positivity sign assertions on random positive forms.
inline SuiteReport clifford_suite(const LieAlgebra& alg, const HermitianStructure& herm,
                                  const SamelsonFrame& fr, std::uint64_t seed = kDefaultSeed,
                                  int trials = 25) {
  (void)alg;
  SuiteReport rep;
  rep.suite = "clifford";
  const CliffordAction cl(fr, herm);
  const Eigen::Index d = cl.dim();
  const int n = fr.n;

  double rel = 0.0;
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i; j < 2 * n; ++j) {
      const double target = (i == j) ? -2.0 : 0.0;
      rel = std::max(rel, (cl.frame_action(i) * cl.frame_action(j) +
                           cl.frame_action(j) * cl.frame_action(i) -
                           target * Eigen::MatrixXcd::Identity(d, d))
                              .cwiseAbs()
                              .maxCoeff());
    }
  rep.checks.push_back(CheckResult::of("clifford.relations", rel, 1e-12));

  const Eigen::MatrixXcd omega_op = cl.action(herm.kahler_form());
  double omega_res = 0.0;
  for (int p = 0; p <= n; ++p) {
    const Eigen::Index dp = binomial(n, p);
    omega_res = std::max(omega_res, (cl.block(omega_op, p, p) -
                                     cplx(0, double(n - 2 * p)) *
                                         Eigen::MatrixXcd::Identity(dp, dp))
                                        .cwiseAbs()
                                        .maxCoeff());
  }
  rep.checks.push_back(CheckResult::of("omega.block_eigenvalues", omega_res, 1e-12));

  std::mt19937_64 gen(seed ^ 0xc11ff0);
  std::normal_distribution<double> dist(0.0, 1.0);
  auto random_hermitian = [&](bool positive) {
    Eigen::MatrixXcd B(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) B(r, c) = cplx(dist(gen), dist(gen));
    if (positive) return Eigen::MatrixXcd(B.adjoint() * B +
                                          0.05 * Eigen::MatrixXcd::Identity(n, n));
    return Eigen::MatrixXcd(0.5 * (B + B.adjoint()));
  };

  double res_255 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const InvariantForm alpha = form_from_hermitian_matrix(fr, random_hermitian(false));
    const Eigen::MatrixXcd lhs = cl.action(wedge(alpha, herm.kahler_form()));
    const Eigen::MatrixXcd aop = cl.action(alpha);
    const double pairing = inner(alpha, herm.kahler_form(), herm.g).real();
    for (int p = 0; p <= n; ++p) {
      const Eigen::Index dp = binomial(n, p);
      res_255 = std::max(res_255, (cl.block(lhs, p, p) -
                                   cplx(0, double(n - 2 * p)) * cl.block(aop, p, p) -
                                   pairing * Eigen::MatrixXcd::Identity(dp, dp))
                                      .cwiseAbs()
                                      .maxCoeff());
    }
  }
  rep.checks.push_back(CheckResult::of("omega_wedge.operator_identity", res_255, 1e-10));

  double sign_violation = 0.0;
  for (int t = 0; t < trials; ++t) {
    const InvariantForm alpha = form_from_hermitian_matrix(fr, random_hermitian(true));
    for (int p = 0; p <= n; ++p) {
      const SpectralSignReport l2 = spectral_sign_report(alpha, p, cl, herm);
      for (double ev : l2.plus_eigenvalues)
        sign_violation = std::max(sign_violation, (p == 0) ? std::abs(ev) : std::max(0.0, -ev));
      for (double ev : l2.minus_eigenvalues)
        sign_violation = std::max(sign_violation, (p == n) ? std::abs(ev) : std::max(0.0, ev));
    }
  }
  rep.checks.push_back(CheckResult::of("positivity.spectral_signs", sign_violation, 1e-10));
  return rep;
}

struct LichnerowiczTerms {
  Eigen::MatrixXcd connection_laplacian;  // (nabla^{B,C})* nabla^{B,C}
  double scalar_term = 0.0;               // s/4
  double torsion_term = 0.0;              // -|d^c Omega|^2 / 8
  Eigen::MatrixXcd ricci_action;          // (i/2) c(rho^C)
  Eigen::MatrixXcd ddc_action;            // (1/4) c(dd^c Omega)
  Eigen::MatrixXcd total;
};

// Right-hand side of the Dolbeault-square identity
//   box^2 = (nabla^{B,C})* nabla^{B,C} + s/4 + (i/2) c(rho^C)
//           + (1/4) c(dd^c Omega) - (1/8)|d^c Omega|^2
// assembled on the invariant complex of a bi-invariant structure, where the
// Bismut connection is flat and nabla^{B,C} acts by the purely algebraic
// shift of the line-bundle twist.
inline LichnerowiczTerms lichnerowicz_rhs(const LieAlgebra& alg, const HermitianStructure& herm,
                                          const SamelsonFrame& fr, const CliffordAction& cl) {
  if (!herm.bi_invariant(alg))
    throw std::invalid_argument(
        "lichnerowicz_rhs: requires a bi-invariant metric (invariant forms are not "
        "Laplacian-stable otherwise)");
  const HermitianInvariants inv = hermitian_invariants(alg, herm);
  const int n = fr.n;
  const Eigen::Index total = cl.dim();
  LichnerowiczTerms out;

  // Connection coefficients of nabla^B restricted to the (1,0) frame; the
  // derivation extension acts on the conjugate coframe.
  const Eigen::MatrixXd F = herm.orthonormal_frame();
  std::vector<Eigen::MatrixXcd> covariant;
  Eigen::VectorXd divergence = Eigen::VectorXd::Zero(fr.N);
  for (int a = 0; a < fr.N; ++a) {
    Eigen::MatrixXcd gamma_a = Eigen::MatrixXcd::Zero(fr.N, fr.N);
    for (int i = 0; i < fr.N; ++i) gamma_a += F(i, a) * inv.bismut[i].cast<cplx>();
    const Eigen::MatrixXcd on_frame = fr.coframe * gamma_a * fr.frame;
    // action on the conjugate coframe: -conj(A) with A the s-block
    const Eigen::MatrixXcd A = on_frame.bottomRightCorner(n, n);
    const double jtheta_a = (inv.lee.jtheta.coeff().real().transpose() * F.col(a))(0);
    Eigen::MatrixXcd op = cl.derivation(-A.transpose()) +
                          cplx(0, 0.5 * (n - 1) * jtheta_a) *
                              Eigen::MatrixXcd::Identity(total, total);
    covariant.push_back(op);
    for (int i = 0; i < fr.N; ++i) divergence += F(i, a) * (inv.lc[i] * F.col(a));
  }
  if (divergence.cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error("lichnerowicz_rhs: orthonormal frame has nonzero divergence");

  out.connection_laplacian = Eigen::MatrixXcd::Zero(total, total);
  for (const auto& op : covariant) out.connection_laplacian += op.adjoint() * op;

  out.scalar_term = 0.25 * inv.curv_lc.s;
  out.torsion_term = -0.125 * inner(inv.dc_omega, inv.dc_omega, herm.g).real();
  out.ricci_action = cplx(0, 0.5) * cl.action(inv.curv_chern.ricci_form);
  out.ddc_action = 0.25 * cl.action(inv.ddc_omega);
  out.total = out.connection_laplacian + out.ricci_action + out.ddc_action +
              (out.scalar_term + out.torsion_term) * Eigen::MatrixXcd::Identity(total, total);
  return out;
}

namespace detail {

// Derivation action of nabla^B on the conjugate coframe for one direction,
// used to evaluate |nabla^B psi|^2 on invariant sections.
inline std::vector<Eigen::MatrixXcd> bismut_on_forms(const HermitianInvariants& inv,
                                                     const HermitianStructure& herm,
                                                     const SamelsonFrame& fr,
                                                     const CliffordAction& cl) {
  const Eigen::MatrixXd F = herm.orthonormal_frame();
  std::vector<Eigen::MatrixXcd> ops;
  for (int a = 0; a < fr.N; ++a) {
    Eigen::MatrixXcd gamma_a = Eigen::MatrixXcd::Zero(fr.N, fr.N);
    for (int i = 0; i < fr.N; ++i) gamma_a += F(i, a) * inv.bismut[i].cast<cplx>();
    const Eigen::MatrixXcd A = (fr.coframe * gamma_a * fr.frame).bottomRightCorner(fr.n, fr.n);
    ops.push_back(cl.derivation(-A.transpose()));
  }
  return ops;
}

}  // namespace detail

// Verification of the Dolbeault-square identity and of the quadratic-form
// identity behind the vanishing argument, on the invariant complex.
inline SuiteReport lichnerowicz_verify(const LieAlgebra& alg, const HermitianStructure& herm,
                                       const SamelsonFrame& fr, std::uint64_t seed = kDefaultSeed,
                                       double tol = 1e-8) {
  SuiteReport rep;
  rep.suite = "lichnerowicz";
  const CliffordAction cl(fr, herm);
  const HermitianInvariants inv = hermitian_invariants(alg, herm);
  const LichnerowiczTerms rhs = lichnerowicz_rhs(alg, herm, fr, cl);
  const Eigen::MatrixXcd box = box_operator(alg, fr);
  const Eigen::MatrixXcd box2 = box * box;

  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(box2 - rhs.total);
    const double norm = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    rep.checks.push_back(CheckResult::of("box_square.matrix_identity", norm, tol));
  }

  // internal consistency: box^2 = 2(dbar dbar* + dbar* dbar) blockwise
  {
    double worst = 0.0;
    const auto off = graded_offsets(fr.n);
    for (int p = 0; p <= fr.n; ++p) {
      const Eigen::MatrixXcd lap = dolbeault_laplacian(alg, fr, p);
      worst = std::max(worst, (box2.block(off[static_cast<std::size_t>(p)],
                                          off[static_cast<std::size_t>(p)], lap.rows(),
                                          lap.cols()) -
                               2.0 * lap)
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    rep.checks.push_back(CheckResult::of("box2.equals_twice_laplacian", worst, 1e-12));
  }

  // quadratic-form identity on random invariant sections:
  // |box psi|^2 = |nabla^B psi|^2 + (n-1) Re(i c(Jtheta) box psi, psi)
  //   + (1/4)((b + 3(n-1)d*theta + (n-1)^2|theta|^2 - |dOmega|^2) psi, psi)
  //   + (i/2)(c(rho^B) psi, psi) + (1/4)(c(dd^c Omega) psi, psi)
  {
    const auto nabla_b = detail::bismut_on_forms(inv, herm, fr, cl);
    const Eigen::MatrixXcd jtheta_cl = cl.action(inv.lee.jtheta);
    const Eigen::MatrixXcd rho_b_cl = cl.action(inv.curv_bismut.ricci_form);
    const Eigen::MatrixXcd ddc_cl = cl.action(inv.ddc_omega);
    const double scalar = inv.curv_bismut.b + 3 * (fr.n - 1) * inv.dstar_theta +
                          double(fr.n - 1) * (fr.n - 1) * inv.lee.norm2 - inv.norm_domega2;
    std::mt19937_64 gen(seed ^ 0x11ca9d);
    std::normal_distribution<double> dist(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXcd psi(cl.dim());
      for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = cplx(dist(gen), dist(gen));
      const Eigen::VectorXcd box_psi = box * psi;
      const double lhs = box_psi.squaredNorm();
      double rhs16 = 0.0;
      for (const auto& op : nabla_b) rhs16 += (op * psi).squaredNorm();
      rhs16 += (fr.n - 1) * (cplx(0, 1) * (jtheta_cl * box_psi)).dot(psi).real();
      rhs16 += 0.25 * scalar * psi.squaredNorm();
      rhs16 += (cplx(0, 0.5) * (rho_b_cl * psi)).dot(psi).real();
      rhs16 += 0.25 * (ddc_cl * psi).dot(psi).real();
      worst = std::max(worst, std::abs(lhs - rhs16) / std::max(1.0, std::abs(lhs)));
    }
    rep.checks.push_back(CheckResult::of("box_norm.random_sections", worst, tol));
  }

  // harmonic sections: every term of the vanishing identity is itself zero
  {
    const auto nabla_b = detail::bismut_on_forms(inv, herm, fr, cl);
    const InvariantForm rho_b_11 = pq_project(inv.curv_bismut.ricci_form, herm.J, 1, 1);
    const Eigen::MatrixXcd rho_cl = cl.action(rho_b_11);
    const auto off = graded_offsets(fr.n);
    double worst = 0.0;
    for (int p = 0; p <= fr.n; ++p) {
      const HodgeResult hr = hodge_number(alg, fr, p);
      for (int c = 0; c < hr.kernel.cols(); ++c) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(cl.dim());
        psi.segment(off[static_cast<std::size_t>(p)], hr.kernel.rows()) = hr.kernel.col(c);
        double grad = 0.0;
        for (const auto& op : nabla_b) grad += (op * psi).squaredNorm();
        const double term_b = 0.25 * inv.curv_bismut.b * psi.squaredNorm();
        const double term_rho = (cplx(0, 0.5) * (rho_cl * psi)).dot(psi).real();
        worst = std::max({worst, grad, std::abs(term_b), std::abs(term_rho)});
      }
    }
    rep.checks.push_back(CheckResult::of("harmonic.term_vanishing", worst, tol));
  }
  return rep;
}

}  // namespace hermlie
