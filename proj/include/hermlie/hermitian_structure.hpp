#pragma once

#include <Eigen/Dense>

#include "hermlie/lie_algebra.hpp"

namespace hermlie {

// Metric + complex structure on the algebra, with the Kahler form convention
// Omega(X,Y) = g(X,JY).
struct HermitianStructure {
  Eigen::MatrixXd g;
  Eigen::MatrixXd J;

  int dim() const { return static_cast<int>(g.rows()); }
  int complex_dim() const { return dim() / 2; }

  double complex_structure_residual() const {
    const int n = dim();
    return (J * J + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  }

  double compatibility_residual() const {
    return (J.transpose() * g * J - g).cwiseAbs().maxCoeff();
  }

  bool compatible(double tol = 1e-10) const {
    return complex_structure_residual() < tol && compatibility_residual() < tol;
  }

  // g([X,Y],Z) + g(Y,[X,Z]) = 0 on basis triples.
  double bi_invariance_residual(const LieAlgebra& alg) const {
    const int n = dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXd adi = alg.ad_basis(i);
      worst = std::max(worst, (adi.transpose() * g + g * adi).cwiseAbs().maxCoeff());
    }
    return worst;
  }

  bool bi_invariant(const LieAlgebra& alg, double tol = 1e-10) const {
    return bi_invariance_residual(alg) < tol;
  }

  InvariantForm kahler_form() const {
    const int n = dim();
    InvariantForm omega(n, 2);
    const Eigen::MatrixXd GJ = g * J;  // Omega(e_i,e_j) = (g J)_{ij}
    Tuple t(2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        t[0] = i;
        t[1] = j;
        omega.set_coefficient(t, GJ(i, j));
      }
    return omega;
  }

  // g-orthonormal frame as columns (F^T g F = Id).
  Eigen::MatrixXd orthonormal_frame() const {
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    const Eigen::MatrixXd L = llt.matrixL();
    return L.transpose().inverse();
  }

  // Metric dual of a 1-form: v = g^{-1} theta.
  Eigen::VectorXcd sharp(const InvariantForm& theta) const {
    return g.inverse().cast<cplx>() * theta.coeff();
  }

  // J acting on a 1-form: (J a)(X) = -a(JX).
  InvariantForm j_covector(const InvariantForm& a) const {
    InvariantForm out(a.ambient(), 1);
    out.coeff() = -(J.transpose().cast<cplx>() * a.coeff());
    return out;
  }
};

// d^c = i(dbar - del), computed through the (p,q) decomposition of d on each
// pure component.  Requires an integrable J.
inline InvariantForm dc_differential(const InvariantForm& a, const LieAlgebra& alg,
                                     const Eigen::MatrixXd& J) {
  const int k = a.degree();
  InvariantForm out(a.ambient(), k + 1);
  const BigradedForm parts = bigrade(a, J);
  for (const auto& kv : parts.components) {
    const int p = kv.first.first;
    const int q = kv.first.second;
    const InvariantForm d_part = ce_differential(kv.second, alg);
    const BigradedForm d_split = bigrade(d_part, J);
    out += cplx(0, 1) * (d_split.component(p, q + 1) - d_split.component(p + 1, q));
  }
  return out;
}

}  // namespace hermlie
