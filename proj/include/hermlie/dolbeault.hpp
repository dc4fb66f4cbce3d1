#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <string>
#include <vector>

#include "hermlie/samelson.hpp"

namespace hermlie {

// Dense matrix of an operator between (0,p) degrees of the invariant
// Dolbeault complex, carrying its domain/codomain descriptors.
struct OperatorMatrix {
  int n = 0;      // complex dimension of the frame
  int p_in = 0;   // domain degree
  int p_out = 0;  // codomain degree
  Eigen::MatrixXcd M;

  static OperatorMatrix zero(int n, int p_in, int p_out) {
    OperatorMatrix out;
    out.n = n;
    out.p_in = p_in;
    out.p_out = p_out;
    out.M = Eigen::MatrixXcd::Zero(binomial(n, p_out), binomial(n, p_in));
    return out;
  }

  OperatorMatrix compose(const OperatorMatrix& inner_op) const {
    if (inner_op.p_out != p_in || inner_op.n != n)
      throw std::invalid_argument("OperatorMatrix: descriptor mismatch in composition");
    OperatorMatrix out;
    out.n = n;
    out.p_in = inner_op.p_in;
    out.p_out = p_out;
    out.M = M * inner_op.M;
    return out;
  }
};

namespace detail {

// Value of the basis form zbar^K on argument vectors given in zbar
// coordinates (columns of V): the K-rows minor of V.
inline cplx basis_form_value(const Tuple& K, const Eigen::MatrixXcd& V) {
  const int p = static_cast<int>(K.size());
  if (p == 0) return 1.0;
  Eigen::MatrixXcd sub(p, p);
  for (int r = 0; r < p; ++r) sub.row(r) = V.row(K[static_cast<std::size_t>(r)]);
  return sub.determinant();
}

// Brackets of the conjugate frame, in conj(s) coordinates:
// cc[a][b] = coords of [zbar_a, zbar_b] (the s-component vanishes by
// integrability and is checked during frame construction).
inline std::vector<std::vector<Eigen::VectorXcd>> conj_bracket_table(const LieAlgebra& alg,
                                                                     const SamelsonFrame& fr) {
  std::vector<std::vector<Eigen::VectorXcd>> cc(
      static_cast<std::size_t>(fr.n),
      std::vector<Eigen::VectorXcd>(static_cast<std::size_t>(fr.n)));
  for (int a = 0; a < fr.n; ++a)
    for (int b = 0; b < fr.n; ++b) {
      const Eigen::VectorXcd w = alg.bracket(fr.zbar(a), fr.zbar(b));
      cc[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          fr.frame_coords(w).tail(fr.n);
    }
  return cc;
}

// proj_conj[k][a] = conj(s)-coordinates of pbar([Z_k, zbar_a]).
inline std::vector<std::vector<Eigen::VectorXcd>> mixed_bracket_table(const LieAlgebra& alg,
                                                                      const SamelsonFrame& fr) {
  std::vector<std::vector<Eigen::VectorXcd>> mix(
      static_cast<std::size_t>(fr.n),
      std::vector<Eigen::VectorXcd>(static_cast<std::size_t>(fr.n)));
  for (int k = 0; k < fr.n; ++k)
    for (int a = 0; a < fr.n; ++a) {
      const Eigen::VectorXcd w = alg.bracket(fr.s_basis.col(k), fr.zbar(a));
      mix[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] =
          fr.frame_coords(w).tail(fr.n);
    }
  return mix;
}

}  // namespace detail

// Matrix of dbar: (0,p) -> (0,p+1), evaluated on conjugate frame vectors:
// (dbar phi)(W_0..W_p) = sum_{a<b} (-1)^{a+b} phi([W_a,W_b], ..hat a..hat b..).
inline OperatorMatrix dbar_matrix(const LieAlgebra& alg, const SamelsonFrame& fr, int p) {
  if (p < 0 || p > fr.n - 1) throw std::invalid_argument("dbar_matrix: degree out of range");
  OperatorMatrix out = OperatorMatrix::zero(fr.n, p, p + 1);
  const auto cc = detail::conj_bracket_table(alg, fr);
  const auto dom = all_tuples(fr.n, p);
  const auto cod = all_tuples(fr.n, p + 1);
  for (std::size_t col = 0; col < dom.size(); ++col) {
    for (std::size_t row = 0; row < cod.size(); ++row) {
      const Tuple& I = cod[row];
      cplx acc = 0.0;
      for (int a = 0; a <= p; ++a)
        for (int b = a + 1; b <= p; ++b) {
          const Eigen::VectorXcd& w =
              cc[static_cast<std::size_t>(I[static_cast<std::size_t>(a)])]
                [static_cast<std::size_t>(I[static_cast<std::size_t>(b)])];
          if (w.cwiseAbs().maxCoeff() < 1e-300) continue;
          Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(fr.n, p);
          V.col(0) = w;
          int c = 1;
          for (int s = 0; s <= p; ++s) {
            if (s == a || s == b) continue;
            V(I[static_cast<std::size_t>(s)], c++) = 1.0;
          }
          const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
          acc += sign * detail::basis_form_value(dom[col], V);
        }
      out.M(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = acc;
    }
  }
  return out;
}

// Matrix of dbar*: (0,p) -> (0,p-1) from the frame formula
// (dbar* phi)(W_1..W_{p-1}) =
//   1/2 sum_j sum_k (-1)^{j-1} phi(zbar_k, pbar([Z_k, W_j]), ..hat j..).
// The 1/2 normalizes the double slot count to the unit-norm coframe
// convention <zbar^j, zbar^k> = delta used throughout this library (with
// |zbar^j|^2 = 2 the prefactor is absorbed).  In the orthonormal zbar basis
// the result must coincide with the adjoint of dbar; the test suite also
// cross-validates it against the Gram-adjoint codifferential of the full
// real complex.
inline OperatorMatrix dbar_star_matrix(const LieAlgebra& alg, const SamelsonFrame& fr, int p) {
  if (p < 1 || p > fr.n) throw std::invalid_argument("dbar_star_matrix: degree out of range");
  OperatorMatrix out = OperatorMatrix::zero(fr.n, p, p - 1);
  const auto mix = detail::mixed_bracket_table(alg, fr);
  const auto dom = all_tuples(fr.n, p);
  const auto cod = all_tuples(fr.n, p - 1);
  for (std::size_t col = 0; col < dom.size(); ++col) {
    for (std::size_t row = 0; row < cod.size(); ++row) {
      const Tuple& Kp = cod[row];
      cplx acc = 0.0;
      for (int a = 0; a < p - 1; ++a)
        for (int k = 0; k < fr.n; ++k) {
          const Eigen::VectorXcd& w =
              mix[static_cast<std::size_t>(k)]
                 [static_cast<std::size_t>(Kp[static_cast<std::size_t>(a)])];
          if (w.cwiseAbs().maxCoeff() < 1e-300) continue;
          Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(fr.n, p);
          V(k, 0) = 1.0;
          V.col(1) = w;
          int c = 2;
          for (int s = 0; s < p - 1; ++s) {
            if (s == a) continue;
            V(Kp[static_cast<std::size_t>(s)], c++) = 1.0;
          }
          const double sign = (a % 2 == 0) ? 1.0 : -1.0;
          acc += sign * detail::basis_form_value(dom[col], V);
        }
      out.M(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 0.5 * acc;
    }
  }
  return out;
}

// Dolbeault Laplacian dbar* dbar + dbar dbar* on (0,p), assembled from the
// adjoint-side formula so that the two routes cross-validate in the tests.
inline Eigen::MatrixXcd dolbeault_laplacian(const LieAlgebra& alg, const SamelsonFrame& fr, int p) {
  const Eigen::Index dim = binomial(fr.n, p);
  Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(dim, dim);
  if (p < fr.n) {
    const Eigen::MatrixXcd A = dbar_matrix(alg, fr, p).M;
    lap += A.adjoint() * A;
  }
  if (p > 0) {
    const Eigen::MatrixXcd B = dbar_matrix(alg, fr, p - 1).M;
    lap += B * B.adjoint();
  }
  return lap;
}

struct HodgeResult {
  int p = 0;
  int h = 0;
  double lambda_max = 0.0;
  double threshold = 0.0;
  bool spectral_gap_warning = false;
  std::vector<double> eigenvalues;
  Eigen::MatrixXcd kernel;  // orthonormal harmonic representatives (columns)
};

// Kernel dimension of the Dolbeault Laplacian with a relative eigenvalue
// threshold and an explicit warning band (eigenvalues within a factor 10 of
// the threshold are never silently classified).
inline HodgeResult hodge_number(const LieAlgebra& alg, const SamelsonFrame& fr, int p) {
  HodgeResult out;
  out.p = p;
  const Eigen::MatrixXcd lap = dolbeault_laplacian(alg, fr, p);
  const double herm_residual = (lap - lap.adjoint()).cwiseAbs().maxCoeff();
  if (herm_residual > 1e-12 * std::max(1.0, lap.cwiseAbs().maxCoeff()))
    throw std::runtime_error("hodge_number: Laplacian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (lap + lap.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues();
  out.lambda_max = ev.size() ? std::max(0.0, ev(ev.size() - 1)) : 0.0;
  const double scale = (out.lambda_max < 1e-14) ? 1.0 : out.lambda_max;
  out.threshold = 1e-8 * scale;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    out.eigenvalues.push_back(ev(i));
    const double lambda = std::abs(ev(i));
    if (lambda > out.threshold / 10.0 && lambda < out.threshold * 10.0)
      out.spectral_gap_warning = true;
    if (ev(i) < out.threshold) ++out.h;
  }
  out.kernel.resize(lap.rows(), out.h);
  int c = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < out.threshold) out.kernel.col(c++) = es.eigenvectors().col(i);
  return out;
}

inline std::vector<HodgeResult> hodge_numbers(const LieAlgebra& alg, const SamelsonFrame& fr) {
  std::vector<HodgeResult> out;
  for (int p = 0; p <= fr.n; ++p) out.push_back(hodge_number(alg, fr, p));
  return out;
}

struct HarmonicStructureReport {
  int p = 0;
  double worst_off_toral = 0.0;  // largest fraction of a harmonic norm outside Lambda^p(abar*)
  bool passed = false;
};

// Harmonic representatives must lie in the span of the toral conjugate
// coframe wedges, up to tolerance.
inline HarmonicStructureReport harmonic_structure_check(const LieAlgebra& alg,
                                                        const SamelsonFrame& fr, int p,
                                                        double tol = 1e-8) {
  HarmonicStructureReport rep;
  rep.p = p;
  const HodgeResult hr = hodge_number(alg, fr, p);
  const auto tuples = all_tuples(fr.n, p);
  for (int c = 0; c < hr.kernel.cols(); ++c) {
    double toral = 0.0, total = 0.0;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const double mag = std::norm(hr.kernel(static_cast<Eigen::Index>(t), c));
      total += mag;
      bool all_toral = true;
      for (int idx : tuples[t])
        if (idx < fr.m) all_toral = false;
      if (all_toral) toral += mag;
    }
    if (total > 0.0) rep.worst_off_toral = std::max(rep.worst_off_toral, 1.0 - toral / total);
  }
  rep.passed = rep.worst_off_toral <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Graded space ⊕_p Λ^{0,p}: index = offset(p) + lexicographic tuple rank.
// ---------------------------------------------------------------------------

inline std::vector<Eigen::Index> graded_offsets(int n) {
  std::vector<Eigen::Index> off(static_cast<std::size_t>(n) + 2, 0);
  for (int p = 0; p <= n; ++p)
    off[static_cast<std::size_t>(p) + 1] = off[static_cast<std::size_t>(p)] + binomial(n, p);
  return off;
}

// Dolbeault operator sqrt(2)(dbar + dbar*) as one block matrix on the graded
// space; its square is block diagonal and equals twice the Laplacian.
inline Eigen::MatrixXcd box_operator(const LieAlgebra& alg, const SamelsonFrame& fr) {
  const auto off = graded_offsets(fr.n);
  const Eigen::Index total = off[static_cast<std::size_t>(fr.n) + 1];
  Eigen::MatrixXcd box = Eigen::MatrixXcd::Zero(total, total);
  const double s2 = std::sqrt(2.0);
  for (int p = 0; p < fr.n; ++p) {
    const Eigen::MatrixXcd A = dbar_matrix(alg, fr, p).M;
    box.block(off[static_cast<std::size_t>(p) + 1], off[static_cast<std::size_t>(p)], A.rows(),
              A.cols()) = s2 * A;
    box.block(off[static_cast<std::size_t>(p)], off[static_cast<std::size_t>(p) + 1], A.cols(),
              A.rows()) = s2 * A.adjoint();
  }
  return box;
}

}  // namespace hermlie
