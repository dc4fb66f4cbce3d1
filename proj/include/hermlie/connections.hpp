#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "hermlie/hermitian_structure.hpp"
#include "hermlie/report.hpp"

namespace hermlie {

enum class ConnectionKind { LeviCivita, Chern, Bismut, Weyl };

inline const char* to_string(ConnectionKind k) {
  switch (k) {
    case ConnectionKind::LeviCivita: return "levi_civita";
    case ConnectionKind::Chern: return "chern";
    case ConnectionKind::Bismut: return "bismut";
    case ConnectionKind::Weyl: return "weyl";
  }
  return "?";
}

// Frame coefficients nabla_{e_i} e_j = sum_k Gamma^k_{ij} e_k; gamma[i](k,j).
struct ConnectionCoefficients {
  ConnectionKind kind = ConnectionKind::LeviCivita;
  std::vector<Eigen::MatrixXd> gamma;

  int dim() const { return static_cast<int>(gamma.size()); }
  const Eigen::MatrixXd& operator[](int i) const { return gamma[static_cast<std::size_t>(i)]; }
};

struct LeeForm {
  InvariantForm theta;   // real 1-form
  InvariantForm jtheta;  // J theta = -theta o J
  double norm2 = 0.0;
};

namespace detail {

// Value array of a k-form on arbitrary (not necessarily increasing) basis
// tuples, with the antisymmetry sign folded in.
inline double form_value(const InvariantForm& f, std::initializer_list<int> idx) {
  Tuple t(idx);
  int sign = 1;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      if (t[a] == t[b]) return 0.0;
      if (t[a] > t[b]) {
        std::swap(t[a], t[b]);
        sign = -sign;
      }
    }
  return sign * f.coefficient(t).real();
}

}  // namespace detail

// Lee form theta = (1/(n-1)) d*Omega o J, with J theta = -theta o J, so that
// d*Omega = (n-1) J theta.
inline LeeForm lee_form(const LieAlgebra& alg, const HermitianStructure& herm) {
  const int n = herm.complex_dim();
  if (n <= 1) throw std::invalid_argument("lee_form: undefined in complex dimension 1");
  const InvariantForm dstar_omega = codifferential(herm.kahler_form(), alg, herm.g);
  LeeForm out;
  out.theta = InvariantForm(herm.dim(), 1);
  out.theta.coeff() = herm.J.transpose().cast<cplx>() * dstar_omega.coeff() / double(n - 1);
  out.jtheta = herm.j_covector(out.theta);
  out.norm2 = inner(out.theta, out.theta, herm.g).real();
  return out;
}

// Lee form with the complex-dimension-1 degenerate case resolved to zero
// (every metric is Kahler there; d*Omega vanishes identically).
inline LeeForm lee_form_or_zero(const LieAlgebra& alg, const HermitianStructure& herm) {
  if (herm.complex_dim() > 1) return lee_form(alg, herm);
  LeeForm out;
  out.theta = InvariantForm(herm.dim(), 1);
  out.jtheta = InvariantForm(herm.dim(), 1);
  out.norm2 = 0.0;
  return out;
}

inline ConnectionCoefficients connection(const LieAlgebra& alg, const HermitianStructure& herm,
                                         ConnectionKind kind) {
  const int N = alg.dim();
  const Eigen::MatrixXd& G = herm.g;
  const Eigen::MatrixXd Ginv = G.inverse();
  ConnectionCoefficients out;
  out.kind = kind;
  out.gamma.resize(static_cast<std::size_t>(N));

  // Koszul formula on left-invariant fields:
  // 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
  std::vector<Eigen::MatrixXd> lowered;  // lowered[i](j,l) = g([e_i,e_j], e_l)
  lowered.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) lowered.push_back(alg.ad_basis(i).transpose() * G);
  auto bval = [&](int i, int j, int l) { return lowered[static_cast<std::size_t>(i)](j, l); };

  std::optional<InvariantForm> d_omega, dc_omega;
  std::optional<LeeForm> lee;
  if (kind == ConnectionKind::Chern)
    d_omega = ce_differential(herm.kahler_form(), alg);
  if (kind == ConnectionKind::Bismut)
    dc_omega = dc_differential(herm.kahler_form(), alg, herm.J);
  if (kind == ConnectionKind::Weyl) lee = lee_form_or_zero(alg, herm);

  for (int i = 0; i < N; ++i) {
    Eigen::MatrixXd M(N, N);  // M(l,j) = g(nabla_{e_i} e_j, e_l)
    for (int j = 0; j < N; ++j)
      for (int l = 0; l < N; ++l)
        M(l, j) = 0.5 * (bval(i, j, l) - bval(j, l, i) + bval(l, i, j));
    if (kind == ConnectionKind::Chern) {
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) {
          double acc = 0.0;
          for (int m = 0; m < N; ++m) {
            if (herm.J(m, i) == 0.0) continue;
            acc += herm.J(m, i) * detail::form_value(*d_omega, {m, j, l});
          }
          M(l, j) += 0.5 * acc;
        }
    } else if (kind == ConnectionKind::Bismut) {
      for (int j = 0; j < N; ++j)
        for (int l = 0; l < N; ++l) M(l, j) += 0.5 * detail::form_value(*dc_omega, {i, j, l});
    }
    Eigen::MatrixXd gamma_i = Ginv * M;
    if (kind == ConnectionKind::Weyl) {
      // nabla^W_X Y = nabla^L_X Y - (1/2)theta(X)Y - (1/2)theta(Y)X + (1/2)g(X,Y)theta#
      const Eigen::VectorXd th = lee->theta.coeff().real();
      const Eigen::VectorXd sharp = Ginv * th;
      gamma_i -= 0.5 * th(i) * Eigen::MatrixXd::Identity(N, N);
      gamma_i -= 0.5 * Eigen::VectorXd::Unit(N, i) * th.transpose();
      gamma_i += 0.5 * sharp * G.row(i);
    }
    out.gamma[static_cast<std::size_t>(i)] = gamma_i;
  }
  return out;
}

struct CurvatureData {
  ConnectionKind kind = ConnectionKind::LeviCivita;
  std::vector<std::vector<Eigen::MatrixXd>> R;  // R[i][j] = R(e_i, e_j) as an operator
  Eigen::MatrixXd ricci_full;   // tr{Z -> R(Z,X)Y}, not symmetrized
  InvariantForm ricci_form;     // Chern/Bismut: rho; Weyl: r^W = Ric^W_sym(., J.)
  InvariantForm ricci_skew;     // skew part of ricci_full as a 2-form
  double s = 0.0;               // Riemannian scalar curvature (Levi-Civita)
  double u = 0.0;               // half-trace of rho^C (Chern only)
  double b = 0.0;               // trace of rho^B (Bismut only)
};

// Trace of a 2-form against the complex structure: sum_a alpha(J f_a, f_a)
// over a g-orthonormal frame; equals 2 <alpha, Omega>.
inline double form_j_trace(const InvariantForm& alpha, const HermitianStructure& herm) {
  const int N = herm.dim();
  const Eigen::MatrixXd W = herm.J * herm.g.inverse();
  double acc = 0.0;
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      if (W(p, q) == 0.0) continue;
      acc += W(p, q) * detail::form_value(alpha, {p, q});
    }
  return acc;
}

inline CurvatureData curvature(const ConnectionCoefficients& conn, const LieAlgebra& alg,
                               const HermitianStructure& herm) {
  const int N = alg.dim();
  CurvatureData out;
  out.kind = conn.kind;
  out.R.assign(static_cast<std::size_t>(N),
               std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(N)));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Eigen::MatrixXd Rij = conn[i] * conn[j] - conn[j] * conn[i];
      for (int k = 0; k < N; ++k) {
        const double ck = alg.c(k, i, j);
        if (ck != 0.0) Rij -= ck * conn[k];
      }
      out.R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rij;
    }

  out.ricci_full.resize(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double acc = 0.0;
      for (int l = 0; l < N; ++l) acc += out.R[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)](l, j);
      out.ricci_full(i, j) = acc;
    }

  out.ricci_skew = InvariantForm(N, 2);
  {
    Tuple t(2);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        t[0] = i;
        t[1] = j;
        out.ricci_skew.set_coefficient(t, 0.5 * (out.ricci_full(i, j) - out.ricci_full(j, i)));
      }
  }

  // Riemannian scalar curvature, always from the Levi-Civita connection.
  if (conn.kind == ConnectionKind::LeviCivita) {
    out.s = (herm.g.inverse() * out.ricci_full).trace();
  } else {
    const auto lc = connection(alg, herm, ConnectionKind::LeviCivita);
    out.s = curvature(lc, alg, herm).s;
  }

  if (conn.kind == ConnectionKind::Chern || conn.kind == ConnectionKind::Bismut) {
    // rho(X,Y) = (1/2) sum_a g(R(X,Y) f_a, J f_a) on an orthonormal frame.
    const Eigen::MatrixXd T = herm.g * herm.J * herm.g.inverse();
    out.ricci_form = InvariantForm(N, 2);
    Tuple t(2);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        t[0] = i;
        t[1] = j;
        out.ricci_form.set_coefficient(
            t, 0.5 * (out.R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].transpose() * T).trace());
      }
    const double tr = form_j_trace(out.ricci_form, herm);
    if (conn.kind == ConnectionKind::Chern) out.u = 0.5 * tr;
    if (conn.kind == ConnectionKind::Bismut) out.b = tr;
  } else if (conn.kind == ConnectionKind::Weyl) {
    // r^W(X,Y) = Ric^W(X, JY) from the symmetrized Ricci tensor.
    const Eigen::MatrixXd sym = 0.5 * (out.ricci_full + out.ricci_full.transpose());
    const Eigen::MatrixXd r = sym * herm.J;
    out.ricci_form = InvariantForm(N, 2);
    Tuple t(2);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        t[0] = i;
        t[1] = j;
        out.ricci_form.set_coefficient(t, 0.5 * (r(i, j) - r(j, i)));
      }
  }
  return out;
}

// Connection 1-form induced on the anticanonical line Lambda^n(s): the trace
// of the frame connection matrix restricted to the (1,0) space.  Requires a
// connection preserving the type decomposition; the off-block leakage is
// returned alongside.
struct LineConnectionForm {
  InvariantForm sigma;       // complex-valued invariant 1-form
  double type_preservation;  // residual of the conj-block of the frame matrix
};

inline LineConnectionForm line_connection_form(const ConnectionCoefficients& conn,
                                               const Eigen::MatrixXcd& frame,
                                               const Eigen::MatrixXcd& coframe) {
  const int N = conn.dim();
  const int n = N / 2;
  LineConnectionForm out;
  out.sigma = InvariantForm(N, 1);
  out.type_preservation = 0.0;
  for (int i = 0; i < N; ++i) {
    const Eigen::MatrixXcd A = coframe * conn[i].cast<cplx>() * frame;
    out.sigma.coeff()(i) = A.topLeftCorner(n, n).trace();
    out.type_preservation =
        std::max(out.type_preservation, A.bottomLeftCorner(n, n).cwiseAbs().maxCoeff());
  }
  return out;
}

// Curvature 2-form of the induced line connection: i rho = d sigma.
inline InvariantForm line_curvature(const LineConnectionForm& lf, const LieAlgebra& alg) {
  InvariantForm rho = ce_differential(lf.sigma, alg);
  rho *= cplx(0, -1);
  return rho;
}

}  // namespace hermlie
