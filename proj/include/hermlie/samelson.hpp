#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "hermlie/hermitian_structure.hpp"
#include "hermlie/lie_algebra.hpp"

namespace hermlie {

constexpr std::uint64_t kDefaultSeed = 0x5a3c6d1e9b7f2408ULL;

struct SamelsonOptions {
  std::uint64_t seed = kDefaultSeed;
  std::vector<int> torus_basis;     // 0-based basis indices; empty = discover
  std::vector<int> toral_pairing;   // permutation of torus positions; empty = consecutive
  std::vector<int> root_order;      // permutation of the positive roots; empty = canonical
  std::vector<double> root_phases;  // Z_j -> exp(i phi_j) Z_j; empty = none
};

struct FrameDiagnostics {
  double torus_abelian = 0.0;       // max bracket norm among torus generators
  double eigen_relation = 0.0;      // max |ad(X_s)Z - lambda_s Z|
  double root_real_part = 0.0;      // roots must be purely imaginary
  double orthonormality = 0.0;      // |g(Z_j, conj Z_k) - delta|
  double splitting = 0.0;           // 1/cond of [S | conj S] measured via min singular value
  double integrability = 0.0;       // component of [s,s] outside s
  double j_realness = 0.0;          // imaginary residue of the reconstructed J
  double compatibility = 0.0;       // |g(J.,J.) - g|
};

// Dressed output of the root-space construction: torus, positive roots,
// type-(1,0) frame and dual coframe, and the induced complex structure.
struct SamelsonFrame {
  int N = 0;          // real dimension
  int torus_dim = 0;  // dimension of the maximal torus (must be even = 2r)
  int m = 0;          // number of positive roots
  int r = 0;          // torus_dim / 2
  int n = 0;          // complex dimension m + r

  Eigen::MatrixXd torus;     // N x torus_dim, g-orthonormal columns
  Eigen::MatrixXcd roots;    // torus_dim x m, lambda_j(X_s) (purely imaginary)
  Eigen::MatrixXcd s_basis;  // N x n: Z_1..Z_m root vectors, then toral A_1..A_r
  Eigen::MatrixXcd frame;    // N x N: [S | conj(S)]
  Eigen::MatrixXcd coframe;  // inverse of frame; row j < n is zeta^j, row n+j is conj
  Eigen::MatrixXd J;

  FrameDiagnostics diag;

  Eigen::VectorXcd zbar(int j) const { return s_basis.col(j).conjugate(); }

  InvariantForm zeta_form(int j) const {
    return InvariantForm::covector(coframe.row(j).transpose());
  }
  InvariantForm zeta_bar_form(int j) const {
    return InvariantForm::covector(coframe.row(n + j).transpose());
  }

  // Coordinates of an ambient complex vector in the (Z, conj Z) frame.
  Eigen::VectorXcd frame_coords(const Eigen::VectorXcd& v) const { return coframe * v; }
};

namespace detail {

inline Eigen::MatrixXd orthonormalize_metric(const Eigen::MatrixXd& cols, const Eigen::MatrixXd& g) {
  Eigen::MatrixXd out = cols;
  for (int j = 0; j < out.cols(); ++j) {
    for (int k = 0; k < j; ++k) {
      const double proj = out.col(k).transpose() * g * out.col(j);
      out.col(j) -= proj * out.col(k);
    }
    const double nrm = std::sqrt(out.col(j).transpose() * g * out.col(j));
    if (nrm < 1e-12) throw std::invalid_argument("orthonormalize: dependent generators");
    out.col(j) /= nrm;
  }
  return out;
}

// Common (real) nullspace dimension of the adjoint maps of the given columns.
inline int centralizer_dim(const LieAlgebra& alg, const Eigen::MatrixXd& cols) {
  const int N = alg.dim();
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(cols.cols()) * N, N);
  for (int s = 0; s < cols.cols(); ++s)
    stacked.middleRows(static_cast<Eigen::Index>(s) * N, N) =
        alg.ad(cols.col(s).cast<cplx>()).real();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const double scale = std::max(1.0, svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
  int nullity = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) < 1e-9 * scale) ++nullity;
  nullity += N - static_cast<int>(svd.singularValues().size());
  return nullity;
}

inline double max_pair_bracket(const LieAlgebra& alg, const Eigen::MatrixXd& cols) {
  double worst = 0.0;
  for (int a = 0; a < cols.cols(); ++a)
    for (int b = a + 1; b < cols.cols(); ++b)
      worst = std::max(worst,
                       alg.bracket(cols.col(a).cast<cplx>(), cols.col(b).cast<cplx>()).norm());
  return worst;
}

// Recursively splits a subspace into joint eigenspaces of the torus adjoints.
inline void refine_eigenspaces(const std::vector<Eigen::MatrixXcd>& ad_torus, int s,
                               const Eigen::MatrixXcd& V, Eigen::VectorXcd lambda_prefix,
                               std::vector<std::pair<Eigen::VectorXcd, Eigen::MatrixXcd>>& out) {
  if (s == static_cast<int>(ad_torus.size())) {
    out.emplace_back(lambda_prefix, V);
    return;
  }
  const Eigen::MatrixXcd M = (V.adjoint() * V).inverse() * (V.adjoint() * ad_torus[static_cast<std::size_t>(s)] * V);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
  const Eigen::VectorXcd mu = es.eigenvalues();
  const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
  std::vector<int> assigned(static_cast<std::size_t>(mu.size()), -1);
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < mu.size(); ++i) {
    if (assigned[static_cast<std::size_t>(i)] >= 0) continue;
    clusters.push_back({i});
    assigned[static_cast<std::size_t>(i)] = static_cast<int>(clusters.size()) - 1;
    for (int j = i + 1; j < mu.size(); ++j)
      if (assigned[static_cast<std::size_t>(j)] < 0 && std::abs(mu(i) - mu(j)) < 1e-7 * scale) {
        clusters.back().push_back(j);
        assigned[static_cast<std::size_t>(j)] = assigned[static_cast<std::size_t>(i)];
      }
  }
  for (const auto& cl : clusters) {
    Eigen::MatrixXcd W(V.rows(), cl.size());
    cplx mean = 0.0;
    for (std::size_t c = 0; c < cl.size(); ++c) {
      W.col(static_cast<Eigen::Index>(c)) = V * es.eigenvectors().col(cl[c]);
      mean += mu(cl[c]);
    }
    mean /= double(cl.size());
    Eigen::VectorXcd lam = lambda_prefix;
    lam.conservativeResize(s + 1);
    lam(s) = mean;
    // re-orthonormalize (Euclidean) for numerical sanity
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(W);
    Eigen::MatrixXcd Q = qr.householderQ();
    refine_eigenspaces(ad_torus, s + 1, Q.leftCols(W.cols()), lam, out);
  }
}

inline void canonical_phase(Eigen::VectorXcd& v) {
  int imax = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > best + 1e-14) {
      best = std::abs(v(i));
      imax = i;
    }
  if (best > 0) v *= std::conj(v(imax)) / std::abs(v(imax));
}

}  // namespace detail

// Maximal abelian subalgebra found as the iterated centralizer of generic
// elements; deterministic for a fixed seed.
inline Eigen::MatrixXd discover_torus(const LieAlgebra& alg, std::uint64_t seed = kDefaultSeed) {
  const int N = alg.dim();
  std::mt19937_64 rng(seed ^ 0x70f0a5u);
  std::uniform_real_distribution<double> dist(1.0, 2.0);
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(N, N);
  for (int iter = 0; iter < 12; ++iter) {
    if (detail::max_pair_bracket(alg, V) < 1e-10 &&
        detail::centralizer_dim(alg, V) == V.cols())
      return V;
    Eigen::VectorXd w(V.cols());
    for (int i = 0; i < w.size(); ++i) w(i) = dist(rng);
    const Eigen::VectorXd X = V * w;
    const Eigen::MatrixXd adXV = alg.ad(X.cast<cplx>()).real() * V;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(adXV);
    lu.setThreshold(1e-9);
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() == 0) throw std::runtime_error("discover_torus: empty centralizer");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(V * kernel);
    V = Eigen::MatrixXd(qr.householderQ()).leftCols(kernel.cols());
  }
  throw std::runtime_error("discover_torus: no abelian fixpoint reached");
}

struct RootDecomposition {
  Eigen::MatrixXd torus;             // g-orthonormalized torus basis
  std::vector<Eigen::VectorXcd> root_values;   // purely imaginary functionals on the torus basis
  std::vector<Eigen::VectorXcd> root_vectors;  // g-orthonormalized, one per root (with multiplicity)
  std::vector<int> positive;                   // indices of the positive roots
  double eigen_residual = 0.0;
  double real_part_residual = 0.0;
};

// Simultaneous eigen-decomposition of ad(torus) on the complexified algebra.
// Positivity: the first nonzero imaginary entry of lambda decides the sign.
inline RootDecomposition root_decomposition(const LieAlgebra& alg, const Eigen::MatrixXd& g,
                                            const Eigen::MatrixXd& torus_in,
                                            std::uint64_t seed = kDefaultSeed) {
  const int N = alg.dim();
  RootDecomposition out;
  out.torus = detail::orthonormalize_metric(torus_in, g);
  const int tau = static_cast<int>(out.torus.cols());

  if (detail::max_pair_bracket(alg, out.torus) > 1e-10)
    throw std::invalid_argument("root_decomposition: torus generators do not commute");
  if (detail::centralizer_dim(alg, out.torus) != tau)
    throw std::invalid_argument("root_decomposition: torus is not maximal abelian");
  if ((N - tau) % 2 != 0)
    throw std::invalid_argument("root_decomposition: inconsistent root count");

  std::vector<Eigen::MatrixXcd> ad_torus;
  for (int s = 0; s < tau; ++s) ad_torus.push_back(alg.ad(out.torus.col(s).cast<cplx>()));

  // Generic torus element with seeded weights; its eigenspaces are refined
  // against every ad(X_s) afterwards.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(1.0, 2.0);
  Eigen::VectorXcd weights(tau);
  for (int s = 0; s < tau; ++s) weights(s) = dist(rng);
  Eigen::MatrixXcd ad_generic = Eigen::MatrixXcd::Zero(N, N);
  for (int s = 0; s < tau; ++s) ad_generic += weights(s) * ad_torus[static_cast<std::size_t>(s)];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ad_generic);
  const Eigen::VectorXcd mu = es.eigenvalues();
  const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());

  // Split off the kernel (the complexified torus), keep the root part.
  std::vector<int> nonzero;
  for (int i = 0; i < N; ++i)
    if (std::abs(mu(i)) > 1e-7 * scale) nonzero.push_back(i);
  if (static_cast<int>(nonzero.size()) != N - tau)
    throw std::invalid_argument("root_decomposition: kernel of ad does not match the torus");

  // Cluster the nonzero eigenvalues (relative gap 1e-7), then refine.
  std::vector<std::pair<Eigen::VectorXcd, Eigen::MatrixXcd>> spaces;
  std::vector<bool> used(nonzero.size(), false);
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> cluster{nonzero[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < nonzero.size(); ++j)
      if (!used[j] && std::abs(mu(nonzero[i]) - mu(nonzero[j])) < 1e-7 * scale) {
        cluster.push_back(nonzero[j]);
        used[j] = true;
      }
    Eigen::MatrixXcd V(N, cluster.size());
    for (std::size_t c = 0; c < cluster.size(); ++c)
      V.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cluster[c]);
    detail::refine_eigenspaces(ad_torus, 0, V, Eigen::VectorXcd(), spaces);
  }

  // g-orthonormalize within each joint eigenspace and fix phases.
  const Eigen::MatrixXcd G = g.cast<cplx>();
  auto h_inner = [&](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    return (u.transpose() * G * v.conjugate())(0);  // g(u, conj v)
  };
  for (auto& sp : spaces) {
    Eigen::MatrixXcd& V = sp.second;
    for (int j = 0; j < V.cols(); ++j) {
      Eigen::VectorXcd v = V.col(j);
      for (int k = 0; k < j; ++k) v -= h_inner(v, V.col(k)) * V.col(k);
      const double nrm = std::sqrt(std::abs(h_inner(v, v)));
      if (nrm < 1e-12) throw std::runtime_error("root_decomposition: degenerate metric on root space");
      v /= nrm;
      detail::canonical_phase(v);
      V.col(j) = v;
      out.root_values.push_back(sp.first);
      out.root_vectors.push_back(v);
    }
  }

  // Residuals: eigen-relation, purely imaginary roots.
  for (std::size_t j = 0; j < out.root_vectors.size(); ++j) {
    for (int s = 0; s < tau; ++s) {
      const Eigen::VectorXcd rhs = ad_torus[static_cast<std::size_t>(s)] * out.root_vectors[j] -
                                   out.root_values[j](s) * out.root_vectors[j];
      out.eigen_residual = std::max(out.eigen_residual, rhs.norm());
      out.real_part_residual =
          std::max(out.real_part_residual, std::abs(out.root_values[j](s).real()));
    }
  }

  // Positive roots: first nonzero imaginary entry positive.
  for (std::size_t j = 0; j < out.root_values.size(); ++j) {
    const Eigen::VectorXcd& lam = out.root_values[j];
    for (int s = 0; s < tau; ++s) {
      if (std::abs(lam(s).imag()) > 1e-8 * scale) {
        if (lam(s).imag() > 0) out.positive.push_back(static_cast<int>(j));
        break;
      }
    }
  }
  if (2 * out.positive.size() != out.root_values.size())
    throw std::runtime_error("root_decomposition: roots do not split into +/- pairs");
  return out;
}

// Builds the full type-(1,0) frame: positive root vectors plus a complex
// structure on the torus from consecutive pairing of its orthonormal basis.
inline SamelsonFrame samelson_frame(const LieAlgebra& alg, const Eigen::MatrixXd& g,
                                    const SamelsonOptions& opts = {}) {
  const int N = alg.dim();
  if (N % 2 != 0)
    throw std::invalid_argument("samelson_frame: odd-dimensional algebra admits no complex structure");

  Eigen::MatrixXd torus_cols;
  if (!opts.torus_basis.empty()) {
    torus_cols.resize(N, static_cast<Eigen::Index>(opts.torus_basis.size()));
    for (std::size_t s = 0; s < opts.torus_basis.size(); ++s)
      torus_cols.col(static_cast<Eigen::Index>(s)) =
          Eigen::VectorXd::Unit(N, opts.torus_basis[s]);
  } else {
    torus_cols = discover_torus(alg, opts.seed);
  }

  RootDecomposition rd = root_decomposition(alg, g, torus_cols, opts.seed);
  const int tau = static_cast<int>(rd.torus.cols());
  if (tau % 2 != 0)
    throw std::invalid_argument("samelson_frame: odd-rank torus admits no complex structure on it");

  SamelsonFrame fr;
  fr.N = N;
  fr.torus_dim = tau;
  fr.r = tau / 2;
  fr.m = static_cast<int>(rd.positive.size());
  fr.n = fr.m + fr.r;
  fr.torus = rd.torus;
  fr.diag.torus_abelian = detail::max_pair_bracket(alg, rd.torus);
  fr.diag.eigen_relation = rd.eigen_residual;
  fr.diag.root_real_part = rd.real_part_residual;

  // Canonical order of the positive roots: lexicographic by imaginary parts.
  std::vector<int> order(rd.positive.begin(), rd.positive.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int s = 0; s < tau; ++s) {
      const double da = rd.root_values[static_cast<std::size_t>(a)](s).imag();
      const double db = rd.root_values[static_cast<std::size_t>(b)](s).imag();
      if (std::abs(da - db) > 1e-9) return da > db;
    }
    return false;
  });
  if (!opts.root_order.empty()) {
    if (static_cast<int>(opts.root_order.size()) != fr.m)
      throw std::invalid_argument("samelson_frame: root_order must permute the positive roots");
    std::vector<int> permuted(order.size());
    for (std::size_t j = 0; j < order.size(); ++j)
      permuted[j] = order[static_cast<std::size_t>(opts.root_order[j])];
    order = permuted;
  }

  fr.roots.resize(tau, fr.m);
  fr.s_basis.resize(N, fr.n);
  for (int j = 0; j < fr.m; ++j) {
    Eigen::VectorXcd z = rd.root_vectors[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    if (!opts.root_phases.empty())
      z *= std::exp(cplx(0, opts.root_phases[static_cast<std::size_t>(j) % opts.root_phases.size()]));
    fr.s_basis.col(j) = z;
    fr.roots.col(j) = rd.root_values[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
  }

  std::vector<int> pairing(static_cast<std::size_t>(tau));
  std::iota(pairing.begin(), pairing.end(), 0);
  if (!opts.toral_pairing.empty()) {
    if (static_cast<int>(opts.toral_pairing.size()) != tau)
      throw std::invalid_argument("samelson_frame: toral_pairing must permute the torus basis");
    pairing = opts.toral_pairing;
  }
  for (int k = 0; k < fr.r; ++k)
    fr.s_basis.col(fr.m + k) =
        (rd.torus.col(pairing[static_cast<std::size_t>(2 * k)]).cast<cplx>() -
         cplx(0, 1) * rd.torus.col(pairing[static_cast<std::size_t>(2 * k + 1)]).cast<cplx>()) /
        std::sqrt(2.0);

  // Orthonormality of the full frame under g(Z_j, conj Z_k).
  const Eigen::MatrixXcd G = g.cast<cplx>();
  Eigen::MatrixXcd gramS = fr.s_basis.transpose() * G * fr.s_basis.conjugate();
  fr.diag.orthonormality =
      (gramS - Eigen::MatrixXcd::Identity(fr.n, fr.n)).cwiseAbs().maxCoeff();

  fr.frame.resize(N, N);
  fr.frame.leftCols(fr.n) = fr.s_basis;
  fr.frame.rightCols(fr.n) = fr.s_basis.conjugate();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(fr.frame);
  fr.diag.splitting = svd.singularValues()(N - 1);
  if (fr.diag.splitting < 1e-10)
    throw std::runtime_error("samelson_frame: s + conj(s) does not span the complexification");
  fr.coframe = fr.frame.inverse();

  // Integrability: [s,s] must stay inside s.
  for (int a = 0; a < fr.n; ++a)
    for (int b = a + 1; b < fr.n; ++b) {
      const Eigen::VectorXcd w = alg.bracket(fr.s_basis.col(a), fr.s_basis.col(b));
      const Eigen::VectorXcd coords = fr.coframe * w;
      fr.diag.integrability =
          std::max(fr.diag.integrability, coords.tail(fr.n).norm());
    }
  if (fr.diag.integrability > 1e-8)
    throw std::runtime_error("samelson_frame: chosen positive system is not closed (J not integrable)");

  // J = i on s, -i on conj(s).
  Eigen::MatrixXcd Jc = Eigen::MatrixXcd::Zero(N, N);
  Jc.leftCols(fr.n) = cplx(0, 1) * fr.s_basis;
  Jc.rightCols(fr.n) = cplx(0, -1) * fr.s_basis.conjugate();
  Jc = Jc * fr.coframe;
  fr.diag.j_realness = Jc.imag().cwiseAbs().maxCoeff();
  fr.J = Jc.real();
  fr.diag.compatibility = (fr.J.transpose() * g * fr.J - g).cwiseAbs().maxCoeff();
  return fr;
}

}  // namespace hermlie
