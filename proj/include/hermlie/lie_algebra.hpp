#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hermlie/forms.hpp"

namespace hermlie {

// Real Lie algebra given by structure constants c^k_{ij} on a fixed basis:
// [e_i, e_j] = sum_k c^k_{ij} e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  LieAlgebra(int dim, std::vector<std::string> labels = {})
      : dim_(dim), labels_(std::move(labels)) {
    if (labels_.empty())
      for (int i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i + 1));
    c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
  }

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double c(int k, int i, int j) const {
    return c_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j];
  }

  // Sets c^k_{ij} = v and c^k_{ji} = -v (0-based indices).
  void set_bracket(int i, int j, int k, double v) {
    c_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j] = v;
    c_[(static_cast<std::size_t>(k) * dim_ + j) * dim_ + i] = -v;
  }

  // Sets a single entry without the antisymmetric completion, so that
  // deliberately broken inputs can be run through validate().
  void set_raw(int i, int j, int k, double v) {
    c_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j] = v;
  }

  Eigen::VectorXcd bracket(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim_);
    for (int k = 0; k < dim_; ++k) {
      cplx acc = 0.0;
      for (int i = 0; i < dim_; ++i) {
        if (x(i) == cplx(0.0)) continue;
        for (int j = 0; j < dim_; ++j) acc += x(i) * y(j) * c(k, i, j);
      }
      out(k) = acc;
    }
    return out;
  }

  // ad(x) as a matrix: ad(x)_{kj} = sum_i x_i c^k_{ij}.
  Eigen::MatrixXcd ad(const Eigen::VectorXcd& x) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (int k = 0; k < dim_; ++k)
      for (int j = 0; j < dim_; ++j) {
        cplx acc = 0.0;
        for (int i = 0; i < dim_; ++i) acc += x(i) * c(k, i, j);
        m(k, j) = acc;
      }
    return m;
  }

  Eigen::MatrixXd ad_basis(int i) const {
    Eigen::MatrixXd m(dim_, dim_);
    for (int k = 0; k < dim_; ++k)
      for (int j = 0; j < dim_; ++j) m(k, j) = c(k, i, j);
    return m;
  }

  Eigen::MatrixXd killing_form() const {
    Eigen::MatrixXd K(dim_, dim_);
    std::vector<Eigen::MatrixXd> ads;
    ads.reserve(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) ads.push_back(ad_basis(i));
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) K(i, j) = (ads[static_cast<std::size_t>(i)] * ads[static_cast<std::size_t>(j)]).trace();
    return K;
  }

  // Direct sum: appends the other algebra on fresh basis indices.
  static LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    std::vector<std::string> labels = a.labels_;
    labels.insert(labels.end(), b.labels_.begin(), b.labels_.end());
    LieAlgebra out(a.dim_ + b.dim_, std::move(labels));
    for (int k = 0; k < a.dim_; ++k)
      for (int i = 0; i < a.dim_; ++i)
        for (int j = 0; j < a.dim_; ++j)
          out.c_[(static_cast<std::size_t>(k) * out.dim_ + i) * out.dim_ + j] = a.c(k, i, j);
    for (int k = 0; k < b.dim_; ++k)
      for (int i = 0; i < b.dim_; ++i)
        for (int j = 0; j < b.dim_; ++j)
          out.c_[(static_cast<std::size_t>(k + a.dim_) * out.dim_ + (i + a.dim_)) * out.dim_ + (j + a.dim_)] =
              b.c(k, i, j);
    return out;
  }

 private:
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> c_;
};

struct ValidationReport {
  double antisymmetry = 0.0;   // max |c^k_{ij} + c^k_{ji}|
  double jacobi = 0.0;         // max Jacobi residual
  double unimodularity = 0.0;  // max |sum_i c^i_{ij}|
  double tolerance = 1e-12;
  bool passed() const {
    return antisymmetry < tolerance && jacobi < tolerance && unimodularity < tolerance;
  }
};

inline ValidationReport validate(const LieAlgebra& alg, double tol = 1e-12) {
  ValidationReport rep;
  rep.tolerance = tol;
  const int n = alg.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        rep.antisymmetry = std::max(rep.antisymmetry, std::abs(alg.c(k, i, j) + alg.c(k, j, i)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m)
            acc += alg.c(m, i, j) * alg.c(l, m, k) + alg.c(m, j, k) * alg.c(l, m, i) +
                   alg.c(m, k, i) * alg.c(l, m, j);
          rep.jacobi = std::max(rep.jacobi, std::abs(acc));
        }
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += alg.c(i, i, j);
    rep.unimodularity = std::max(rep.unimodularity, std::abs(acc));
  }
  return rep;
}

inline bool is_unimodular(const LieAlgebra& alg, double tol = 1e-12) {
  const int n = alg.dim();
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += alg.c(i, i, j);
    if (std::abs(acc) > tol) return false;
  }
  return true;
}

// Chevalley-Eilenberg differential on constant-coefficient forms:
// (da)(X_0..X_k) = sum_{i<j} (-1)^{i+j} a([X_i,X_j], X_0..^i..^j..X_k).
inline InvariantForm ce_differential(const InvariantForm& a, const LieAlgebra& alg) {
  const int n = a.ambient();
  if (n != alg.dim()) throw std::invalid_argument("ce_differential: dimension mismatch");
  const int k = a.degree();
  InvariantForm out(n, k + 1);
  if (k + 1 > n) return out;
  const auto tuples = all_tuples(n, k + 1);
  Tuple rest, inserted;
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    const Tuple& t = tuples[r];
    cplx acc = 0.0;
    for (int ia = 0; ia < k + 1; ++ia) {
      for (int ib = ia + 1; ib < k + 1; ++ib) {
        rest.clear();
        for (int s = 0; s < k + 1; ++s)
          if (s != ia && s != ib) rest.push_back(t[static_cast<std::size_t>(s)]);
        const double outer = ((ia + ib) % 2 == 0) ? 1.0 : -1.0;
        // a([e_p, e_q], rest) with [e_p,e_q] expanded over the basis
        const int p = t[static_cast<std::size_t>(ia)];
        const int q = t[static_cast<std::size_t>(ib)];
        for (int m = 0; m < n; ++m) {
          const double cm = alg.c(m, p, q);
          if (cm == 0.0) continue;
          const int pos = tuple_insert(rest, m, inserted);
          if (pos < 0) continue;
          const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
          acc += outer * cm * sign * a.coefficient(inserted);
        }
      }
    }
    out.coeff()(static_cast<Eigen::Index>(r)) = acc;
  }
  return out;
}

// Matrix of the CE differential Lambda^k -> Lambda^{k+1} on tuple bases.
inline Eigen::MatrixXd ce_matrix(const LieAlgebra& alg, int k) {
  const int n = alg.dim();
  const auto dom = all_tuples(n, k);
  Eigen::MatrixXd D(binomial(n, k + 1), binomial(n, k));
  for (std::size_t j = 0; j < dom.size(); ++j) {
    InvariantForm b(n, k);
    b.coeff()(static_cast<Eigen::Index>(j)) = 1.0;
    D.col(static_cast<Eigen::Index>(j)) = ce_differential(b, alg).coeff().real();
  }
  return D;
}

// Codifferential: the adjoint of the CE differential with respect to the
// metric-induced inner products.  On a unimodular algebra this agrees with
// the manifold d* restricted to invariant forms (bi-invariant volume).
inline InvariantForm codifferential(const InvariantForm& a, const LieAlgebra& alg,
                                    const Eigen::MatrixXd& g) {
  if (!is_unimodular(alg))
    throw std::invalid_argument("codifferential: algebra is not unimodular");
  const int n = a.ambient();
  const int k = a.degree();
  if (k < 1) return InvariantForm(n, 0);
  const Eigen::MatrixXd D = ce_matrix(alg, k - 1);
  const Eigen::MatrixXd gram_lo = form_gram(n, k - 1, g);
  const Eigen::MatrixXd gram_hi = form_gram(n, k, g);
  // <D x, y>_k = <x, A y>_{k-1}  =>  A = gram_lo^{-1} D^T gram_hi
  const Eigen::MatrixXd A = gram_lo.ldlt().solve(D.transpose() * gram_hi);
  InvariantForm out(n, k - 1);
  out.coeff() = A.cast<cplx>() * a.coeff();
  return out;
}

}  // namespace hermlie
