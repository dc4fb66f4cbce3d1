#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>

#include "hermlie/tuples.hpp"

namespace hermlie {

using cplx = std::complex<double>;

// A constant-coefficient alternating k-form on an N-dimensional real vector
// space, with complex coefficients stored on strictly increasing index tuples
// in lexicographic order.
class InvariantForm {
 public:
  InvariantForm() = default;

  InvariantForm(int ambient, int degree)
      : ambient_(ambient), degree_(degree),
        coeff_(Eigen::VectorXcd::Zero(binomial(ambient, degree))) {
    if (degree < 0 || degree > ambient)
      coeff_ = Eigen::VectorXcd::Zero(0);
  }

  static InvariantForm basis_covector(int ambient, int i) {
    InvariantForm f(ambient, 1);
    f.coeff_(i) = 1.0;
    return f;
  }

  // 1-form with the given coefficient vector on the e-basis.
  static InvariantForm covector(const Eigen::VectorXcd& c) {
    InvariantForm f(static_cast<int>(c.size()), 1);
    f.coeff_ = c;
    return f;
  }

  int ambient() const { return ambient_; }
  int degree() const { return degree_; }
  bool is_zero_degree_range() const { return degree_ < 0 || degree_ > ambient_; }

  Eigen::VectorXcd& coeff() { return coeff_; }
  const Eigen::VectorXcd& coeff() const { return coeff_; }

  cplx coefficient(const Tuple& t) const { return coeff_(tuple_rank(t, ambient_)); }
  void set_coefficient(const Tuple& t, cplx v) { coeff_(tuple_rank(t, ambient_)) = v; }

  double max_abs() const { return coeff_.size() ? coeff_.cwiseAbs().maxCoeff() : 0.0; }
  double norm_l2() const { return coeff_.norm(); }

  InvariantForm conjugate() const {
    InvariantForm f = *this;
    f.coeff_ = f.coeff_.conjugate();
    return f;
  }

  InvariantForm& operator+=(const InvariantForm& o) {
    coeff_ += o.coeff_;
    return *this;
  }
  InvariantForm& operator-=(const InvariantForm& o) {
    coeff_ -= o.coeff_;
    return *this;
  }
  InvariantForm& operator*=(cplx s) {
    coeff_ *= s;
    return *this;
  }

  friend InvariantForm operator+(InvariantForm a, const InvariantForm& b) { return a += b; }
  friend InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }
  friend InvariantForm operator*(cplx s, InvariantForm a) { return a *= s; }
  friend InvariantForm operator*(InvariantForm a, cplx s) { return a *= s; }
  friend InvariantForm operator-(InvariantForm a) { return a *= cplx(-1.0); }

 private:
  int ambient_ = 0;
  int degree_ = 0;
  Eigen::VectorXcd coeff_;
};

// Alternating product.  Degrees add; a result of degree > N is the zero form
// of that (empty) coefficient space.
inline InvariantForm wedge(const InvariantForm& a, const InvariantForm& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("wedge: ambient dimension mismatch");
  const int n = a.ambient();
  const int k = a.degree() + b.degree();
  InvariantForm out(n, k);
  if (k > n) return out;
  const auto ta = all_tuples(n, a.degree());
  const auto tb = all_tuples(n, b.degree());
  Tuple merged;
  for (std::size_t ia = 0; ia < ta.size(); ++ia) {
    const cplx ca = a.coeff()(static_cast<Eigen::Index>(ia));
    if (ca == cplx(0.0)) continue;
    for (std::size_t ib = 0; ib < tb.size(); ++ib) {
      const cplx cb = b.coeff()(static_cast<Eigen::Index>(ib));
      if (cb == cplx(0.0)) continue;
      const int sign = tuple_merge(ta[ia], tb[ib], merged);
      if (sign == 0) continue;
      out.coeff()(tuple_rank(merged, n)) += double(sign) * ca * cb;
    }
  }
  return out;
}

// Interior multiplication by a (complex) vector given in e-basis coordinates.
inline InvariantForm contract(const Eigen::VectorXcd& v, const InvariantForm& a) {
  const int n = a.ambient();
  if (v.size() != n) throw std::invalid_argument("contract: vector dimension mismatch");
  if (a.degree() == 0) return InvariantForm(n, 0);
  InvariantForm out(n, a.degree() - 1);
  const auto tout = all_tuples(n, a.degree() - 1);
  Tuple ins;
  for (std::size_t r = 0; r < tout.size(); ++r) {
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
      if (v(i) == cplx(0.0)) continue;
      const int pos = tuple_insert(tout[r], i, ins);
      if (pos < 0) continue;
      const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
      acc += v(i) * sign * a.coefficient(ins);
    }
    out.coeff()(static_cast<Eigen::Index>(r)) = acc;
  }
  return out;
}

// Evaluates the form on k vectors (columns of V, e-basis coordinates).
inline cplx evaluate(const InvariantForm& a, const Eigen::MatrixXcd& V) {
  const int k = a.degree();
  if (V.cols() != k) throw std::invalid_argument("evaluate: argument count != degree");
  if (k == 0) return a.coeff().size() ? a.coeff()(0) : cplx(0.0);
  const auto tuples = all_tuples(a.ambient(), k);
  cplx acc = 0.0;
  Eigen::MatrixXcd sub(k, k);
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    const cplx c = a.coeff()(static_cast<Eigen::Index>(r));
    if (c == cplx(0.0)) continue;
    for (int i = 0; i < k; ++i) sub.row(i) = V.row(tuples[r][static_cast<std::size_t>(i)]);
    acc += c * sub.determinant();
  }
  return acc;
}

// Coefficients of the form with respect to a new frame (columns of F are the
// new frame vectors in old coordinates): out_I = a(F_{i_1},...,F_{i_k}).
inline InvariantForm pullback(const InvariantForm& a, const Eigen::MatrixXcd& F) {
  const int n = a.ambient();
  if (F.rows() != n || F.cols() != n)
    throw std::invalid_argument("pullback: frame must be square of ambient size");
  const int k = a.degree();
  InvariantForm out(n, k);
  if (k == 0) {
    out.coeff() = a.coeff();
    return out;
  }
  const auto tuples = all_tuples(n, k);
  Eigen::MatrixXcd args(n, k);
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    for (int j = 0; j < k; ++j) args.col(j) = F.col(tuples[r][static_cast<std::size_t>(j)]);
    out.coeff()(static_cast<Eigen::Index>(r)) = evaluate(a, args);
  }
  return out;
}

// Hermitian inner product on k-forms induced by a positive-definite metric g
// on vectors: <e^I, e^J> = det(g^{-1}[I,J]), sesquilinear in the second slot.
inline cplx inner(const InvariantForm& a, const InvariantForm& b, const Eigen::MatrixXd& g) {
  if (a.degree() != b.degree()) throw std::invalid_argument("inner: degree mismatch");
  if (a.ambient() != b.ambient()) throw std::invalid_argument("inner: ambient mismatch");
  const int n = a.ambient();
  const int k = a.degree();
  if (k == 0) return a.coeff()(0) * std::conj(b.coeff()(0));
  const Eigen::MatrixXd ginv = g.inverse();
  const bool orthonormal = (ginv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-14;
  if (orthonormal) return b.coeff().dot(a.coeff());  // sum_I a_I conj(b_I)
  const auto tuples = all_tuples(n, k);
  cplx acc = 0.0;
  Eigen::MatrixXd sub(k, k);
  for (std::size_t ia = 0; ia < tuples.size(); ++ia) {
    const cplx ca = a.coeff()(static_cast<Eigen::Index>(ia));
    if (ca == cplx(0.0)) continue;
    for (std::size_t ib = 0; ib < tuples.size(); ++ib) {
      const cplx cb = b.coeff()(static_cast<Eigen::Index>(ib));
      if (cb == cplx(0.0)) continue;
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
          sub(r, c) = ginv(tuples[ia][static_cast<std::size_t>(r)], tuples[ib][static_cast<std::size_t>(c)]);
      acc += ca * std::conj(cb) * sub.determinant();
    }
  }
  return acc;
}

inline double norm2(const InvariantForm& a, const Eigen::MatrixXd& g) {
  return inner(a, a, g).real();
}

// Gram matrix of the k-form inner product on the lexicographic tuple basis.
inline Eigen::MatrixXd form_gram(int n, int k, const Eigen::MatrixXd& g) {
  const auto tuples = all_tuples(n, k);
  const Eigen::MatrixXd ginv = g.inverse();
  Eigen::MatrixXd gram(tuples.size(), tuples.size());
  Eigen::MatrixXd sub(std::max(k, 1), std::max(k, 1));
  for (std::size_t i = 0; i < tuples.size(); ++i)
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      if (k == 0) {
        gram(i, j) = 1.0;
        continue;
      }
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
          sub(r, c) = ginv(tuples[i][static_cast<std::size_t>(r)], tuples[j][static_cast<std::size_t>(c)]);
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sub.topLeftCorner(k, k).determinant();
    }
  return gram;
}

// ---------------------------------------------------------------------------
// (p,q)-bigrading induced by a complex structure J (J^2 = -Id).
// Type-(1,0) vectors are the +i eigenvectors of J.
// ---------------------------------------------------------------------------

// Basis of the +i eigenspace of J, as columns (ambient complex coordinates).
inline Eigen::MatrixXcd type10_basis(const Eigen::MatrixXd& J) {
  const int n2 = static_cast<int>(J.rows());
  Eigen::MatrixXcd P = 0.5 * (Eigen::MatrixXcd::Identity(n2, n2) - cplx(0, 1) * J.cast<cplx>());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(P);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  if (2 * rank != n2) throw std::invalid_argument("type10_basis: J is not a complex structure");
  Eigen::MatrixXcd Q = qr.householderQ();
  return Q.leftCols(rank);
}

struct BigradedForm {
  int ambient = 0;
  int degree = 0;
  std::map<std::pair<int, int>, InvariantForm> components;

  InvariantForm component(int p, int q) const {
    auto it = components.find({p, q});
    if (it != components.end()) return it->second;
    return InvariantForm(ambient, degree);
  }

  InvariantForm sum() const {
    InvariantForm s(ambient, degree);
    for (const auto& kv : components) s += kv.second;
    return s;
  }
};

// Full decomposition of a k-form into (p,q) components with respect to J.
inline BigradedForm bigrade(const InvariantForm& a, const Eigen::MatrixXd& J) {
  const int n2 = a.ambient();
  const int k = a.degree();
  const Eigen::MatrixXcd W = type10_basis(J);
  const int n = static_cast<int>(W.cols());
  // Frame (W_1..W_n, conj(W_1)..conj(W_n)) and its dual coframe rows.
  Eigen::MatrixXcd B(n2, n2);
  B.leftCols(n) = W;
  B.rightCols(n) = W.conjugate();
  const Eigen::MatrixXcd Binv = B.inverse();
  std::vector<InvariantForm> w10, w01;
  for (int j = 0; j < n; ++j) {
    w10.push_back(InvariantForm::covector(Binv.row(j).transpose()));
    w01.push_back(InvariantForm::covector(Binv.row(n + j).transpose()));
  }
  BigradedForm out;
  out.ambient = n2;
  out.degree = k;
  for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) {
    const int q = k - p;
    InvariantForm comp(n2, k);
    const auto tp = all_tuples(n, p);
    const auto tq = all_tuples(n, q);
    Eigen::MatrixXcd args(n2, k);
    for (const auto& I : tp) {
      for (const auto& Jt : tq) {
        for (int c = 0; c < p; ++c) args.col(c) = W.col(I[static_cast<std::size_t>(c)]);
        for (int c = 0; c < q; ++c)
          args.col(p + c) = W.col(Jt[static_cast<std::size_t>(c)]).conjugate();
        const cplx coef = (k == 0) ? a.coeff()(0) : evaluate(a, args);
        if (std::abs(coef) < 1e-300) continue;
        InvariantForm basis_form(n2, 0);
        basis_form.coeff()(0) = 1.0;
        for (int c = 0; c < p; ++c) basis_form = wedge(basis_form, w10[static_cast<std::size_t>(I[static_cast<std::size_t>(c)])]);
        for (int c = 0; c < q; ++c) basis_form = wedge(basis_form, w01[static_cast<std::size_t>(Jt[static_cast<std::size_t>(c)])]);
        comp += coef * basis_form;
      }
    }
    out.components[{p, q}] = comp;
  }
  return out;
}

// Single (p,q) component; rejects p+q != deg.
inline InvariantForm pq_project(const InvariantForm& a, const Eigen::MatrixXd& J, int p, int q) {
  if (p + q != a.degree()) throw std::invalid_argument("pq_project: p+q must equal the degree");
  return bigrade(a, J).component(p, q);
}

// Pullback by J: (J*a)(X_1,...,X_k) = a(JX_1,...,JX_k).
inline InvariantForm j_pullback(const InvariantForm& a, const Eigen::MatrixXd& J) {
  return pullback(a, J.cast<cplx>());
}

}  // namespace hermlie
