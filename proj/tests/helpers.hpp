#pragma once

#include <random>

#include "hermlie/presets.hpp"
#include "hermlie/samelson.hpp"

namespace testhelp {

using namespace hermlie;

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0xc0ffee123456789ULL ^ salt); }

inline InvariantForm random_form(int n, int k, std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  InvariantForm f(n, k);
  for (Eigen::Index i = 0; i < f.coeff().size(); ++i) f.coeff()(i) = cplx(dist(gen), dist(gen));
  return f;
}

inline InvariantForm random_real_form(int n, int k, std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  InvariantForm f(n, k);
  for (Eigen::Index i = 0; i < f.coeff().size(); ++i) f.coeff()(i) = dist(gen);
  return f;
}

inline Eigen::VectorXcd random_vector(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(dist(gen), dist(gen));
  return v;
}

struct PresetBundle {
  GroupPreset preset;
  SamelsonFrame frame;
  HermitianStructure herm;
};

inline PresetBundle bundle(const std::string& id, SamelsonOptions opts = {}) {
  auto p = preset(id);
  if (!p) throw std::runtime_error("unknown preset " + id);
  if (opts.torus_basis.empty()) opts.torus_basis = p->torus_basis;
  SamelsonFrame fr = samelson_frame(p->algebra, p->metric, opts);
  HermitianStructure hs{p->metric, fr.J};
  return {*p, fr, hs};
}

// J-compatible left-invariant metric perturbation; breaks bi-invariance for
// generic directions while keeping (g,J) Hermitian.
inline Eigen::MatrixXd perturb_metric(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J,
                                      double magnitude, std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  const int n = static_cast<int>(g.rows());
  Eigen::MatrixXd out = g;
  for (int rep = 0; rep < 2; ++rep) {
    Eigen::VectorXd a(n);
    for (int i = 0; i < n; ++i) a(i) = dist(gen);
    const Eigen::VectorXd ga = g * a;
    const Eigen::VectorXd gja = g * (J * a);
    out += magnitude * (ga * ga.transpose() + gja * gja.transpose());
  }
  return out;
}

}  // namespace testhelp
