#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hermlie/lie_algebra.hpp"
#include "hermlie/samelson.hpp"

namespace hermlie {

// A group preset: algebra, bi-invariant metric (unit-norm basis), and the
// default maximal torus used for the Samelson construction.
struct GroupPreset {
  std::string id;
  std::string description;
  LieAlgebra algebra;
  Eigen::MatrixXd metric;
  std::vector<int> torus_basis;  // 0-based
  bool even_dimensional() const { return algebra.dim() % 2 == 0; }
};

namespace presets {

inline LieAlgebra su2_algebra(int offset, LieAlgebra base) {
  // [e_i, e_j] = eps_{ijk} e_k on three consecutive indices.
  base.set_bracket(offset + 0, offset + 1, offset + 2, 1.0);
  base.set_bracket(offset + 1, offset + 2, offset + 0, 1.0);
  base.set_bracket(offset + 2, offset + 0, offset + 1, 1.0);
  return base;
}

inline LieAlgebra su3_algebra(int offset, LieAlgebra base) {
  // Totally antisymmetric structure constants of su(3) in the Gell-Mann basis.
  const double h = 0.5;
  const double s3 = std::sqrt(3.0) / 2.0;
  struct Rec {
    int i, j, k;
    double v;
  };
  const Rec recs[] = {{1, 2, 3, 1.0}, {1, 4, 7, h},  {1, 5, 6, -h}, {2, 4, 6, h}, {2, 5, 7, h},
                      {3, 4, 5, h},   {3, 6, 7, -h}, {4, 5, 8, s3}, {6, 7, 8, s3}};
  for (const Rec& r : recs) {
    const int i = offset + r.i - 1, j = offset + r.j - 1, k = offset + r.k - 1;
    base.set_bracket(i, j, k, r.v);
    base.set_bracket(j, k, i, r.v);
    base.set_bracket(k, i, j, r.v);
  }
  return base;
}

inline GroupPreset make(const std::string& id, const std::string& desc, LieAlgebra alg,
                        std::vector<int> torus) {
  GroupPreset p;
  p.id = id;
  p.description = desc;
  p.metric = Eigen::MatrixXd::Identity(alg.dim(), alg.dim());
  p.algebra = std::move(alg);
  p.torus_basis = std::move(torus);
  return p;
}

}  // namespace presets

inline std::vector<std::string> preset_ids() {
  return {"t2", "t4", "su2", "u2", "su2xu1", "su2xsu2", "su3", "su3xu1"};
}

inline std::optional<GroupPreset> preset(const std::string& id) {
  using namespace presets;
  if (id == "t2") return make("t2", "2-torus (abelian)", LieAlgebra(2), {0, 1});
  if (id == "t4") return make("t4", "4-torus (abelian)", LieAlgebra(4), {0, 1, 2, 3});
  if (id == "su2") return make("su2", "su(2), unit-norm bi-invariant basis", su2_algebra(0, LieAlgebra(3)), {2});
  if (id == "u2" || id == "su2xu1")
    return make(id, "su(2) + u(1) = u(2); the Hopf surface S^3 x S^1", su2_algebra(0, LieAlgebra(4)),
                {2, 3});
  if (id == "su2xsu2")
    return make("su2xsu2", "su(2) + su(2)", su2_algebra(3, su2_algebra(0, LieAlgebra(6))), {2, 5});
  if (id == "su3") return make("su3", "su(3), Gell-Mann basis", su3_algebra(0, LieAlgebra(8)), {2, 7});
  if (id == "su3xu1")
    // A complex structure needs even rank, so the u(1) factor is doubled:
    // this is the Lie algebra of U(3) x U(1), rank 4.
    return make("su3xu1", "su(3) + 2 u(1) = u(3) + u(1); rank 4", su3_algebra(0, LieAlgebra(10)),
                {2, 7, 8, 9});
  return std::nullopt;
}

}  // namespace hermlie
