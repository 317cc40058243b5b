#include "fsi/fe/reference_element.hpp"

#include <string>

namespace fsi::fe {

const std::array<QuadPoint, 7>& triangle_quadrature() {
  static const std::array<QuadPoint, 7> rule = [] {
    const double a1 = 0.059715871789769820, b1 = 0.470142064105115090;
    const double a2 = 0.797426985353087322, b2 = 0.101286507323456339;
    const double w1 = 0.132394152788506181, w2 = 0.125939180544827153;
    return std::array<QuadPoint, 7>{{
        {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.225},
        {{a1, b1, b1}, w1},
        {{b1, a1, b1}, w1},
        {{b1, b1, a1}, w1},
        {{a2, b2, b2}, w2},
        {{b2, a2, b2}, w2},
        {{b2, b2, a2}, w2},
    }};
  }();
  return rule;
}

ElementGeometry element_geometry(const Mesh& mesh, Index t) {
  const auto& v = mesh.triangle(t);
  const Point &a = mesh.vertices()[v[0]], &b = mesh.vertices()[v[1]], &c = mesh.vertices()[v[2]];
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  if (!(det > 0.0)) {
    throw AssemblyError("element " + std::to_string(t) + " has non-positive Jacobian determinant", t);
  }
  ElementGeometry g;
  g.area = 0.5 * det;
  g.grad_bary[0] = {(b.y - c.y) / det, (c.x - b.x) / det};
  g.grad_bary[1] = {(c.y - a.y) / det, (a.x - c.x) / det};
  g.grad_bary[2] = {(a.y - b.y) / det, (b.x - a.x) / det};
  return g;
}

std::array<double, 3> p1_values(const std::array<double, 3>& l) { return l; }

std::array<double, 6> p2_values(const std::array<double, 3>& l) {
  return {l[0] * (2.0 * l[0] - 1.0), l[1] * (2.0 * l[1] - 1.0), l[2] * (2.0 * l[2] - 1.0),
          4.0 * l[0] * l[1],         4.0 * l[1] * l[2],         4.0 * l[2] * l[0]};
}

std::array<Grad, 6> p2_gradients(const std::array<double, 3>& l, const ElementGeometry& g) {
  std::array<Grad, 6> out{};
  for (int i = 0; i < 3; ++i) {
    for (int d = 0; d < 2; ++d) out[i][d] = (4.0 * l[i] - 1.0) * g.grad_bary[i][d];
  }
  const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (int e = 0; e < 3; ++e) {
    const int i = pairs[e][0], j = pairs[e][1];
    for (int d = 0; d < 2; ++d) out[3 + e][d] = 4.0 * (l[i] * g.grad_bary[j][d] + l[j] * g.grad_bary[i][d]);
  }
  return out;
}

}  // namespace fsi::fe
