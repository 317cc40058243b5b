#pragma once

#include <array>

#include "fsi/common.hpp"
#include "fsi/fe/mesh.hpp"

namespace fsi::fe {

/// Barycentric quadrature point; weights sum to one (multiply by the area).
struct QuadPoint {
  std::array<double, 3> bary;
  double weight;
};

/// 7-point rule, exact for polynomials of degree 5.
const std::array<QuadPoint, 7>& triangle_quadrature();

/// Affine triangle data: area and constant barycentric gradients.
struct ElementGeometry {
  double area = 0.0;
  std::array<std::array<double, 2>, 3> grad_bary{};
};

/// Throws AssemblyError when the triangle is inverted or degenerate.
ElementGeometry element_geometry(const Mesh& mesh, Index t);

using Grad = std::array<double, 2>;

std::array<double, 3> p1_values(const std::array<double, 3>& l);
std::array<double, 6> p2_values(const std::array<double, 3>& l);
std::array<Grad, 6> p2_gradients(const std::array<double, 3>& l, const ElementGeometry& g);

}  // namespace fsi::fe
