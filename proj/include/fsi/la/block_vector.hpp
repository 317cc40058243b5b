#pragma once

#include <initializer_list>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fsi/common.hpp"

namespace fsi::la {

enum class Segment { solid, geometry, fluid_velocity, fluid_pressure, interface };

std::string_view to_string(Segment s);

/// Contiguous vector partitioned into named segments.
class BlockVector {
public:
  BlockVector() = default;
  /// Zero vector with the given segment layout; names must be unique.
  explicit BlockVector(std::vector<std::pair<Segment, Index>> layout);
  BlockVector(std::vector<std::pair<Segment, Index>> layout, Vector data);

  Index size() const { return data_.size(); }
  bool has(Segment s) const;
  Index offset(Segment s) const;
  Index length(Segment s) const;

  std::span<double> segment(Segment s);
  std::span<const double> segment(Segment s) const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  Vector& vector() { return data_; }
  const Vector& vector() const { return data_; }

  const std::vector<std::pair<Segment, Index>>& layout() const { return layout_; }

private:
  Index find(Segment s) const;
  std::vector<std::pair<Segment, Index>> layout_;
  std::vector<Index> offsets_;
  Vector data_;
};

}  // namespace fsi::la
