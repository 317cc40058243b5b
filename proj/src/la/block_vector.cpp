#include "fsi/la/block_vector.hpp"

#include <string>

namespace fsi::la {

std::string_view to_string(Segment s) {
  switch (s) {
    case Segment::solid: return "solid";
    case Segment::geometry: return "geometry";
    case Segment::fluid_velocity: return "fluid_velocity";
    case Segment::fluid_pressure: return "fluid_pressure";
    case Segment::interface: return "interface";
  }
  return "unknown";
}

BlockVector::BlockVector(std::vector<std::pair<Segment, Index>> layout)
    : layout_(std::move(layout)) {
  Index total = 0;
  for (Index k = 0; k < layout_.size(); ++k) {
    for (Index m = 0; m < k; ++m) {
      if (layout_[m].first == layout_[k].first) {
        throw Error("BlockVector: duplicate segment " +
                    std::string(to_string(layout_[k].first)));
      }
    }
    offsets_.push_back(total);
    total += layout_[k].second;
  }
  data_.assign(total, 0.0);
}

BlockVector::BlockVector(std::vector<std::pair<Segment, Index>> layout, Vector data)
    : BlockVector(std::move(layout)) {
  if (data.size() != data_.size()) {
    throw DimensionError("BlockVector: data length " + std::to_string(data.size()) +
                         " does not match layout length " + std::to_string(data_.size()));
  }
  data_ = std::move(data);
}

Index BlockVector::find(Segment s) const {
  for (Index k = 0; k < layout_.size(); ++k) {
    if (layout_[k].first == s) return k;
  }
  throw Error("BlockVector: no segment " + std::string(to_string(s)));
}

bool BlockVector::has(Segment s) const {
  for (const auto& [name, len] : layout_) {
    if (name == s) return true;
  }
  return false;
}

Index BlockVector::offset(Segment s) const { return offsets_[find(s)]; }
Index BlockVector::length(Segment s) const { return layout_[find(s)].second; }

std::span<double> BlockVector::segment(Segment s) {
  const Index k = find(s);
  return {data_.data() + offsets_[k], layout_[k].second};
}

std::span<const double> BlockVector::segment(Segment s) const {
  const Index k = find(s);
  return {data_.data() + offsets_[k], layout_[k].second};
}

}  // namespace fsi::la
