#pragma once

#include <cstdint>

#include "fsi/common.hpp"
#include "fsi/fe/block_system.hpp"

namespace fsi::fe {

struct SyntheticSizes {
  Index solid = 10;
  Index geometry = 10;
  Index velocity = 16;
  Index pressure = 6;
  Index interface = 4;
};

struct SyntheticOptions {
  double density = 0.25;  ///< off-diagonal fill probability
  bool zero_c4 = false;
  bool zero_d = false;
};

/// Random block system with the FSI sparsity pattern. S and G are symmetric
/// and diagonally dominant, F_uu nonsymmetric and diagonally dominant, F_pp a
/// negative diagonal, C1 a Boolean restriction to `interface` randomly chosen
/// velocity DoFs and C3 = C1^T. Bit-identical for equal seeds.
BlockSystem generate_synthetic_block_system(std::uint64_t seed, const SyntheticSizes& sizes,
                                            const SyntheticOptions& options = {});

}  // namespace fsi::fe
