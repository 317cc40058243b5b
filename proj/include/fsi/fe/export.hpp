#pragma once

#include <string>

#include "fsi/fe/block_system.hpp"
#include "fsi/fe/mesh.hpp"

namespace fsi::fe {

/// Writes every block as <name>.mtx, the right-hand side as rhs.txt (one
/// value per line) and manifest.txt with key=value lines naming each block,
/// its shape and the segment ranges. Creates `dir` if needed.
void export_block_system(const BlockSystem& sys, const std::string& dir);

void write_mesh(const Mesh& mesh, const std::string& path);

}  // namespace fsi::fe
