#include "fsi/fe/export.hpp"

#include <filesystem>
#include <fstream>

#include "fsi/la/matrix_market.hpp"

namespace fsi::fe {

namespace fs = std::filesystem;

void export_block_system(const BlockSystem& sys, const std::string& dir) {
  fs::create_directories(dir);
  const std::pair<const char*, const la::SparseMatrix*> blocks[] = {
      {"S", &sys.S},     {"G", &sys.G},   {"F_uu", &sys.F_uu}, {"F_up", &sys.F_up},
      {"F_pu", &sys.F_pu}, {"F_pp", &sys.F_pp}, {"D", &sys.D},   {"C1", &sys.C1},
      {"C2", &sys.C2},   {"C3", &sys.C3}, {"C4", &sys.C4},     {"C5", &sys.C5}};
  std::ofstream manifest(fs::path(dir) / "manifest.txt");
  if (!manifest) throw Error("export_block_system: cannot write to " + dir);
  manifest << "format=matrix-market\n";
  for (const auto& [name, m] : blocks) {
    const std::string file = std::string(name) + ".mtx";
    la::write_matrix_market((fs::path(dir) / file).string(), *m);
    manifest << "block." << name << '=' << file << '\n';
    manifest << "block." << name << ".shape=" << m->nrows() << 'x' << m->ncols() << '\n';
  }
  Index offset = 0;
  for (const auto& [seg, len] : sys.layout()) {
    manifest << "segment." << la::to_string(seg) << '=' << offset << ',' << offset + len << '\n';
    offset += len;
  }
  manifest << "rhs=rhs.txt\n";
  manifest << "total=" << offset << '\n';
  std::ofstream rhs(fs::path(dir) / "rhs.txt");
  for (double v : sys.rhs.data()) rhs << la::format_double(v) << '\n';
  std::ofstream iface(fs::path(dir) / "interface_velocity_dofs.txt");
  for (Index d : sys.interface_velocity_dofs) iface << d << '\n';
  manifest << "interface_velocity_dofs=interface_velocity_dofs.txt\n";
  if (!manifest || !rhs || !iface) throw Error("export_block_system: write failed in " + dir);
}

void write_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("write_mesh: cannot open " + path);
  mesh.write(os);
}

}  // namespace fsi::fe
