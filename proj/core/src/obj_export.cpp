#include "ruledgeo/obj_export.hpp"

#include <map>

#include "ruledgeo/csv.hpp"

namespace ruledgeo::io {

std::string mesh_obj(const MeshGrid& mesh, const StrictionResult* striction) {
  std::string out;
  out += "# ruledgeo surface grid, " + std::to_string(mesh.us.size()) + " x " +
         std::to_string(mesh.vs.size()) + " samples\n";

  const std::size_t nv = mesh.vs.size();
  // OBJ indices are 1-based; invalid vertices get 0 and drop their faces.
  std::vector<long long> index(mesh.verts.size(), 0);
  long long next = 1;
  for (std::size_t i = 0; i < mesh.us.size(); ++i)
    for (std::size_t j = 0; j < nv; ++j) {
      const MeshVertex& vert = mesh.at(i, j);
      if (!vert.valid) continue;
      index[i * nv + j] = next++;
      out += "v " + fmt17(vert.point[0]) + " " + fmt17(vert.point[1]) + " " +
             fmt17(vert.point[2]) + "\n";
    }
  for (std::size_t i = 0; i + 1 < mesh.us.size(); ++i)
    for (std::size_t j = 0; j + 1 < nv; ++j) {
      const long long a = index[i * nv + j];
      const long long b = index[(i + 1) * nv + j];
      const long long c = index[(i + 1) * nv + j + 1];
      const long long d = index[i * nv + j + 1];
      if (a && b && c && d)
        out += "f " + std::to_string(a) + " " + std::to_string(b) + " " +
               std::to_string(c) + " " + std::to_string(d) + "\n";
    }

  if (striction) {
    std::map<int, std::vector<long long>> branches;
    for (const RulingStriction& rs : striction->per_u)
      for (const StrictionRoot& r : rs.roots) {
        out += "v " + fmt17(r.point[0]) + " " + fmt17(r.point[1]) + " " +
               fmt17(r.point[2]) + "\n";
        branches[r.branch].push_back(next++);
      }
    for (const auto& [branch, ids] : branches) {
      if (ids.size() < 2) continue;
      out += "l";
      for (long long id : ids) out += " " + std::to_string(id);
      out += "\n";
    }
  }
  return out;
}

}  // namespace ruledgeo::io
