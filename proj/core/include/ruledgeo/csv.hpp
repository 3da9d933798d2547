#pragma once
#include <string>
#include <vector>

#include "ruledgeo/reconstruction.hpp"
#include "ruledgeo/ruled_surface.hpp"
#include "ruledgeo/sannia.hpp"
#include "ruledgeo/striction.hpp"

namespace ruledgeo::io {

// 17 significant digits, '.' decimal separator, non-finite values as
// "nan"/"inf"/"-inf"; output is byte-stable across runs.
std::string fmt17(double x);

// Minimal row buffer with '\n' line endings.
class Csv {
 public:
  void header(const std::vector<std::string>& names);
  void field(double x);
  void field(long long n);
  void field(const std::string& s);
  void end_row();
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
  bool row_open_ = false;
};

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
};

Table read_table(const std::string& path);

// columns: u, kappa0, kappa1, kappa2, theta, phi (theta is "nan" where the
// angle is undefined, cos φ = 0)
std::string invariants_csv(const SanniaInvariants& inv);
InvariantTable read_invariants_table(const std::string& path);

// columns: u, v_root, x, y, z, branch_id
std::string striction_csv(const StrictionResult& res);

// columns: u, x, y, z, then the nine frame components X1,X2,X3
std::string reconstruction_csv(const ReconstructedSurface& rec);

// columns: u, v, K_ambient, K_ext, K_intrinsic, lambda, sigma, h_uv, rank2
std::string curvature_csv(const RuledSurfaceSpec& spec,
                          const std::vector<double>& ugrid,
                          const std::vector<double>& vgrid, double step,
                          unsigned threads);

// sidecar for the OBJ grid: i, j, u, v, K_ext, lambda, sigma
std::string mesh_attributes_csv(const MeshGrid& mesh);

}  // namespace ruledgeo::io
