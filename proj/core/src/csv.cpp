#include "ruledgeo/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ruledgeo/errors.hpp"
#include "ruledgeo/parallel.hpp"

namespace ruledgeo::io {

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void Csv::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += names[i];
  }
  buf_ += '\n';
}

void Csv::field(double x) {
  if (row_open_) buf_ += ',';
  buf_ += fmt17(x);
  row_open_ = true;
}

void Csv::field(long long n) {
  if (row_open_) buf_ += ',';
  buf_ += std::to_string(n);
  row_open_ = true;
}

void Csv::field(const std::string& s) {
  if (row_open_) buf_ += ',';
  buf_ += s;
  row_open_ = true;
}

void Csv::end_row() {
  buf_ += '\n';
  row_open_ = false;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::runtime_error("missing CSV column: " + name);
}

Table read_table(const std::string& path) {
  const std::string content = read_file(path);
  Table t;
  std::istringstream in(content);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first) {
      t.header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) {
      if (c == "nan") {
        row.push_back(std::nan(""));
      } else {
        char* end = nullptr;
        row.push_back(std::strtod(c.c_str(), &end));
        if (end == c.c_str())
          throw std::runtime_error("bad CSV number '" + c + "' in " + path);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string invariants_csv(const SanniaInvariants& inv) {
  Csv csv;
  csv.header({"u", "kappa0", "kappa1", "kappa2", "theta", "phi"});
  for (std::size_t i = 0; i < inv.size(); ++i) {
    csv.field(inv.u[i]);
    csv.field(inv.kappa0[i]);
    csv.field(inv.kappa1[i]);
    csv.field(inv.kappa2[i]);
    csv.field(inv.theta_defined[i] ? inv.theta[i]
                                   : std::numeric_limits<double>::quiet_NaN());
    csv.field(inv.phi[i]);
    csv.end_row();
  }
  return csv.str();
}

InvariantTable read_invariants_table(const std::string& path) {
  const Table t = read_table(path);
  const std::size_t cu = t.column("u"), c0 = t.column("kappa0"),
                    c1 = t.column("kappa1"), c2 = t.column("kappa2"),
                    cth = t.column("theta"), cph = t.column("phi");
  InvariantTable out;
  for (const auto& row : t.rows) {
    out.u.push_back(row[cu]);
    out.kappa0.push_back(row[c0]);
    out.kappa1.push_back(row[c1]);
    out.kappa2.push_back(row[c2]);
    out.theta.push_back(row[cth]);
    out.phi.push_back(row[cph]);
  }
  return out;
}

std::string striction_csv(const StrictionResult& res) {
  Csv csv;
  csv.header({"u", "v_root", "x", "y", "z", "branch_id"});
  for (const RulingStriction& rs : res.per_u)
    for (const StrictionRoot& r : rs.roots) {
      csv.field(rs.u);
      csv.field(r.v);
      csv.field(r.point[0]);
      csv.field(r.point[1]);
      csv.field(r.point[2]);
      csv.field(static_cast<long long>(r.branch));
      csv.end_row();
    }
  return csv.str();
}

std::string reconstruction_csv(const ReconstructedSurface& rec) {
  Csv csv;
  csv.header({"u", "x", "y", "z", "x1_1", "x1_2", "x1_3", "x2_1", "x2_2",
              "x2_3", "x3_1", "x3_2", "x3_3"});
  for (std::size_t i = 0; i < rec.u.size(); ++i) {
    csv.field(rec.u[i]);
    for (int c = 0; c < 3; ++c) csv.field(rec.alpha[i][c]);
    for (int f = 0; f < 3; ++f)
      for (int c = 0; c < 3; ++c) csv.field(rec.frame[i][f][c]);
    csv.end_row();
  }
  return csv.str();
}

std::string curvature_csv(const RuledSurfaceSpec& spec,
                          const std::vector<double>& ugrid,
                          const std::vector<double>& vgrid, double step,
                          unsigned threads) {
  struct Row {
    double u, v;
    CurvatureReport rep;
    bool valid = false;
  };
  std::vector<Row> rows(ugrid.size() * vgrid.size());
  double vlo = 0.0, vhi = 0.0;
  for (double v : vgrid) {
    vlo = std::min(vlo, v);
    vhi = std::max(vhi, v);
  }
  parallel_for(ugrid.size(), threads, [&](std::size_t iu) {
    const RulingTrace trace = ruling_sweep(spec, ugrid[iu], vlo, vhi, step);
    for (std::size_t iv = 0; iv < vgrid.size(); ++iv) {
      Row& row = rows[iu * vgrid.size() + iv];
      row.u = ugrid[iu];
      row.v = vgrid[iv];
      if (vgrid[iv] > trace.reached_max() + 1e-9 ||
          vgrid[iv] < trace.reached_min() - 1e-9)
        continue;
      const SurfaceJet jet = trace.jet_at(vgrid[iv]);
      if (!jet.rank2) {
        row.valid = true;
        row.rep.rank2 = false;
        row.rep.K_ambient = row.rep.K_ext = row.rep.K_intrinsic =
            row.rep.lambda = row.rep.sigma = row.rep.h_uv = std::nan("");
        continue;
      }
      row.rep = curvature_report(*spec.metric, jet, spec.eps_reg);
      row.valid = true;
    }
  });
  Csv csv;
  csv.header({"u", "v", "K_ambient", "K_ext", "K_intrinsic", "lambda", "sigma",
              "h_uv", "rank2"});
  const double nan = std::nan("");
  for (const Row& row : rows) {
    if (!row.valid) continue;
    csv.field(row.u);
    csv.field(row.v);
    csv.field(row.rep.K_ambient);
    csv.field(row.rep.K_ext);
    csv.field(row.rep.K_intrinsic);
    csv.field(row.rep.lambda_defined ? row.rep.lambda : nan);
    csv.field(row.rep.sigma);
    csv.field(row.rep.h_uv);
    csv.field(static_cast<long long>(row.rep.rank2 ? 1 : 0));
    csv.end_row();
  }
  return csv.str();
}

std::string mesh_attributes_csv(const MeshGrid& mesh) {
  Csv csv;
  csv.header({"i", "j", "u", "v", "K_ext", "lambda", "sigma"});
  const double nan = std::nan("");
  for (std::size_t i = 0; i < mesh.us.size(); ++i)
    for (std::size_t j = 0; j < mesh.vs.size(); ++j) {
      const MeshVertex& vert = mesh.at(i, j);
      if (!vert.valid) continue;
      csv.field(static_cast<long long>(i));
      csv.field(static_cast<long long>(j));
      csv.field(mesh.us[i]);
      csv.field(mesh.vs[j]);
      csv.field(vert.rank2 ? vert.kext : nan);
      csv.field(vert.lambda_defined ? vert.lambda : nan);
      csv.field(vert.rank2 ? vert.sigma : nan);
      csv.end_row();
    }
  return csv.str();
}

}  // namespace ruledgeo::io
