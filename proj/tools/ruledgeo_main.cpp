#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "ruledgeo/csv.hpp"
#include "ruledgeo/errors.hpp"
#include "ruledgeo/obj_export.hpp"
#include "ruledgeo/parallel.hpp"
#include "ruledgeo/reconstruction.hpp"
#include "ruledgeo/scenario.hpp"
#include "ruledgeo/verify.hpp"

namespace fs = std::filesystem;
using namespace ruledgeo;

namespace {

struct Options {
  std::string scenario_path;
  std::string out_dir = ".";
  double step = 0.0;  // 0 = take the scenario's tolerances.step
  unsigned threads = 0;
};

unsigned resolve_threads(const Options& opt) {
  if (opt.threads > 0) return opt.threads;
  return thread_count_from_env("RULEDGEO_THREADS");
}

io::Scenario load_scenario(const Options& opt) {
  if (opt.scenario_path.empty())
    throw ScenarioError("--scenario is required for this subcommand");
  io::Scenario sc = io::parse_scenario_file(opt.scenario_path);
  if (opt.step > 0.0) sc.tol.step = opt.step;
  return sc;
}

void ensure_out(const Options& opt) { fs::create_directories(opt.out_dir); }

std::string out_path(const Options& opt, const std::string& file) {
  return (fs::path(opt.out_dir) / file).string();
}

int cmd_mesh(const Options& opt) {
  const io::Scenario sc = load_scenario(opt);
  const RuledSurfaceSpec spec = io::build_spec(sc);
  const MeshGrid mesh =
      build_mesh(spec, io::scenario_ugrid(sc), io::scenario_vgrid(sc),
                 sc.tol.step, resolve_threads(opt));
  ensure_out(opt);
  io::write_file(out_path(opt, "mesh.obj"), io::mesh_obj(mesh));
  io::write_file(out_path(opt, "mesh_attributes.csv"),
                 io::mesh_attributes_csv(mesh));
  std::printf("wrote %s and %s\n", out_path(opt, "mesh.obj").c_str(),
              out_path(opt, "mesh_attributes.csv").c_str());
  return 0;
}

int cmd_curvature(const Options& opt) {
  const io::Scenario sc = load_scenario(opt);
  const RuledSurfaceSpec spec = io::build_spec(sc);
  ensure_out(opt);
  io::write_file(out_path(opt, "curvature.csv"),
                 io::curvature_csv(spec, io::scenario_ugrid(sc),
                                   io::scenario_vgrid(sc), sc.tol.step,
                                   resolve_threads(opt)));
  std::printf("wrote %s\n", out_path(opt, "curvature.csv").c_str());
  return 0;
}

int cmd_invariants(const Options& opt, bool arclength) {
  const io::Scenario sc = load_scenario(opt);
  RuledSurfaceSpec spec = io::build_spec(sc);
  std::vector<double> ugrid = io::scenario_ugrid(sc);
  if (arclength) {
    spec = io::resample_by_arclength(spec);
    ugrid = uniform_grid(spec.u_min, spec.u_max, ugrid.size());
  }
  const SanniaInvariants inv = sannia_invariants(spec, ugrid);
  ensure_out(opt);
  io::write_file(out_path(opt, "invariants.csv"), io::invariants_csv(inv));
  std::printf("wrote %s\n", out_path(opt, "invariants.csv").c_str());
  return 0;
}

int cmd_striction(const Options& opt) {
  const io::Scenario sc = load_scenario(opt);
  const RuledSurfaceSpec spec = io::build_spec(sc);
  StrictionOptions sopt = io::scenario_striction_options(sc);
  if (opt.step > 0.0) sopt.step = opt.step;
  sopt.threads = resolve_threads(opt);
  const StrictionResult res =
      find_striction_numeric(spec, io::scenario_ugrid(sc), sc.striction.v_min,
                             sc.striction.v_max, sopt);
  const MeshGrid mesh =
      build_mesh(spec, io::scenario_ugrid(sc), io::scenario_vgrid(sc),
                 sc.tol.step, sopt.threads);
  ensure_out(opt);
  io::write_file(out_path(opt, "striction.csv"), io::striction_csv(res));
  io::write_file(out_path(opt, "striction.obj"), io::mesh_obj(mesh, &res));

  int found = 0, notfound = 0, degenerate = 0, truncated = 0;
  for (const RulingStriction& rs : res.per_u) {
    found += rs.verdict == StrictionVerdictKind::Found;
    notfound += rs.verdict == StrictionVerdictKind::NotFound;
    degenerate += rs.verdict == StrictionVerdictKind::Degenerate;
    truncated += rs.truncated;
  }
  std::printf(
      "striction: %d branches; per-ruling verdicts: %d found, %d not found, "
      "%d degenerate (%d truncated by chart exit)\n",
      res.branch_count, found, notfound, degenerate, truncated);
  if (notfound > 0 && spec.metric->tag().is_constant &&
      spec.metric->tag().k < 0.0) {
    for (const RulingStriction& rs : res.per_u) {
      if (rs.verdict != StrictionVerdictKind::NotFound) continue;
      const SpaceFormStriction sf =
          spaceform_striction_v(spaceform_coefficients(spec, rs.u));
      std::printf("  u=%g: closed-form arctanh argument %.12g lies outside "
                  "(-1, 1); no striction point on this ruling\n",
                  rs.u, sf.arg);
      break;
    }
  }
  std::printf("wrote %s and %s\n", out_path(opt, "striction.csv").c_str(),
              out_path(opt, "striction.obj").c_str());
  return 0;
}

int cmd_reconstruct(const Options& opt) {
  const io::Scenario sc = load_scenario(opt);
  if (!sc.reconstruct.present)
    throw ScenarioError("scenario has no 'reconstruct' section");
  const ChartMetric metric = io::build_metric(sc.metric);

  const InvariantTable table =
      io::read_invariants_table(sc.reconstruct.invariants_csv);
  const ChartPoint p0{sc.reconstruct.p0};
  SanniaFrame frame;
  if (sc.reconstruct.frame) {
    frame = SanniaFrame{TangentVec{p0, (*sc.reconstruct.frame)[0]},
                        TangentVec{p0, (*sc.reconstruct.frame)[1]},
                        TangentVec{p0, (*sc.reconstruct.frame)[2]}};
  } else {
    const auto axes = orthonormalize(
        metric, p0.coords, {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
    frame = SanniaFrame{TangentVec{p0, axes[0]}, TangentVec{p0, axes[1]},
                        TangentVec{p0, axes[2]}};
  }
  const InvariantPrescription presc = prescription_from_table(
      table, p0, frame, sc.reconstruct.u0, sc.reconstruct.u_begin,
      sc.reconstruct.u_end);
  const ReconstructedSurface rec = reconstruct(metric, presc, sc.tol.step);
  ensure_out(opt);
  io::write_file(out_path(opt, "reconstructed_curve.csv"),
                 io::reconstruction_csv(rec));
  std::printf("reconstructed %zu samples on [%.17g, %.17g], drift %.3g\n",
              rec.u.size(), rec.u.empty() ? 0.0 : rec.u.front(),
              rec.u.empty() ? 0.0 : rec.u.back(),
              orthonormality_drift(metric, rec));
  std::printf("wrote %s\n", out_path(opt, "reconstructed_curve.csv").c_str());
  return 0;
}

int cmd_verify(const Options& opt) {
  const unsigned threads = resolve_threads(opt);
  const auto results = verify::run_acceptance(threads);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %s\n    %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str());
    all = all && r.passed;
  }
  std::printf("%s: %zu criteria\n", all ? "PASS" : "FAIL", results.size());
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ruled surfaces in Riemannian 3-manifolds: meshes, curvature, "
               "Sannia invariants, striction curves, reconstruction"};
  app.require_subcommand(1);

  Options opt;
  bool arclength = false;

  auto add_common = [&](CLI::App* sub, bool needs_scenario) {
    if (needs_scenario)
      sub->add_option("--scenario", opt.scenario_path, "scenario JSON file")
          ->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--step", opt.step, "integrator step override");
    sub->add_option("--threads", opt.threads,
                    "worker threads (default: RULEDGEO_THREADS or 1)");
  };

  add_common(app.add_subcommand("mesh", "OBJ grid plus attribute CSV"), true);
  add_common(app.add_subcommand("curvature", "curvature report CSV"), true);
  CLI::App* inv = app.add_subcommand("invariants", "Sannia invariant CSV");
  add_common(inv, true);
  inv->add_flag("--arclength", arclength,
                "resample the base curve by arc length first");
  add_common(
      app.add_subcommand("striction", "striction curves CSV + annotated OBJ"),
      true);
  add_common(app.add_subcommand("reconstruct",
                                "rebuild a curve from an invariants CSV"),
             true);
  add_common(app.add_subcommand("verify", "run the acceptance suite"), false);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    if (command == "mesh") return cmd_mesh(opt);
    if (command == "curvature") return cmd_curvature(opt);
    if (command == "invariants") return cmd_invariants(opt, arclength);
    if (command == "striction") return cmd_striction(opt);
    if (command == "reconstruct") return cmd_reconstruct(opt);
    if (command == "verify") return cmd_verify(opt);
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "scenario error: %s\n", e.what());
    return 1;
  } catch (const GeometryError& e) {
    std::fprintf(stderr, "geometry error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
