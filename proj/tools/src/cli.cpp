#include "rmplate_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmplate/assembly.hpp"
#include "rmplate/errors.hpp"
#include "rmplate/exact.hpp"
#include "rmplate/infsup.hpp"
#include "rmplate/mesh.hpp"
#include "rmplate/solver.hpp"
#include "rmplate/verify.hpp"
#include "rmplate/vtk.hpp"

namespace rmplate::cli {

using nlohmann::ordered_json;

ConfigError::ConfigError(std::string key, const std::string& what)
    : std::runtime_error(key + ": " + what), key_(std::move(key)) {}

std::string to_string(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::Converge: return "converge";
    case Command::Lock: return "lock";
    case Command::Check: return "check";
    case Command::MeshInfo: return "mesh-info";
  }
  return "?";
}

std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Clamped ? "clamped" : "simply-supported";
}

std::string to_string(MultiplierBasis m) { return m == MultiplierBasis::Dual ? "dual" : "p1"; }

namespace {

std::string solver_name(SolverChoice s) {
  switch (s) {
    case SolverChoice::Auto: return "auto";
    case SolverChoice::Saddle: return "saddle";
    case SolverChoice::Condensed: return "condensed";
  }
  return "?";
}

std::string load_name(LoadChoice l) { return l == LoadChoice::Uniform ? "uniform" : "manufactured"; }

bool builtin_mesh(const std::string& spec, int* n) {
  if (spec.rfind("n=", 0) != 0) return false;
  const std::string digits = spec.substr(2);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    throw ConfigError("mesh", "expected n=<positive integer>, got '" + spec + "'");
  }
  *n = std::stoi(digits);
  return true;
}

Mesh load_config_mesh(const RunConfig& cfg) {
  int n = 0;
  if (builtin_mesh(cfg.mesh, &n)) return unit_square_mesh(n);
  return load_mesh_file(cfg.mesh);
}

PlateModel material(const RunConfig& cfg, double t) {
  PlateModel m;
  m.youngs_modulus = cfg.youngs_modulus;
  m.poisson_ratio = cfg.poisson_ratio;
  m.shear_correction = cfg.shear_correction;
  m.thickness = t;
  return m;
}

SolvePath choose_path(const RunConfig& cfg) {
  switch (cfg.solver) {
    case SolverChoice::Saddle: return SolvePath::Saddle;
    case SolverChoice::Condensed: return SolvePath::Condensed;
    case SolverChoice::Auto: break;
  }
  return cfg.multiplier == MultiplierBasis::Dual ? SolvePath::Condensed : SolvePath::Saddle;
}

ordered_json echo(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = to_string(cfg.command);
  j["mesh"] = cfg.mesh;
  j["bc"] = to_string(cfg.bc);
  j["multiplier"] = to_string(cfg.multiplier);
  j["solver"] = solver_name(cfg.solver);
  j["load"] = load_name(cfg.load);
  j["E"] = cfg.youngs_modulus;
  j["nu"] = cfg.poisson_ratio;
  j["kappa"] = cfg.shear_correction;
  j["t"] = cfg.thicknesses;
  if (cfg.command == Command::Converge) {
    j["levels"] = cfg.levels;
    j["base_n"] = cfg.base_n;
  }
  return j;
}

// Nullable number: NaN becomes null.
ordered_json number(double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); }

ordered_json errors_json(const ErrorReport& e) {
  ordered_json j;
  j["h"] = e.h;
  j["t"] = e.t;
  j["rotation_l2"] = e.rotation_l2;
  j["rotation_h1"] = e.rotation_h1;
  j["displacement_l2"] = e.displacement_l2;
  j["displacement_broken_h1"] = e.displacement_broken_h1;
  j["shear_l2"] = e.shear_l2;
  j["shear_tl2"] = e.shear_tl2;
  return j;
}

using Artifacts = std::vector<std::pair<std::string, std::string>>;

// Every file goes to a temporary name first and is renamed once all are
// written, so a failure leaves no result file behind.
void commit(const Artifacts& files) {
  namespace fs = std::filesystem;
  std::vector<fs::path> staged;
  try {
    for (const auto& [path, content] : files) {
      const fs::path tmp = fs::path(path).concat(".partial");
      std::ofstream f(tmp, std::ios::binary);
      if (!f) throw ConfigError("out", "cannot write '" + tmp.string() + "'");
      f << content;
      f.close();
      if (!f) throw ConfigError("out", "failed writing '" + tmp.string() + "'");
      staged.push_back(tmp);
    }
  } catch (...) {
    for (const auto& p : staged) fs::remove(p);
    throw;
  }
  for (std::size_t i = 0; i < files.size(); ++i) fs::rename(staged[i], files[i].first);
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = load_config_mesh(cfg);
  const Discretization spaces = make_discretization(mesh, cfg.bc, cfg.multiplier);
  const double t = cfg.thicknesses.front();
  PlateModel model = material(cfg, t);
  const SolvePath path = choose_path(cfg);

  std::unique_ptr<ManufacturedSolution> exact;
  BlockSystem sys;
  if (cfg.load == LoadChoice::Manufactured) {
    exact = std::make_unique<ManufacturedSolution>(model, cfg.bc);
    sys = assemble_manufactured(mesh, spaces, *exact);
  } else {
    model.transverse_load = [](const Point&) { return 1.0; };
    sys = assemble(mesh, spaces, model);
  }
  const Solution sol = path == SolvePath::Condensed ? solve_condensed(sys) : solve_saddle(sys);
  const DiscreteFields fields(mesh, spaces, sol);

  std::vector<double> mean(mesh.num_triangles());
  for (std::size_t k = 0; k < mesh.num_triangles(); ++k) mean[k] = fields.mean_displacement(k);

  ordered_json j;
  j["config"] = echo(cfg);
  ordered_json s;
  s["path"] = rmplate::to_string(sol.info.path);
  s["rotation_unknowns"] = sol.info.rotation_size;
  s["displacement_unknowns"] = sol.info.displacement_size;
  s["multiplier_unknowns"] = sol.info.multiplier_size;
  s["total_unknowns"] = sys.size();
  s["residual"] = sol.info.residual;
  if (path == SolvePath::Condensed) s["asymmetry"] = sol.info.asymmetry;
  s["h"] = mesh.mesh_size();
  s["max_abs_displacement"] = sol.displacement.size() ? sol.displacement.cwiseAbs().maxCoeff() : 0.0;
  s["central_mean_displacement"] = central_mean(mesh, mean);
  j["solution"] = s;
  if (exact) j["errors"] = errors_json(compute_errors(mesh, fields, *exact, t));

  std::ostringstream vtk;
  write_vtk(vtk, mesh, spaces, sol);
  const std::string summary = j.dump(2) + "\n";
  commit({{cfg.output + ".vtk", vtk.str()}, {cfg.output + ".json", summary}});
  out << summary;
  return kExitOk;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out) {
  StudyConfig sc;
  sc.base_n = cfg.base_n;
  sc.levels = cfg.levels;
  sc.thicknesses = cfg.thicknesses;
  sc.bc = cfg.bc;
  sc.multiplier = cfg.multiplier;
  sc.path = choose_path(cfg);
  sc.youngs_modulus = cfg.youngs_modulus;
  sc.poisson_ratio = cfg.poisson_ratio;
  const auto rows = convergence_study(sc);

  std::ostringstream csv;
  write_csv(csv, rows);
  ordered_json j;
  j["config"] = echo(cfg);
  ordered_json runs = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json e;
    e["level"] = r.level;
    e["n"] = r.n;
    e["errors"] = errors_json(r.errors);
    e["rate_rotation"] = number(r.rate_rotation);
    e["rate_displacement"] = number(r.rate_displacement);
    e["residual"] = r.residual;
    runs.push_back(e);
  }
  j["runs"] = runs;
  commit({{cfg.output + ".csv", csv.str()}, {cfg.output + ".json", j.dump(2) + "\n"}});
  out << csv.str();
  return kExitOk;
}

int cmd_lock(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = load_config_mesh(cfg);
  const PlateModel base = material(cfg, cfg.thicknesses.front());
  const auto mixed =
      locking_sweep(mesh, cfg.thicknesses, cfg.bc, cfg.multiplier, LockingMode::Mixed, base);
  std::vector<LockingRow> naive;
  if (cfg.contrast) {
    naive = locking_sweep(mesh, cfg.thicknesses, cfg.bc, cfg.multiplier, LockingMode::NaiveP1, base);
  }

  std::ostringstream csv;
  csv << "t,deflection" << (cfg.contrast ? ",naive_deflection" : "") << '\n';
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    ordered_json r;
    r["t"] = mixed[i].t;
    r["deflection"] = mixed[i].deflection;
    csv << ordered_json(mixed[i].t).dump() << ',' << ordered_json(mixed[i].deflection).dump();
    if (cfg.contrast) {
      r["naive_deflection"] = naive[i].deflection;
      csv << ',' << ordered_json(naive[i].deflection).dump();
    }
    csv << '\n';
    rows.push_back(r);
  }
  ordered_json j;
  j["config"] = echo(cfg);
  j["rows"] = rows;
  if (mixed.size() >= 2) {
    const double a = mixed[mixed.size() - 2].deflection, b = mixed.back().deflection;
    j["last_relative_change"] = std::abs(b - a) / std::abs(a);
  }
  commit({{cfg.output + ".csv", csv.str()}, {cfg.output + ".json", j.dump(2) + "\n"}});
  out << csv.str();
  return kExitOk;
}

struct Verdict {
  std::string name;
  bool skipped = false;
  bool pass = false;
  double value = 0.0;
  std::string bound;
};

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = load_config_mesh(cfg);
  const Discretization spaces = make_discretization(mesh, cfg.bc, cfg.multiplier);
  const bool dual = cfg.multiplier == MultiplierBasis::Dual;
  std::vector<Verdict> v;

  {
    const double d = biorthogonality_defect(mesh);
    v.push_back({"biorthogonality", false, d <= 1e-12, d, "<= 1e-12"});
  }
  {
    const double d = dual_scaling_defect(mesh);
    v.push_back({"dual_scaling", false, d <= 1e-13, d, "<= 1e-13"});
  }
  {
    const double d = partition_of_unity_defect(mesh, spaces.multiplier);
    const bool dims = spaces.multiplier.vector_dimension() == spaces.rotation.vector_dimension();
    v.push_back({"partition_of_unity", false, d <= 1e-12 && dims, d, "<= 1e-12, dims equal"});
  }

  PlateModel model = material(cfg, cfg.thicknesses.front());
  model.transverse_load = [](const Point&) { return 1.0; };
  const BlockSystem sys = assemble(mesh, spaces, model);
  const Solution saddle = solve_saddle(sys);
  v.push_back({"saddle_residual", false, saddle.info.residual <= 1e-9, saddle.info.residual,
               "<= 1e-9"});
  if (dual) {
    const Solution cond = solve_condensed(sys);
    const double d = relative_difference(saddle, cond);
    v.push_back({"saddle_equals_condensed", false, d <= 1e-8, d, "<= 1e-8"});
  } else {
    v.push_back({"saddle_equals_condensed", true, false, 0.0, "dual multiplier only"});
  }

  if (spaces.rotation.dimension + spaces.multiplier.dimension <= kInfSupLimit) {
    const auto est = estimate_infsup(mesh, InfSupPair::MultiplierRotation, cfg.bc, cfg.multiplier);
    v.push_back({"infsup_multiplier", false, est.beta > 1e-8, est.beta, "> 0"});
  } else {
    v.push_back({"infsup_multiplier", true, false, 0.0, "mesh too large for dense estimate"});
  }

  if (dual && spaces.displacement.dimension + spaces.multiplier.vector_dimension() <= kDenseLimit) {
    const double e = condensed_min_eigenvalue(sys);
    v.push_back({"reduced_positive_definite", false, e > 0.0, e, "> 0"});
  } else {
    v.push_back({"reduced_positive_definite", true, false, 0.0,
                 dual ? "mesh too large for dense eigensolve" : "dual multiplier only"});
  }

  bool all = true;
  ordered_json props = ordered_json::array();
  for (const auto& p : v) {
    const char* status = p.skipped ? "SKIP" : (p.pass ? "PASS" : "FAIL");
    if (!p.skipped && !p.pass) all = false;
    out << status << ' ' << p.name;
    if (!p.skipped) out << " value=" << ordered_json(p.value).dump();
    out << " (" << p.bound << ")\n";
    ordered_json pj;
    pj["name"] = p.name;
    pj["status"] = status;
    if (!p.skipped) pj["value"] = p.value;
    pj["bound"] = p.bound;
    props.push_back(pj);
  }
  if (cfg.output_given) {
    ordered_json j;
    j["config"] = echo(cfg);
    j["properties"] = props;
    j["all_pass"] = all;
    commit({{cfg.output + ".json", j.dump(2) + "\n"}});
  }
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_mesh_info(const RunConfig& cfg, std::ostream& out) {
  const Mesh mesh = load_config_mesh(cfg);
  double min_area = std::numeric_limits<double>::infinity(), max_area = 0.0;
  double min_angle = 180.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double a = mesh.area(t);
    min_area = std::min(min_area, a);
    max_area = std::max(max_area, a);
    const auto c = mesh.corners(t);
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d u = c[(i + 1) % 3] - c[i], w = c[(i + 2) % 3] - c[i];
      const double ang = std::acos(std::clamp(u.dot(w) / (u.norm() * w.norm()), -1.0, 1.0));
      min_angle = std::min(min_angle, ang * 180.0 / M_PI);
    }
  }
  std::size_t boundary_vertices = 0;
  for (std::size_t k = 0; k < mesh.num_vertices(); ++k) boundary_vertices += mesh.is_boundary_vertex(k);

  ordered_json j;
  j["vertices"] = mesh.num_vertices();
  j["boundary_vertices"] = boundary_vertices;
  j["interior_vertices"] = mesh.num_vertices() - boundary_vertices;
  j["triangles"] = mesh.num_triangles();
  j["edges"] = mesh.num_edges();
  j["boundary_edges"] = mesh.num_boundary_edges();
  j["all_boundary_triangles"] = mesh.all_boundary_triangles().size();
  j["h"] = mesh.mesh_size();
  j["min_area"] = min_area;
  j["max_area"] = max_area;
  j["min_angle_deg"] = min_angle;
  const std::string text = j.dump(2) + "\n";
  if (cfg.output_given) commit({{cfg.output + ".json", text}});
  out << text;
  return kExitOk;
}

std::string hint(const Error& e) {
  if (dynamic_cast<const AllBoundaryTriangleError*>(&e)) {
    return "refine the mesh (n=2 or larger) or use --bc simply-supported";
  }
  if (dynamic_cast<const ParseError*>(&e)) return "check the mesh file format (see README)";
  if (dynamic_cast<const TopologyError*>(&e)) return "the mesh connectivity is invalid";
  if (dynamic_cast<const NonDiagonalGramError*>(&e)) return "use --multiplier dual or --solver saddle";
  if (dynamic_cast<const SizeLimitError*>(&e)) return "use a coarser mesh for this diagnostic";
  if (dynamic_cast<const SingularMatrixError*>(&e) || dynamic_cast<const FactorizationError*>(&e)) {
    return "try --solver saddle or a different thickness";
  }
  return "";
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.youngs_modulus > 0.0)) throw ConfigError("E", "must be positive");
  if (!(cfg.poisson_ratio >= 0.0 && cfg.poisson_ratio < 0.5)) {
    throw ConfigError("nu", "must lie in [0, 0.5)");
  }
  if (!(cfg.shear_correction > 0.0)) throw ConfigError("kappa", "must be positive");
  if (cfg.thicknesses.empty()) throw ConfigError("t", "at least one thickness is required");
  for (double t : cfg.thicknesses) {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("t", "thickness must lie in (0, 1)");
  }
  if (cfg.solver == SolverChoice::Condensed && cfg.multiplier != MultiplierBasis::Dual) {
    throw ConfigError("solver", "condensed solver requires --multiplier dual");
  }
  int n = 0;
  if (builtin_mesh(cfg.mesh, &n) && n < 1) throw ConfigError("mesh", "n must be at least 1");
  switch (cfg.command) {
    case Command::Solve:
      if (cfg.thicknesses.size() != 1) throw ConfigError("t", "solve takes a single thickness");
      if (cfg.load == LoadChoice::Manufactured && !builtin_mesh(cfg.mesh, &n)) {
        throw ConfigError("load", "manufactured load needs the built-in unit square mesh");
      }
      break;
    case Command::Converge:
      if (cfg.levels < 3) throw ConfigError("levels", "converge needs at least 3 levels");
      if (cfg.base_n < 1) throw ConfigError("base-n", "must be at least 1");
      break;
    case Command::Lock:
      for (std::size_t i = 1; i < cfg.thicknesses.size(); ++i) {
        if (!(cfg.thicknesses[i] < cfg.thicknesses[i - 1])) {
          throw ConfigError("t", "lock needs a strictly decreasing thickness list");
        }
      }
      break;
    case Command::Check:
      if (cfg.thicknesses.size() != 1) throw ConfigError("t", "check takes a single thickness");
      break;
    case Command::MeshInfo:
      break;
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    switch (cfg.command) {
      case Command::Solve: return cmd_solve(cfg, out);
      case Command::Converge: return cmd_converge(cfg, out);
      case Command::Lock: return cmd_lock(cfg, out);
      case Command::Check: return cmd_check(cfg, out);
      case Command::MeshInfo: return cmd_mesh_info(cfg, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const std::string h = hint(e);
    if (!h.empty()) err << "hint: " << h << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitDomain;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Mixed finite elements for Reissner-Mindlin plates", "rmplate"};
  app.set_config("--config", "", "key = value configuration file");
  app.require_subcommand(1);

  const std::map<std::string, BoundaryCondition> bcs{
      {"clamped", BoundaryCondition::Clamped},
      {"simply-supported", BoundaryCondition::SimplySupported}};
  const std::map<std::string, MultiplierBasis> mults{{"p1", MultiplierBasis::P1},
                                                     {"dual", MultiplierBasis::Dual}};
  const std::map<std::string, SolverChoice> solvers{{"auto", SolverChoice::Auto},
                                                    {"saddle", SolverChoice::Saddle},
                                                    {"condensed", SolverChoice::Condensed}};
  const std::map<std::string, LoadChoice> loads{{"uniform", LoadChoice::Uniform},
                                                {"manufactured", LoadChoice::Manufactured}};

  app.add_option("--mesh", cfg.mesh, "n=K for the unit square or a mesh file")
      ->capture_default_str();
  app.add_option("--bc", cfg.bc, "clamped | simply-supported")
      ->transform(CLI::CheckedTransformer(bcs, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--multiplier", cfg.multiplier, "p1 | dual")
      ->transform(CLI::CheckedTransformer(mults, CLI::ignore_case));
  app.add_option("--solver", cfg.solver, "auto | saddle | condensed")
      ->transform(CLI::CheckedTransformer(solvers, CLI::ignore_case));
  app.add_option("--load", cfg.load, "solve: uniform | manufactured")
      ->transform(CLI::CheckedTransformer(loads, CLI::ignore_case));
  app.add_option("--E", cfg.youngs_modulus, "Young's modulus")->capture_default_str();
  app.add_option("--nu", cfg.poisson_ratio, "Poisson ratio")->capture_default_str();
  app.add_option("--kappa", cfg.shear_correction, "shear correction factor")->capture_default_str();
  app.add_option("--t", cfg.thicknesses, "thickness or comma-separated list")->delimiter(',');
  app.add_option("--levels", cfg.levels, "converge: number of refinement levels")
      ->capture_default_str();
  app.add_option("--base-n", cfg.base_n, "converge: coarsest unit square subdivision")
      ->capture_default_str();
  auto* out_opt = app.add_option("--out", cfg.output, "prefix of written files")->capture_default_str();
  app.add_flag("--contrast", cfg.contrast, "lock: add the naive P1-P1 contrast column");

  const std::vector<std::pair<Command, std::string>> commands{
      {Command::Solve, "solve a plate problem and export fields"},
      {Command::Converge, "manufactured-solution convergence study"},
      {Command::Lock, "uniform-load deflection over decreasing thickness"},
      {Command::Check, "run the discrete property checks"},
      {Command::MeshInfo, "mesh counts and quality"}};
  for (const auto& [cmd, desc] : commands) {
    auto* sub = app.add_subcommand(to_string(cmd), desc);
    sub->fallthrough();
    sub->callback([&cfg, c = cmd] { cfg.command = c; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  cfg.output_given = out_opt->count() > 0;
  return run(cfg, out, err);
}

}  // namespace rmplate::cli
