// Command-line front end: model generation, joint eigenvalue measures,
// the verification suites, and grid densities. Exit codes: 0 ok,
// 1 verification failure, 2 commutation failure, 3 decomposition failure,
// 4 grid failure, 5 I/O failure.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "brown/linalg.hpp"
#include "brown/models.hpp"
#include "brown/serialize.hpp"
#include "brown/suites.hpp"

namespace fs = std::filesystem;
using namespace brown;

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::io, "cannot parse " + path + ": " + e.what());
  }
  return j;
}

void write_file(const std::string& path, const std::string& bytes) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out << bytes;
}

void write_json(const std::string& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

std::vector<ComplexMatrix> load_matrices(const std::vector<std::string>& paths) {
  std::vector<ComplexMatrix> mats;
  for (const auto& p : paths) mats.push_back(matrix_from_json(read_json(p)));
  return mats;
}

struct TolFlags {
  double angle = -1, rank = -1, comm = -1, boundary = -1, merge = -1, subspace = -1;

  Tolerances apply() const {
    Tolerances t;
    if (angle > 0) t.angle = angle;
    if (rank > 0) t.rank_rel = rank;
    if (comm > 0) t.commutation_rel = comm;
    if (boundary > 0) t.boundary_delta = boundary;
    if (merge > 0) t.merge_tol = merge;
    if (subspace > 0) t.subspace_dist = subspace;
    return t;
  }
  void attach(CLI::App* cmd) {
    cmd->add_option("--tol-angle", angle, "principal-angle meet tolerance");
    cmd->add_option("--tol-rank", rank, "relative singular-value rank cutoff");
    cmd->add_option("--tol-comm", comm, "relative commutator bound");
    cmd->add_option("--tol-boundary", boundary, "region boundary guard");
    cmd->add_option("--tol-merge", merge, "atom merge radius");
    cmd->add_option("--tol-subspace", subspace, "subspace verification distance");
  }
  Json echo(const Tolerances& t) const {
    return Json{{"angle", t.angle},
                {"rank_rel", t.rank_rel},
                {"commutation_rel", t.commutation_rel},
                {"boundary_delta", t.boundary_delta},
                {"merge_tol", t.merge_tol},
                {"subspace_dist", t.subspace_dist}};
  }
};

int cmd_gen(const std::string& kind, int d, int d2, int n, std::uint64_t seed, double cond,
            double min_sep, const std::vector<std::string>& inputs, const std::string& blocks,
            const std::string& polys_json, const std::string& out_dir, const Tolerances& tol) {
  GeneratedModel model;
  if (kind == "ginibre") {
    model = make_ginibre(d, seed);
  } else if (kind == "conjugated_diagonal") {
    model = make_conjugated_diagonal(d, n, seed, cond, min_sep, tol);
  } else if (kind == "normal") {
    model = make_normal(d, seed, tol);
  } else if (kind == "kronecker_pair") {
    model = make_kronecker_pair(d, d2, seed, tol);
  } else if (kind == "poly_of_jordan") {
    std::vector<JordanBlockSpec> layout;
    for (const auto& b : Json::parse(blocks))
      layout.push_back(JordanBlockSpec{Complex(b.at("re").get<double>(), b.at("im").get<double>()),
                                       b.at("size").get<int>()});
    std::vector<Polynomial> polys;
    for (const auto& pj : Json::parse(polys_json)) {
      MapDescriptor m = map_from_json(pj);
      polys.push_back(std::get<Polynomial>(m.node()));
    }
    model = make_poly_of_jordan(d, polys, layout, seed, tol);
  } else if (kind == "explicit") {
    // byte-identical passthrough
    int idx = 1;
    for (const auto& in : inputs) {
      std::ifstream f(in, std::ios::binary);
      if (!f) throw Error(ErrorCode::io, "cannot open " + in);
      std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      write_file(out_dir + "/T" + std::to_string(idx++) + ".json", bytes);
    }
    std::cout << "copied " << inputs.size() << " file(s) to " << out_dir << "\n";
    return 0;
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown model kind: " + kind);
  }

  CommutingTuple validate(model.mats, tol);  // every generated tuple must commute
  for (std::size_t i = 0; i < model.mats.size(); ++i)
    write_json(out_dir + "/T" + std::to_string(i + 1) + ".json", matrix_to_json(model.mats[i]));
  if (model.oracle) write_json(out_dir + "/oracle.json", measure_to_json(*model.oracle));
  write_json(out_dir + "/model.json",
             Json{{"kind", model.kind},
                  {"seed", model.seed},
                  {"n", model.mats.size()},
                  {"d", model.mats[0].rows()},
                  {"commutator_bound", validate.commutator_bound()},
                  {"oracle", model.oracle.has_value()}});
  std::cout << "wrote " << model.mats.size() << " matrix file(s) to " << out_dir << "\n";
  return 0;
}

int cmd_brown(const std::vector<std::string>& inputs, const std::string& out,
              const std::string& csv, const Tolerances& tol) {
  CommutingTuple tuple(load_matrices(inputs), tol);
  JointDecomposition dec = joint_decompose(tuple, tol);
  AtomicMeasure mu = brown_measure(dec, tol);
  if (!out.empty()) write_json(out, measure_to_json(mu));
  if (!csv.empty()) write_file(csv, measure_to_csv(mu));
  std::cout << "atoms: " << mu.atoms().size() << ", mass: " << mu.total_mass() << "\n";
  return 0;
}

int cmd_subspace(const std::vector<std::string>& inputs, const std::string& region_path,
                 const std::string& out, const Tolerances& tol) {
  CommutingTuple tuple(load_matrices(inputs), tol);
  JointDecomposition dec = joint_decompose(tuple, tol);
  Region b = region_from_json(read_json(region_path));
  Subspace k = spectral_projection(dec, b, tol);
  TraceValue tv = spectral_trace(dec, b, tol);
  Json j{{"d", dec.dim()},
         {"dim", k.dim()},
         {"trace", tv.value()},
         {"trace_rank", tv.rank},
         {"frame", matrix_to_json(k.frame())}};
  if (!out.empty()) write_json(out, j);
  std::cout << "subspace dim " << k.dim() << " of " << dec.dim() << ", trace " << tv.value()
            << "\n";
  return 0;
}

// Checks that run against an explicit tuple loaded from files: the
// characterization identity, the box formula and sigma-additivity on random
// safe regions.
Report verify_explicit(const std::vector<ComplexMatrix>& mats, int trials, int inner,
                       std::uint64_t seed, const Tolerances& tol) {
  Report rep;
  rep.title = "explicit-model";
  CommutingTuple tuple(mats, tol);  // non-commuting input fails here (exit 2)
  JointDecomposition dec = joint_decompose(tuple, tol);
  AtomicMeasure mu = brown_measure(dec, tol);
  Rng rng(seed * 131 + 17);

  double worst_gap = 0;
  int used = 0;
  while (used < inner) {
    std::vector<Complex> alpha(tuple.n());
    for (auto& a : alpha) a = rng.cgauss();
    try {
      worst_gap = std::max(worst_gap, characterization_gap(tuple, dec, alpha, tol));
      ++used;
    } catch (const Error&) {
    }
  }
  rep.add("max characterization gap", worst_gap, 1e-8);

  double worst_box = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<Region> boxes;
    for (int i = 0; i < tuple.n(); ++i) boxes.push_back(random_safe_box(mu, i, 1e-6, rng));
    Report inner_rep = verify_box_formula(dec, boxes, tol);
    for (const auto& item : inner_rep.items) worst_box = std::max(worst_box, item.observed);
  }
  rep.add("max box-formula distance", worst_box, tol.subspace_dist);

  Report sig = verify_sigma_additivity(dec, random_dyadic_partition(mu, 6, 1e-6, rng), tol);
  rep.add_flag("sigma-additivity on a random partition", sig.pass());
  return rep;
}

int cmd_verify(std::vector<std::string> suites, const std::vector<std::string>& inputs,
               std::uint64_t seed_lo, std::uint64_t seed_hi, int trials, int inner, int d,
               int depth, const std::string& out, const TolFlags& flags) {
  if (suites.size() == 1 && suites[0] == "all") suites = suite_names();
  if (suites.size() == 1 && suites[0] == "none") suites.clear();
  const Tolerances tol = flags.apply();

  Json results = Json::array();
  bool ok = true;

  if (!inputs.empty()) {
    Report rep = verify_explicit(load_matrices(inputs), trials, inner, seed_lo, tol);
    ok = rep.pass();
    results.push_back(report_to_json(rep));
    std::cout << (ok ? "[pass] " : "[FAIL] ") << "explicit-model\n";
    Json doc{{"suites", results}, {"pass", ok}, {"tolerances", flags.echo(tol)}};
    if (!out.empty()) write_json(out, doc);
    return ok ? 0 : 1;
  }
  for (const auto& name : suites) {
    for (std::uint64_t seed = seed_lo; seed <= seed_hi; ++seed) {
      SuiteParams params;
      params.seed = seed;
      params.trials = trials;
      params.inner = inner;
      params.d = d;
      params.depth = depth;
      params.tol = tol;
      Report rep = run_suite(name, params);
      ok = ok && rep.pass();
      Json entry = report_to_json(rep);
      entry["seed"] = seed;
      results.push_back(std::move(entry));
      std::cout << (rep.pass() ? "[pass] " : "[FAIL] ") << name << " (seed " << seed << ")\n";
    }
  }
  Json doc{{"suites", results}, {"pass", ok}, {"tolerances", flags.echo(tol)}};
  if (!out.empty()) write_json(out, doc);
  return ok ? 0 : 1;
}

int cmd_grid_brown(const std::string& input, const std::string& out_prefix, double eps,
                   double xmin, double xmax, double ymin, double ymax, int nx, int ny, int threads,
                   const Tolerances& tol) {
  ComplexMatrix t = matrix_from_json(read_json(input));
  if (eps <= 0) eps = 1e-3 * std::max(operator_norm(t), 1.0);
  GridSpec spec;
  if (xmin < xmax && ymin < ymax) {
    spec = GridSpec{xmin, xmax, ymin, ymax, nx, ny};
  } else {
    spec = default_grid(t, eps, nx);
  }
  GridDensity g = grid_brown(t, spec, eps, threads, tol);
  write_file(out_prefix + ".csv", grid_to_csv(g));
  write_file(out_prefix + ".ppm", grid_to_ppm(g));
  std::cout << "total mass: " << g.total_mass() << " (cell leak " << g.negative_leak() << ", eps "
            << eps << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint eigenvalue measures, spectral idempotents and subspace lattices for "
               "commuting matrix tuples"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a model tuple (with oracle when available)");
  std::string kind = "conjugated_diagonal", out_dir = "model", blocks = "[]", polys = "[]";
  int d = 8, d2 = 4, n = 2, nx = 200, ny = 200, threads = 0;
  std::uint64_t seed = 1, seed_hi = 1;
  double cond = 30.0, min_sep = 0.0;
  std::vector<std::string> inputs;
  TolFlags tols;
  gen->add_option("--kind", kind,
                  "ginibre | conjugated_diagonal | normal | kronecker_pair | poly_of_jordan | "
                  "explicit");
  gen->add_option("--d", d, "matrix dimension");
  gen->add_option("--d2", d2, "second factor dimension (kronecker_pair)");
  gen->add_option("--n", n, "tuple length (conjugated_diagonal)");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--cond", cond, "similarity condition number target");
  gen->add_option("--min-sep", min_sep, "minimum eigenvalue separation per coordinate");
  gen->add_option("--blocks", blocks, "jordan layout json: [{re, im, size}, ...]");
  gen->add_option("--polys", polys, "polynomial maps json (poly_of_jordan)");
  gen->add_option("--in", inputs, "input files (explicit passthrough)");
  gen->add_option("--out", out_dir, "output directory");
  tols.attach(gen);

  auto* brown_cmd = app.add_subcommand("brown", "joint eigenvalue measure of a commuting tuple");
  auto* joint = app.add_subcommand("joint", "alias of brown");
  std::string out_file = "measure.json", csv_file;
  for (auto* cmd : {brown_cmd, joint}) {
    cmd->add_option("--in", inputs, "matrix json files (T1 T2 ...)")->required();
    cmd->add_option("--out", out_file, "measure json output");
    cmd->add_option("--csv", csv_file, "optional csv output");
    tols.attach(cmd);
  }

  auto* sub = app.add_subcommand("subspace", "spectral subspace K(B) and its trace");
  std::string region_file;
  sub->add_option("--in", inputs, "matrix json files")->required();
  sub->add_option("--region", region_file, "region json file")->required();
  sub->add_option("--out", out_file, "subspace json output");
  tols.attach(sub);

  auto* verify = app.add_subcommand("verify", "run property suites and write a report");
  std::vector<std::string> suites{"all"};
  int trials = 6, inner = 15, vd = 8, depth = 8;
  std::string report_file = "report.json";
  std::string suite_help = "suite names (or 'all'):";
  for (const auto& name : suite_names()) suite_help += " " + name;
  verify->add_option("--suite", suites, suite_help);
  std::vector<std::string> verify_inputs;
  verify->add_option("--in", verify_inputs, "explicit matrix json files (runs file-based checks)");
  verify->add_option("--seed-lo", seed, "first seed");
  verify->add_option("--seed-hi", seed_hi, "last seed");
  verify->add_option("--trials", trials, "configurations per suite");
  verify->add_option("--inner", inner, "inner draws per configuration");
  verify->add_option("--d", vd, "base dimension");
  verify->add_option("--depth", depth, "cover depth");
  verify->add_option("--out", report_file, "report json path");
  TolFlags verify_tols;
  verify_tols.attach(verify);

  auto* grid = app.add_subcommand("grid-brown", "grid density of the regularized log-potential");
  std::string grid_in, grid_out = "grid";
  double eps = 0.0, xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  grid->add_option("--in", grid_in, "matrix json file")->required();
  grid->add_option("--out", grid_out, "output prefix (.csv and .ppm)");
  grid->add_option("--eps", eps, "regularization (default 1e-3 * max(||T||, 1))");
  grid->add_option("--xmin", xmin, "grid bounds (all four or none)");
  grid->add_option("--xmax", xmax, "grid bounds");
  grid->add_option("--ymin", ymin, "grid bounds");
  grid->add_option("--ymax", ymax, "grid bounds");
  grid->add_option("--nx", nx, "cells per axis");
  grid->add_option("--ny", ny, "cells per axis");
  grid->add_option("--threads", threads, "worker threads (0 = hardware)");
  TolFlags grid_tols;
  grid_tols.attach(grid);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen(kind, d, d2, n, seed, cond, min_sep, inputs, blocks, polys, out_dir,
                     tols.apply());
    if (brown_cmd->parsed() || joint->parsed())
      return cmd_brown(inputs, out_file, csv_file, tols.apply());
    if (sub->parsed()) return cmd_subspace(inputs, region_file, out_file, tols.apply());
    if (verify->parsed())
      return cmd_verify(suites, verify_inputs, seed, std::max(seed, seed_hi), trials, inner, vd,
                        depth, report_file, verify_tols);
    if (grid->parsed())
      return cmd_grid_brown(grid_in, grid_out, eps, xmin, xmax, ymin, ymax, nx, ny, threads,
                            grid_tols.apply());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
