#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nahm/dirac.hpp"
#include "nahm/errors.hpp"
#include "nahm/oracles.hpp"
#include "nahm/perturbation.hpp"
#include "nahm/run_config.hpp"

namespace {

using namespace nahm;

int log_level() {
  static int lvl = [] {
    const char* e = std::getenv("NAHM_LOG");
    if (!e) return 1;
    std::string v(e);
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
  }();
  return lvl;
}

void info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[nahm] " << msg << "\n";
}

struct CliOverrides {
  std::string config_path;
  double s = -1;
  std::string s_grid;  // a:b:k
  int order = -1;
  std::string x;
  std::string out;
  std::string format;
  long long seed = -1;
  int row = 1;
  std::string solver;
};

RunConfig load_config(const CliOverrides& ov) {
  if (ov.config_path.empty()) throw Error(ErrorCode::InvalidConfig, "--config is required");
  RunConfig rc = RunConfig::load(ov.config_path);
  if (ov.s > 0) rc.s_grid = SGrid{ov.s, ov.s, 1, "linear"};
  if (!ov.s_grid.empty()) {
    double a, b;
    int k;
    char c1, c2;
    std::istringstream in(ov.s_grid);
    if (!(in >> a >> c1 >> b >> c2 >> k) || c1 != ':' || c2 != ':')
      throw Error(ErrorCode::InvalidConfig, "--s-grid expects a:b:k");
    rc.s_grid = SGrid{a, b, k, "linear"};
  }
  if (!ov.out.empty()) rc.out_path = ov.out;
  if (!ov.format.empty()) rc.format = ov.format;
  if (ov.seed >= 0) rc.seed = static_cast<uint64_t>(ov.seed);
  if (!ov.solver.empty()) rc.solver = ov.solver;
  rc.validate();
  return rc;
}

Eigen::Vector3d parse_x(const std::string& sx) {
  Eigen::Vector3d x;
  char c1, c2;
  std::istringstream in(sx);
  if (!(in >> x[0] >> c1 >> x[1] >> c2 >> x[2]) || c1 != ',' || c2 != ',')
    throw Error(ErrorCode::InvalidConfig, "--x expects x1,x2,x3");
  return x;
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(rc.out_path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open output " + rc.out_path);
  out << text << "\n";
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + rc.out_path);
}

SpectralData prepared(const RunConfig& rc) {
  GenericizeResult gen = genericize(rc.monopole_config(), rc.seed, rc.tol);
  if (gen.rotated) info("configuration rotated for genericity");
  return SpectralData::build(gen.config, rc.tol);
}

int cmd_solve(const CliOverrides& ov) {
  RunConfig rc = load_config(ov);
  SpectralData sd = prepared(rc);
  std::vector<double> grid = rc.s_grid.values();
  std::vector<std::string> solvers;
  if (rc.solver == "both") {
    solvers = {"direct", "lagrange"};
  } else {
    solvers = {rc.solver};
  }

  auto run_one = [&](double s, const std::string& solver) {
    ResultRecord rec;
    rec.s = s;
    rec.solver = solver;
    SolverKind kind = solver == "lagrange" ? SolverKind::Lagrange : SolverKind::Direct;
    rec.nahm = nahm_matrices(sd, s, kind);
    rec.report = residuals(sd, s, rc.fd_step);
    return rec;
  };

  auto t0 = std::chrono::steady_clock::now();
  std::vector<ResultRecord> records;
  for (const auto& solver : solvers) {
    if (rc.parallel && grid.size() > 1) {
      std::vector<std::future<ResultRecord>> futs;
      for (double s : grid)
        futs.push_back(std::async(std::launch::async, run_one, s, solver));
      for (auto& f : futs) records.push_back(f.get());
    } else {
      for (double s : grid) records.push_back(run_one(s, solver));
    }
  }
  std::sort(records.begin(), records.end(), [](const ResultRecord& a, const ResultRecord& b) {
    return a.s != b.s ? a.s < b.s : a.solver < b.solver;
  });
  auto t1 = std::chrono::steady_clock::now();
  info("solved " + std::to_string(records.size()) + " records in " +
       std::to_string(std::chrono::duration<double, std::milli>(t1 - t0).count()) + " ms");

  if (rc.format == "csv") {
    emit(rc, records_to_csv(records));
  } else {
    json out;
    out["points"] = json::array();
    for (const auto& p : sd.cfg.points) out["points"].push_back({p[0], p[1], p[2]});
    out["seed"] = rc.seed;
    out["records"] = json::array();
    for (const auto& r : records) out["records"].push_back(to_json(r));
    emit(rc, out.dump(2));
  }
  return 0;
}

int cmd_verify(const CliOverrides& ov) {
  RunConfig rc = load_config(ov);
  SpectralData sd = prepared(rc);
  double s = rc.s_grid.values().front();
  VerificationReport rep = residuals(sd, s, rc.fd_step);
  BoundaryReport brep = boundary_report(sd, 1e-3, 8.0);
  json out{{"s", s}, {"report", to_json(rep)}, {"boundary", to_json(brep)}};
  emit(rc, out.dump(2));
  return 0;
}

json tuple_to_json(const PolyTuple& row) {
  json sheets = json::array();
  for (const auto& q : row.entry) {
    json coeffs = json::array();
    for (const auto& c : q.c) coeffs.push_back(to_json(c));
    sheets.push_back(coeffs);
  }
  return sheets;
}

int cmd_basis(const CliOverrides& ov) {
  RunConfig rc = load_config(ov);
  SpectralData sd = prepared(rc);
  double s = rc.s_grid.values().front();
  json out{{"s", s}};
  auto dump_solver = [&](SolverKind kind) {
    BasisMatrix b = solve_basis(sd, s, kind);
    json rows = json::array();
    for (const auto& row : b.rows) rows.push_back(tuple_to_json(row));
    return rows;
  };
  if (rc.solver == "both") {
    out["direct"] = dump_solver(SolverKind::Direct);
    out["lagrange"] = dump_solver(SolverKind::Lagrange);
  } else {
    out[rc.solver] = dump_solver(rc.solver == "lagrange" ? SolverKind::Lagrange
                                                         : SolverKind::Direct);
  }
  emit(rc, out.dump(2));
  return 0;
}

int cmd_perturb(const CliOverrides& ov) {
  RunConfig rc = load_config(ov);
  SpectralData sd = prepared(rc);
  int order = ov.order >= 0 ? ov.order : 1;
  const int n = sd.n();
  json out{{"order", order}};
  json rows = json::array();
  for (int l = 0; l < n; ++l) {
    PerturbSeries ser = expand_basis(sd, l, order);
    json terms = json::array();
    for (const auto& t : ser.terms) {
      json key = json::object();
      int slot = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (t.key.mult[slot] > 0)
            key[std::to_string(i + 1) + "-" + std::to_string(j + 1)] = t.key.mult[slot];
          ++slot;
        }
      json sheets = json::array();
      for (const auto& q : t.sheet) {
        json coeffs = json::array();
        for (const auto& c : q.c) coeffs.push_back(to_json(c));
        sheets.push_back(coeffs);
      }
      terms.push_back(json{{"key", key}, {"delta", t.key.delta(sd)}, {"sheets", sheets}});
    }
    rows.push_back(json{{"row", l + 1}, {"terms", terms}});
  }
  out["rows"] = rows;
  emit(rc, out.dump(2));
  return 0;
}

int cmd_zeromode(const CliOverrides& ov) {
  RunConfig rc = load_config(ov);
  if (ov.x.empty()) throw Error(ErrorCode::InvalidConfig, "--x is required");
  Eigen::Vector3d x = parse_x(ov.x);
  SpectralData sd = prepared(rc);
  double s = rc.s_grid.values().front();
  int row = ov.row - 1;
  if (row < 0 || row >= sd.n()) throw Error(ErrorCode::InvalidConfig, "--row out of range");
  BasisMatrix basis = solve_basis(sd, s, SolverKind::Direct);
  Eigen::Vector2cd psi = monopole_zero_mode(sd.cfg, s, x, basis.rows[row]);
  double res = zero_mode_residual(sd.cfg, s, x, basis.rows[row]);
  json out{{"x", {x[0], x[1], x[2]}},
           {"s", s},
           {"row", ov.row},
           {"spinor", {to_json(psi[0]), to_json(psi[1])}},
           {"residual", res}};
  emit(rc, out.dump(2));
  return 0;
}

int cmd_oracle(const CliOverrides& ov) {
  RunConfig rc = load_config(ov);
  SpectralData sd = prepared(rc);
  const int n = sd.n();
  double worst = 0;
  json detail = json::object();
  if (n == 1) {
    NahmData ref = exact_n1(sd.cfg.points[0]);
    for (double s : rc.s_grid.values()) {
      NahmData got = nahm_matrices(sd, s);
      for (int mu = 0; mu < 4; ++mu)
        worst = std::max(worst, (got.T(mu) - ref.T(mu)).norm());
    }
    detail["reference"] = "n1";
  } else if (n == 2) {
    double scale = 0;
    for (double s : rc.s_grid.values()) {
      NahmData got = nahm_matrices(sd, s);
      NahmData ref = exact_n2(sd.cfg, s);
      for (int mu = 0; mu < 4; ++mu) {
        worst = std::max(worst, (got.T(mu) - ref.T(mu)).norm());
        scale = std::max(scale, ref.T(mu).norm());
      }
    }
    if (scale > 0) worst /= scale;
    detail["reference"] = "n2";
    AlignResult ar = gauge_align(exact_n2_axis_limit(2.0, 1.0), axis_n2(2.0, 1.0));
    detail["axis_alignment_distance"] = ar.distance;
  } else {
    throw Error(ErrorCode::InvalidConfig, "oracle comparison exists for n <= 2 only");
  }
  json out{{"max_deviation", worst}, {"detail", detail}};
  emit(rc, out.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nahm flow solver for point-monopole boundary data"};
  app.require_subcommand(1);

  CliOverrides ov;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ov.config_path, "JSON run configuration")->required();
    sub->add_option("--s", ov.s, "single flow parameter value");
    sub->add_option("--s-grid", ov.s_grid, "grid a:b:k (linear)");
    sub->add_option("--out", ov.out, "output path (default stdout)");
    sub->add_option("--format", ov.format, "json|csv");
    sub->add_option("--seed", ov.seed, "rotation seed");
    sub->add_option("--solver", ov.solver, "direct|lagrange|both");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve over the s grid and persist records");
  add_common(solve);
  CLI::App* verify = app.add_subcommand("verify", "full verification and boundary report");
  add_common(verify);
  CLI::App* basis = app.add_subcommand("basis", "dump basis polynomial coefficients");
  add_common(basis);
  CLI::App* perturb = app.add_subcommand("perturb", "dump the large-s series");
  add_common(perturb);
  perturb->add_option("--order", ov.order, "series order");
  CLI::App* zeromode = app.add_subcommand("zeromode", "monopole-side zero mode at a point");
  add_common(zeromode);
  zeromode->add_option("--x", ov.x, "evaluation point x1,x2,x3");
  zeromode->add_option("--row", ov.row, "basis row (1-based)");
  CLI::App* oracle = app.add_subcommand("oracle", "compare pipeline against closed forms");
  add_common(oracle);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(ov);
    if (verify->parsed()) return cmd_verify(ov);
    if (basis->parsed()) return cmd_basis(ov);
    if (perturb->parsed()) return cmd_perturb(ov);
    if (zeromode->parsed()) return cmd_zeromode(ov);
    if (oracle->parsed()) return cmd_oracle(ov);
  } catch (const nahm::Error& e) {
    nahm::json err{{"error", nahm::error_name(e.code())}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    if (e.code() == nahm::ErrorCode::IoError) return 3;
    return e.is_validation() ? 1 : 2;
  } catch (const std::exception& e) {
    nahm::json err{{"error", "Unexpected"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
