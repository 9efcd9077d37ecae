#include "nahm/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nahm/errors.hpp"

namespace nahm {

std::vector<double> SGrid::values() const {
  std::vector<double> out;
  if (count < 1) throw Error(ErrorCode::InvalidConfig, "s_grid count must be >= 1");
  if (!(start > 0)) throw Error(ErrorCode::InvalidConfig, "s_grid start must be > 0");
  if (count == 1) return {start};
  if (spacing == "log") {
    double la = std::log(start), lb = std::log(stop);
    for (int k = 0; k < count; ++k) out.push_back(std::exp(la + (lb - la) * k / (count - 1)));
  } else if (spacing == "linear") {
    for (int k = 0; k < count; ++k) out.push_back(start + (stop - start) * k / (count - 1));
  } else {
    throw Error(ErrorCode::InvalidConfig, "spacing must be linear or log");
  }
  return out;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig rc;
  if (!j.contains("points") || !j["points"].is_array())
    throw Error(ErrorCode::InvalidConfig, "missing points array");
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 3)
      throw Error(ErrorCode::InvalidConfig, "each point needs 3 coordinates");
    rc.points.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
  }
  if (j.contains("s_grid")) {
    const auto& g = j["s_grid"];
    rc.s_grid.start = g.value("start", 1.0);
    rc.s_grid.stop = g.value("stop", rc.s_grid.start);
    rc.s_grid.count = g.value("count", 1);
    rc.s_grid.spacing = g.value("spacing", std::string("linear"));
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    rc.tol.pair_check = t.value("pair_check", rc.tol.pair_check);
    rc.tol.gen_abs_min = t.value("gen_abs_min", rc.tol.gen_abs_min);
    rc.tol.gen_abs_max = t.value("gen_abs_max", rc.tol.gen_abs_max);
    rc.tol.gen_sep = t.value("gen_sep", rc.tol.gen_sep);
    rc.tol.singular_block = t.value("singular_block", rc.tol.singular_block);
    rc.tol.spread_max = t.value("spread_max", rc.tol.spread_max);
    rc.tol.scale_overflow = t.value("scale_overflow", rc.tol.scale_overflow);
    rc.tol.zeta_double_point = t.value("zeta_double_point", rc.tol.zeta_double_point);
    rc.tol.max_rotation_attempts = t.value("max_rotation_attempts", rc.tol.max_rotation_attempts);
  }
  rc.seed = j.value("seed", 0ULL);
  rc.solver = j.value("solver", std::string("direct"));
  rc.parallel = j.value("parallel", false);
  rc.fd_step = j.value("fd_step", 1e-5);
  if (j.contains("output")) {
    rc.out_path = j["output"].value("path", std::string());
    rc.format = j["output"].value("format", std::string("json"));
  }
  rc.validate();
  return rc;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config parse: ") + e.what());
  }
  return from_json(j);
}

MonopoleConfig RunConfig::monopole_config() const {
  MonopoleConfig cfg;
  cfg.points = points;
  return cfg;
}

void RunConfig::validate() const {
  monopole_config().validate();
  if (solver != "direct" && solver != "lagrange" && solver != "both")
    throw Error(ErrorCode::InvalidConfig, "solver must be direct|lagrange|both");
  if (format != "json" && format != "csv")
    throw Error(ErrorCode::InvalidConfig, "format must be json|csv");
  s_grid.values();  // validates
  if (!(fd_step > 0)) throw Error(ErrorCode::InvalidConfig, "fd_step must be positive");
}

json to_json(const cplx& v) { return json::array({v.real(), v.imag()}); }

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const VerificationReport& r) {
  return json{{"nahm_residuals", {r.nahm_residuals[0], r.nahm_residuals[1], r.nahm_residuals[2]}},
              {"lax_residual", r.lax_residual},
              {"reality_residual", r.reality_residual},
              {"reality_residual_M", r.reality_residual_M},
              {"degree_residual_L", r.degree_residual_L},
              {"degree_residual_M", r.degree_residual_M},
              {"spectrum_residual", r.spectrum_residual},
              {"gram_residual", r.gram_residual}};
}

json to_json(const NahmData& d) {
  return json{{"s", d.s},
              {"T0", to_json(d.T0)},
              {"T1", to_json(d.T1)},
              {"T2", to_json(d.T2)},
              {"T3", to_json(d.T3)}};
}

json to_json(const ResultRecord& r) {
  return json{{"s", r.s}, {"solver", r.solver}, {"nahm", to_json(r.nahm)},
              {"report", to_json(r.report)}};
}

json to_json(const BoundaryReport& r) {
  return json{{"t3_eigenvalues", r.t3_eigs},     {"t3_target", r.t3_target},
              {"t3_eig_dev", r.t3_eig_dev},      {"casimir_dev", r.casimir_dev},
              {"large_dev1", r.large_dev1},      {"large_dev2", r.large_dev2},
              {"fitted_decay", r.fitted_decay},  {"min_r", r.min_r}};
}

cplx cplx_from_json(const json& j) {
  return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  const Eigen::Index rows = j.size();
  const Eigen::Index cols = rows ? j.at(0).size() : 0;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = cplx_from_json(j.at(i).at(k));
  return m;
}

ResultRecord record_from_json(const json& j) {
  ResultRecord r;
  r.s = j.at("s").get<double>();
  r.solver = j.at("solver").get<std::string>();
  r.nahm.s = j.at("nahm").at("s").get<double>();
  r.nahm.T0 = matrix_from_json(j.at("nahm").at("T0"));
  r.nahm.T1 = matrix_from_json(j.at("nahm").at("T1"));
  r.nahm.T2 = matrix_from_json(j.at("nahm").at("T2"));
  r.nahm.T3 = matrix_from_json(j.at("nahm").at("T3"));
  const auto& rep = j.at("report");
  for (int k = 0; k < 3; ++k) r.report.nahm_residuals[k] = rep.at("nahm_residuals").at(k);
  r.report.lax_residual = rep.at("lax_residual");
  r.report.reality_residual = rep.at("reality_residual");
  r.report.reality_residual_M = rep.at("reality_residual_M");
  r.report.degree_residual_L = rep.at("degree_residual_L");
  r.report.degree_residual_M = rep.at("degree_residual_M");
  r.report.spectrum_residual = rep.at("spectrum_residual");
  r.report.gram_residual = rep.at("gram_residual");
  return r;
}

std::string records_to_csv(const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  out.precision(17);
  out << "s,matrix,row,col,re,im\n";
  for (const auto& rec : records) {
    const char* names[4] = {"T0", "T1", "T2", "T3"};
    for (int mu = 0; mu < 4; ++mu) {
      const auto& m = rec.nahm.T(mu);
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
          out << rec.s << ',' << names[mu] << ',' << i << ',' << j << ',' << m(i, j).real() << ','
              << m(i, j).imag() << '\n';
    }
  }
  return out.str();
}

}  // namespace nahm
