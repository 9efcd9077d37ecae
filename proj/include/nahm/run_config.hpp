#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nahm/nahm_assembly.hpp"

namespace nahm {

using json = nlohmann::json;

struct SGrid {
  double start = 1.0;
  double stop = 1.0;
  int count = 1;
  std::string spacing = "linear";  // or "log"

  std::vector<double> values() const;
};

struct RunConfig {
  std::vector<Eigen::Vector3d> points;
  SGrid s_grid;
  Tolerances tol;
  uint64_t seed = 0;
  std::string solver = "direct";  // direct | lagrange | both
  std::string out_path;           // empty = stdout
  std::string format = "json";    // json | csv
  bool parallel = false;
  double fd_step = 1e-5;

  static RunConfig from_json(const json& j);
  static RunConfig load(const std::string& path);
  MonopoleConfig monopole_config() const;
  void validate() const;
};

struct ResultRecord {
  double s = 0;
  std::string solver;
  NahmData nahm;
  VerificationReport report;
};

json to_json(const cplx& v);
json to_json(const Eigen::MatrixXcd& m);
json to_json(const VerificationReport& r);
json to_json(const NahmData& d);
json to_json(const ResultRecord& r);
json to_json(const BoundaryReport& r);

cplx cplx_from_json(const json& j);
Eigen::MatrixXcd matrix_from_json(const json& j);
ResultRecord record_from_json(const json& j);

std::string records_to_csv(const std::vector<ResultRecord>& records);

}  // namespace nahm
