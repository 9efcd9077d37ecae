#include "nahm/spectral.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "nahm/errors.hpp"

namespace nahm {

void MonopoleConfig::validate() const {
  if (points.empty()) throw Error(ErrorCode::InvalidConfig, "no points");
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if ((points[i] - points[j]).norm() == 0.0)
        throw Error(ErrorCode::InvalidConfig, "points " + std::to_string(i) + " and " +
                                                  std::to_string(j) + " coincide");
}

SheetPolynomial sheet_polynomial(const MonopoleConfig& cfg, int j) {
  if (j < 0 || j >= cfg.n()) throw Error(ErrorCode::InvalidConfig, "sheet index out of range");
  const auto& p = cfg.points[j];
  cplx z(p[0], p[1]);
  return SheetPolynomial{j, {z, cplx(-2.0 * p[2], 0.0), -std::conj(z)}};
}

std::vector<PairData> pair_data(const MonopoleConfig& cfg) {
  cfg.validate();
  std::vector<PairData> out;
  const int n = cfg.n();
  out.reserve(static_cast<size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& pi = cfg.points[i];
      const auto& pj = cfg.points[j];
      double r = (pi - pj).norm();
      cplx den(pj[0] - pi[0], -(pj[1] - pi[1]));
      if (std::abs(den) == 0.0)
        throw Error(ErrorCode::VerticalPair,
                    "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      PairData pd;
      pd.i = i;
      pd.j = j;
      pd.r = r;
      pd.a = cplx(pi[2] - pj[2] + r, 0.0) / den;
      pd.z = cplx(pi[0] - pj[0], pi[1] - pj[1]);
      out.push_back(pd);
    }
  }
  return out;
}

std::pair<cplx, cplx> h_split(const MonopoleConfig& cfg, int j, cplx zeta) {
  if (j < 0 || j >= cfg.n()) throw Error(ErrorCode::InvalidConfig, "sheet index out of range");
  if (std::abs(zeta) == 0.0) throw Error(ErrorCode::ZetaAtSingularity, "h^- undefined at zeta=0");
  const auto& p = cfg.points[j];
  cplx z(p[0], p[1]);
  cplx hp = p[2] + std::conj(z) * zeta;
  cplx hm = -z / zeta + p[2];
  return {hp, hm};
}

bool is_generic(const MonopoleConfig& cfg, const Tolerances& tol) {
  const int n = cfg.n();
  if (n <= 1) return true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& pi = cfg.points[i];
      const auto& pj = cfg.points[j];
      if (pi[0] == pj[0] && pi[1] == pj[1]) return false;
    }
  std::vector<PairData> pd = pair_data(cfg);
  double amax = 0;
  for (const auto& p : pd) {
    double m = std::abs(p.a);
    if (m < tol.gen_abs_min || m > tol.gen_abs_max) return false;
    amax = std::max(amax, m);
  }
  for (size_t i = 0; i < pd.size(); ++i)
    for (size_t j = i + 1; j < pd.size(); ++j)
      if (std::abs(pd[i].a - pd[j].a) < tol.gen_sep * amax) return false;
  return true;
}

namespace {

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector4d q;
  do {
    for (int k = 0; k < 4; ++k) q[k] = gauss(rng);
  } while (q.norm() < 1e-8);
  q.normalize();
  Eigen::Quaterniond quat(q[0], q[1], q[2], q[3]);
  return quat.toRotationMatrix();
}

}  // namespace

GenericizeResult genericize(const MonopoleConfig& cfg, uint64_t seed, const Tolerances& tol) {
  cfg.validate();
  if (is_generic(cfg, tol))
    return GenericizeResult{Eigen::Matrix3d::Identity(), cfg, false};
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < tol.max_rotation_attempts; ++attempt) {
    Eigen::Matrix3d rot = random_rotation(rng);
    MonopoleConfig rotated;
    rotated.points.reserve(cfg.points.size());
    for (const auto& p : cfg.points) rotated.points.push_back(rot * p);
    if (is_generic(rotated, tol)) return GenericizeResult{rot, rotated, true};
  }
  throw Error(ErrorCode::GenericityFailure, "no generic rotation found");
}

SpectralData SpectralData::build(const MonopoleConfig& cfg, const Tolerances& tol) {
  cfg.validate();
  SpectralData sd;
  sd.cfg = cfg;
  sd.tol = tol;
  const int n = cfg.n();
  sd.sheets.reserve(n);
  for (int j = 0; j < n; ++j) sd.sheets.push_back(sheet_polynomial(cfg, j));
  if (n > 1) {
    sd.pairs = pair_data(cfg);
    double amax = 0;
    for (const auto& p : sd.pairs) amax = std::max(amax, std::abs(p.a));
    for (const auto& p : sd.pairs) {
      double m = std::abs(p.a);
      if (m < tol.gen_abs_min || m > tol.gen_abs_max)
        throw Error(ErrorCode::DegenerateConfig, "double point magnitude out of range");
    }
    for (size_t i = 0; i < sd.pairs.size(); ++i)
      for (size_t j = i + 1; j < sd.pairs.size(); ++j)
        if (std::abs(sd.pairs[i].a - sd.pairs[j].a) < tol.gen_sep * amax)
          throw Error(ErrorCode::DegenerateConfig, "double points too close");
  }
  sd.pair_index_.assign(static_cast<size_t>(n) * n, -1);
  for (size_t k = 0; k < sd.pairs.size(); ++k)
    sd.pair_index_[static_cast<size_t>(sd.pairs[k].i) * n + sd.pairs[k].j] = static_cast<int>(k);
  return sd;
}

const PairData& SpectralData::pair(int i, int j) const {
  int idx = pair_index_[static_cast<size_t>(i) * n() + j];
  if (idx < 0) throw Error(ErrorCode::InvalidConfig, "no such pair");
  return pairs[idx];
}

double SpectralData::max_r() const {
  double m = 0;
  for (const auto& p : pairs) m = std::max(m, p.r);
  return m;
}

double SpectralData::min_r() const {
  double m = pairs.empty() ? 0.0 : pairs.front().r;
  for (const auto& p : pairs) m = std::min(m, p.r);
  return m;
}

cplx SpectralData::sheet_denominator(int s, cplx zeta) const {
  cplx den(1.0);
  cplx ps = p(s, zeta);
  for (int l = 0; l < n(); ++l) {
    if (l == s) continue;
    den *= ps - p(l, zeta);
  }
  return den;
}

double SpectralData::double_point_distance(cplx zeta) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : pairs) d = std::min(d, std::abs(zeta - p.a));
  return d;
}

}  // namespace nahm
