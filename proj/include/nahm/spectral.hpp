#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "nahm/poly.hpp"

namespace nahm {

struct Tolerances {
  double pair_check = 1e-12;        // PairData invariant residuals (relative)
  double gen_abs_min = 1e-6;        // |a_ij| lower bound
  double gen_abs_max = 1e6;         // |a_ij| upper bound
  double gen_sep = 1e-6;            // pairwise |a_ij - a_kl| / max|a|
  double singular_block = 1e-12;    // smallest singular value threshold (relative)
  double spread_max = 1e-6;         // pairing zeta-spread ceiling
  double scale_overflow = 350.0;    // cap on s*max(r)/2 in exponents
  double zeta_double_point = 1e-8;  // Lax evaluation guard
  int max_rotation_attempts = 1000;
};

struct MonopoleConfig {
  std::vector<Eigen::Vector3d> points;

  int n() const { return static_cast<int>(points.size()); }
  /// Throws InvalidConfig unless points are pairwise distinct.
  void validate() const;
};

struct SheetPolynomial {
  int sheet = 0;  // 0-based
  std::array<cplx, 3> coeff{};  // p(zeta) = c0 + c1 zeta + c2 zeta^2

  cplx eval(cplx zeta) const { return coeff[0] + zeta * (coeff[1] + zeta * coeff[2]); }
};

struct PairData {
  int i = 0, j = 0;  // ordered, 0-based
  cplx a;            // double point a_ij
  double r = 0;      // separation
  cplx z;            // z_i - z_j
};

SheetPolynomial sheet_polynomial(const MonopoleConfig& cfg, int j);

/// All ordered pairs (i,j), i != j, lexicographic. Throws VerticalPair.
std::vector<PairData> pair_data(const MonopoleConfig& cfg);

/// (h_j^+(zeta), h_j^-(zeta)); throws on zeta == 0.
std::pair<cplx, cplx> h_split(const MonopoleConfig& cfg, int j, cplx zeta);

struct GenericizeResult {
  Eigen::Matrix3d rotation;
  MonopoleConfig config;
  bool rotated = false;
};

/// Rotates the configuration (seeded rejection sampling) until every double
/// point is finite, nonzero and separated from the others. Identity rotation
/// when the input already qualifies.
GenericizeResult genericize(const MonopoleConfig& cfg, uint64_t seed,
                            const Tolerances& tol = Tolerances{});

/// Everything s-independent about the spectral curve of a generic config.
struct SpectralData {
  MonopoleConfig cfg;
  Tolerances tol;
  std::vector<SheetPolynomial> sheets;
  std::vector<PairData> pairs;  // ordered, lexicographic

  static SpectralData build(const MonopoleConfig& cfg, const Tolerances& tol = Tolerances{});

  int n() const { return cfg.n(); }
  const PairData& pair(int i, int j) const;
  cplx a(int i, int j) const { return pair(i, j).a; }
  double r(int i, int j) const { return pair(i, j).r; }
  double max_r() const;
  double min_r() const;
  cplx z(int j) const { return cplx(cfg.points[j][0], cfg.points[j][1]); }
  double x3(int j) const { return cfg.points[j][2]; }
  cplx p(int j, cplx zeta) const { return sheets[j].eval(zeta); }
  cplx h_plus(int j, cplx zeta) const { return x3(j) + std::conj(z(j)) * zeta; }
  /// prod_{l != s} (p_s(zeta) - p_l(zeta))
  cplx sheet_denominator(int s, cplx zeta) const;
  /// Smallest distance from zeta to any double point.
  double double_point_distance(cplx zeta) const;

 private:
  std::vector<int> pair_index_;  // i*n+j -> index into pairs
};

bool is_generic(const MonopoleConfig& cfg, const Tolerances& tol);

}  // namespace nahm
