#include "nahm/inner_product.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "nahm/errors.hpp"

namespace nahm {

std::vector<cplx> default_zeta_samples(const SpectralData& sd, uint64_t seed, int count,
                                       double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> out;
  out.reserve(count);
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 10000) throw Error(ErrorCode::ZetaAtSingularity, "cannot place zeta samples");
    double th = angle(rng);
    cplx zeta = std::polar(radius, th);
    if (sd.n() > 1 && sd.double_point_distance(zeta) < 1e-3) continue;
    out.push_back(zeta);
  }
  return out;
}

PairingResult pairing(const PolyTuple& p, const PolyTuple& r, const SpectralData& sd,
                      std::span<const cplx> zetas, bool check_spread) {
  const int n = sd.n();
  if (p.sheets() != n || r.sheets() != n)
    throw Error(ErrorCode::InvalidConfig, "tuple size mismatch");
  std::vector<Poly> rtilde(n);
  for (int i = 0; i < n; ++i) rtilde[i] = rev_conj(r.entry[i], n - 1);

  std::vector<cplx> vals;
  vals.reserve(zetas.size());
  for (cplx zeta : zetas) {
    if (sd.n() > 1 && sd.double_point_distance(zeta) < 1e-9)
      throw Error(ErrorCode::ZetaAtSingularity, "zeta sample at a double point");
    cplx tot(0);
    for (int i = 0; i < n; ++i)
      tot += p.entry[i].eval(zeta) * rtilde[i].eval(zeta) / sd.sheet_denominator(i, zeta);
    vals.push_back(tot);
  }
  cplx mean(0);
  for (cplx v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  double spread = 0;
  for (cplx v : vals) spread = std::max(spread, std::abs(v - mean));
  double denom = std::max(std::abs(mean), 1e-300);
  PairingResult out{mean, spread / denom};
  if (check_spread && out.spread > sd.tol.spread_max)
    throw Error(ErrorCode::InconsistentSpread, "pairing depends on zeta; tuples do not match");
  return out;
}

GramReport gram(const BasisMatrix& basis, const SpectralData& sd) {
  const int n = basis.n();
  auto zetas = default_zeta_samples(sd);
  GramReport rep;
  rep.gram.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto pr = pairing(basis.rows[i], basis.rows[j], sd, zetas);
      rep.gram(i, j) = pr.value;
      rep.zeta_spread = std::max(rep.zeta_spread, pr.spread);
    }
  return rep;
}

BasisMatrix normalize(const BasisMatrix& basis, const SpectralData& sd) {
  auto zetas = default_zeta_samples(sd);
  BasisMatrix out = basis;
  for (int l = 0; l < basis.n(); ++l) {
    auto pr = pairing(basis.rows[l], basis.rows[l], sd, zetas);
    cplx norm2 = pr.value;
    if (!(norm2.real() > 0) || std::abs(norm2.imag()) > 1e-8 * std::abs(norm2))
      throw Error(ErrorCode::NonPositiveNorm, "row norm not positive real");
    double inv = 1.0 / std::sqrt(norm2.real());
    for (auto& q : out.rows[l].entry) q *= cplx(inv);
  }
  out.normalized = true;
  return out;
}

Eigen::MatrixXcd to_section_frame(const BasisMatrix& qhat, const SpectralData& sd, cplx zeta) {
  Eigen::MatrixXcd U = qhat.eval(zeta);
  for (int j = 0; j < qhat.n(); ++j) U.col(j) *= std::exp(-qhat.s * sd.h_plus(j, zeta));
  return U;
}

}  // namespace nahm
