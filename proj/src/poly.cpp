#include "nahm/poly.hpp"

#include <cmath>

#include "nahm/errors.hpp"
#include "nahm/spectral.hpp"

namespace nahm {

Poly lagrange_interpolate(std::span<const cplx> nodes, std::span<const cplx> values) {
  const int m = static_cast<int>(nodes.size());
  if (m == 0) return Poly{};
  double scale = 0;
  for (auto& x : nodes) scale = std::max(scale, std::abs(x));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(nodes[i] - nodes[j]) <= 1e-14 * std::max(1.0, scale))
        throw Error(ErrorCode::DuplicateNodes, "interpolation nodes coincide");

  // divided differences
  std::vector<cplx> dd(values.begin(), values.end());
  for (int k = 1; k < m; ++k)
    for (int i = m - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - k]);

  // Newton to monomial
  Poly out;
  out.c.assign(m, cplx(0));
  for (int k = m - 1; k >= 0; --k) {
    // out = out * (zeta - nodes[k]) + dd[k]
    for (int i = m - 1; i > 0; --i) out.c[i] = out.c[i - 1] - nodes[k] * out.c[i];
    out.c[0] = -nodes[k] * out.c[0] + dd[k];
  }
  return out;
}

Poly rev_conj(const Poly& q, int degree_bound) {
  Poly out;
  out.c.assign(degree_bound + 1, cplx(0));
  for (int m = 0; m <= degree_bound; ++m) {
    cplx c = q.coeff(degree_bound - m);
    out.c[m] = (m % 2 == 0 ? std::conj(c) : -std::conj(c));
  }
  return out;
}

Poly annihilator(const SpectralData& sd, int k) {
  Poly out = Poly::constant(cplx(1));
  for (int j = 0; j < sd.n(); ++j) {
    if (j == k) continue;
    out = out.mul_linear(sd.a(k, j));
  }
  return out;
}

}  // namespace nahm
