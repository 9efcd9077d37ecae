#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nahm {

using cplx = std::complex<double>;

/// Dense complex polynomial, coefficient k multiplies zeta^k.
struct Poly {
  std::vector<cplx> c;

  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {}
  static Poly zero(int degree_bound) { return Poly(std::vector<cplx>(degree_bound + 1, cplx(0))); }
  static Poly constant(cplx v) { return Poly({v}); }

  cplx eval(cplx zeta) const {
    cplx acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * zeta + *it;
    return acc;
  }

  int degree() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
      if (std::abs(c[k]) > 1e-300) return k;
    return -1;  // zero polynomial
  }

  cplx coeff(int k) const { return k < static_cast<int>(c.size()) ? c[k] : cplx(0); }

  void resize_to(int degree_bound) { c.resize(degree_bound + 1, cplx(0)); }

  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), cplx(0));
    for (size_t k = 0; k < o.c.size(); ++k) c[k] += o.c[k];
    return *this;
  }
  Poly& operator*=(cplx v) {
    for (auto& x : c) x *= v;
    return *this;
  }
  friend Poly operator*(cplx v, Poly p) {
    p *= v;
    return p;
  }

  /// Multiply by (zeta - a).
  Poly mul_linear(cplx a) const {
    Poly out;
    out.c.assign(c.size() + 1, cplx(0));
    for (size_t k = 0; k < c.size(); ++k) {
      out.c[k + 1] += c[k];
      out.c[k] -= a * c[k];
    }
    return out;
  }
};

/// Interpolating polynomial of degree < nodes.size() through (nodes, values).
/// Newton divided differences, expanded to monomial coefficients.
Poly lagrange_interpolate(std::span<const cplx> nodes, std::span<const cplx> values);

/// (-zeta)^(degree_bound) * conj(q(-1/conj(zeta))), itself a polynomial of the
/// same degree bound. Used wherever antipodal-conjugate values pair with a
/// (-zeta)^(n-1) twist.
Poly rev_conj(const Poly& q, int degree_bound);

struct SpectralData;

/// A_k(zeta) = prod_{j != k} (zeta - a_kj), monic of degree n-1.
Poly annihilator(const SpectralData& sd, int k);

}  // namespace nahm
