#include <Eigen/Dense>
#include <cmath>

#include "nahm/basis.hpp"
#include "nahm/errors.hpp"

namespace nahm {

namespace {

// prod_{m != k,j} (zeta - a_km)/(a_kj - a_km)
cplx lag_factor(const SpectralData& sd, int k, int j, cplx zeta) {
  cplx v(1.0);
  for (int m = 0; m < sd.n(); ++m) {
    if (m == k || m == j) continue;
    v *= (zeta - sd.a(k, m)) / (sd.a(k, j) - sd.a(k, m));
  }
  return v;
}

Poly lag_poly(const SpectralData& sd, int k, int j) {
  Poly out = Poly::constant(cplx(1));
  cplx den(1.0);
  for (int m = 0; m < sd.n(); ++m) {
    if (m == k || m == j) continue;
    out = out.mul_linear(sd.a(k, m));
    den *= sd.a(k, j) - sd.a(k, m);
  }
  out *= cplx(1.0) / den;
  return out;
}

struct Functionals {
  // value of Q_u(a_vu) for every ordered pair (v,u) as an affine functional
  // over [X_(v<u) ; C_0..C_{n-1}]
  std::vector<Eigen::VectorXcd> f;  // index v*n+u
  std::vector<std::pair<int, int>> xpairs;
  int nx = 0;
  int dim() const { return nx + 0; }
};

int xindex(const std::vector<std::pair<int, int>>& xp, int v, int u) {
  for (size_t k = 0; k < xp.size(); ++k)
    if (xp[k].first == v && xp[k].second == u) return static_cast<int>(k);
  return -1;
}

// Sheet-by-sheet elimination: expresses every v>u value through the v<u
// unknowns and the C's, mirroring the interpolation recursion.
Functionals build_functionals(const SpectralData& sd, double s) {
  const int n = sd.n();
  Functionals F;
  for (int v = 0; v < n; ++v)
    for (int u = v + 1; u < n; ++u) F.xpairs.emplace_back(v, u);
  F.nx = static_cast<int>(F.xpairs.size());
  const int D = F.nx + n;
  F.f.assign(static_cast<size_t>(n) * n, Eigen::VectorXcd::Zero(D));
  for (int k = 0; k < F.nx; ++k) {
    auto [v, u] = F.xpairs[k];
    F.f[static_cast<size_t>(v) * n + u] = Eigen::VectorXcd::Unit(D, k);
  }
  for (int k = 0; k < n; ++k) {
    Poly Ak = annihilator(sd, k);
    for (int v = k + 1; v < n; ++v) {
      cplx zeta = sd.a(v, k);
      Eigen::VectorXcd g = Ak.eval(zeta) * Eigen::VectorXcd::Unit(D, F.nx + k);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        double w = std::exp(-s * sd.r(k, j));
        g += w * lag_factor(sd, k, j, zeta) * F.f[static_cast<size_t>(k) * n + j];
      }
      F.f[static_cast<size_t>(v) * n + k] = g;
    }
  }
  return F;
}

}  // namespace

ReducedSystem assemble_reduced_system(const SpectralData& sd, double s, int l) {
  const int n = sd.n();
  if (l < 0 || l >= n) throw Error(ErrorCode::InvalidConfig, "row index out of range");
  if (s * sd.max_r() / 2.0 > sd.tol.scale_overflow)
    throw Error(ErrorCode::ScaleOverflow, "s*max(r)/2 exceeds exponent budget");

  Functionals F = build_functionals(sd, s);
  const int D = F.nx + n;
  const int neq = F.nx + (n - 1 - l);

  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(neq, D);
  int row = 0;
  // matching equations: Q_u(a_vu) of the interpolation formula minus X_(v,u)
  for (int k = 0; k < F.nx; ++k) {
    auto [v, u] = F.xpairs[k];
    cplx zeta = sd.a(v, u);
    Eigen::VectorXcd g = annihilator(sd, u).eval(zeta) * Eigen::VectorXcd::Unit(D, F.nx + u);
    for (int j = 0; j < n; ++j) {
      if (j == u) continue;
      double w = std::exp(-s * sd.r(u, j));
      g += w * lag_factor(sd, u, j, zeta) * F.f[static_cast<size_t>(u) * n + j];
    }
    g -= Eigen::VectorXcd::Unit(D, k);
    E.row(row++) = g.transpose();
  }
  // vanishing at zero for sheets after l
  for (int i = l + 1; i < n; ++i) {
    cplx zeta(0.0);
    Eigen::VectorXcd g = annihilator(sd, i).eval(zeta) * Eigen::VectorXcd::Unit(D, F.nx + i);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double w = std::exp(-s * sd.r(i, j));
      g += w * lag_factor(sd, i, j, zeta) * F.f[static_cast<size_t>(i) * n + j];
    }
    E.row(row++) = g.transpose();
  }

  ReducedSystem rs;
  rs.l = l;
  rs.nx = F.nx;
  rs.A.resize(neq, neq);
  rs.A.leftCols(F.nx) = E.leftCols(F.nx);
  for (int i = l + 1; i < n; ++i)
    rs.A.col(F.nx + (i - l - 1)) = E.col(F.nx + i);
  rs.B = -E.col(F.nx + l);  // C_l = 1; C_i = 0 for i < l drop out
  return rs;
}

PolyTuple reconstruct_from_values(const SpectralData& sd, double s, const Eigen::VectorXcd& X,
                                  const Eigen::VectorXcd& C) {
  const int n = sd.n();
  Functionals F = build_functionals(sd, s);
  Eigen::VectorXcd full(F.nx + n);
  full.head(F.nx) = X;
  full.tail(n) = C;

  PolyTuple out;
  out.s = s;
  out.entry.resize(n);
  for (int k = 0; k < n; ++k) {
    Poly q = Poly::zero(n - 1);
    Poly Ak = annihilator(sd, k);
    Ak *= C[k];
    q += Ak;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      cplx val = F.f[static_cast<size_t>(k) * n + j].transpose() * full;
      Poly lp = lag_poly(sd, k, j);
      lp *= std::exp(-s * sd.r(k, j)) * val;
      q += lp;
    }
    q.resize_to(n - 1);
    out.entry[k] = std::move(q);
  }
  return out;
}

PolyTuple solve_basis_lagrange(const SpectralData& sd, double s, int l) {
  const int n = sd.n();
  if (n == 1) {
    PolyTuple row;
    row.s = s;
    row.entry.push_back(Poly::constant(cplx(1)));
    return row;
  }
  ReducedSystem rs = assemble_reduced_system(sd, s, l);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rs.A);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin < sd.tol.singular_block * smax)
    throw Error(ErrorCode::SingularSystem, "reduced system numerically singular");
  Eigen::VectorXcd sol = rs.A.partialPivLu().solve(rs.B);

  Eigen::VectorXcd X = sol.head(rs.nx);
  Eigen::VectorXcd C = Eigen::VectorXcd::Zero(n);
  C[l] = 1.0;
  for (int i = l + 1; i < n; ++i) C[i] = sol[rs.nx + (i - l - 1)];
  return reconstruct_from_values(sd, s, X, C);
}

BasisMatrix solve_basis_lagrange_all(const SpectralData& sd, double s) {
  BasisMatrix out;
  out.s = s;
  for (int l = 0; l < sd.n(); ++l) out.rows.push_back(solve_basis_lagrange(sd, s, l));
  return out;
}

}  // namespace nahm
