#include "nahm/nahm_assembly.hpp"

#include <cmath>
#include <numbers>

#include "nahm/errors.hpp"

namespace nahm {

namespace {

// Coefficient vector of one row, layout k*n + sheet (matching the constraint
// matrix columns).
Eigen::VectorXcd row_vector(const PolyTuple& row) {
  const int n = row.sheets();
  Eigen::VectorXcd q(static_cast<Eigen::Index>(n) * n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) q[static_cast<Eigen::Index>(k) * n + m] = row.entry[m].coeff(k);
  return q;
}

PolyTuple tuple_from_vector(const Eigen::VectorXcd& q, int n, double s) {
  PolyTuple out;
  out.s = s;
  out.entry.resize(n);
  for (int m = 0; m < n; ++m) {
    out.entry[m].c.assign(n, cplx(0));
    for (int k = 0; k < n; ++k) out.entry[m].c[k] = q[static_cast<Eigen::Index>(k) * n + m];
  }
  return out;
}

}  // namespace

BasisMatrix basis_derivative(const SpectralData& sd, double s, const BasisMatrix& basis) {
  const int n = sd.n();
  BasisMatrix out;
  out.s = s;
  if (n == 1) {
    PolyTuple row;
    row.s = s;
    row.entry.push_back(Poly::constant(cplx(0)));
    out.rows.push_back(row);
    return out;
  }

  Eigen::MatrixXcd xi = build_constraint_matrix(sd, s);
  Eigen::MatrixXcd dxi = constraint_matrix_derivative(sd, s);
  const int m = n * (n - 1);
  const int nn = n * n;

  for (int l = 0; l < n; ++l) {
    // square system: matching rows + the s-independent normalization rows
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(nn, nn);
    S.topRows(m) = xi;
    int rix = m;
    for (int i = 0; i < l; ++i) S(rix++, static_cast<Eigen::Index>(n - 1) * n + i) = 1.0;
    S(rix++, static_cast<Eigen::Index>(n - 1) * n + l) = 1.0;  // monic coefficient
    for (int i = l + 1; i < n; ++i) S(rix++, i) = 1.0;         // value at zero

    Eigen::VectorXcd q = row_vector(basis.rows[l]);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nn);
    rhs.head(m) = -(dxi * q);
    Eigen::VectorXcd dq = S.partialPivLu().solve(rhs);
    out.rows.push_back(tuple_from_vector(dq, n, s));
  }
  return out;
}

NormalizedBasis normalized_with_derivative(const SpectralData& sd, double s, SolverKind kind) {
  BasisMatrix raw = solve_basis(sd, s, kind);
  BasisMatrix draw = basis_derivative(sd, s, raw);
  auto zetas = default_zeta_samples(sd);

  NormalizedBasis nb;
  nb.basis = raw;
  nb.dot = draw;
  nb.basis.normalized = true;
  nb.norms.resize(sd.n());
  for (int l = 0; l < sd.n(); ++l) {
    cplx G = pairing(raw.rows[l], raw.rows[l], sd, zetas).value;
    if (!(G.real() > 0) || std::abs(G.imag()) > 1e-8 * std::abs(G))
      throw Error(ErrorCode::NonPositiveNorm, "row norm not positive real");
    double nu = std::sqrt(G.real());
    cplx d1 = pairing(draw.rows[l], raw.rows[l], sd, zetas).value;
    cplx d2 = pairing(raw.rows[l], draw.rows[l], sd, zetas).value;
    double dG = (d1 + d2).real();
    double dnu = dG / (2.0 * nu);
    nb.norms[l] = nu;
    for (int j = 0; j < sd.n(); ++j) {
      Poly& qh = nb.basis.rows[l].entry[j];
      Poly& qd = nb.dot.rows[l].entry[j];
      Poly scaled_q = qh;
      scaled_q *= cplx(dnu / (nu * nu));
      qd *= cplx(1.0 / nu);
      for (size_t c = 0; c < qd.c.size(); ++c) qd.c[c] -= scaled_q.coeff(static_cast<int>(c));
      qh *= cplx(1.0 / nu);
    }
  }
  return nb;
}

namespace {

Eigen::MatrixXcd lax_L(const SpectralData& sd, const NormalizedBasis& nb, cplx zeta) {
  const int n = sd.n();
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
  for (int sh = 0; sh < n; ++sh) {
    cplx den = sd.sheet_denominator(sh, zeta);
    cplx ps = sd.p(sh, zeta);
    for (int v = 0; v < n; ++v) {
      cplx qt = rev_conj(nb.basis.rows[v].entry[sh], n - 1).eval(zeta);
      for (int u = 0; u < n; ++u)
        L(u, v) += ps * nb.basis.rows[u].entry[sh].eval(zeta) * qt / den;
    }
  }
  return L;
}

Eigen::MatrixXcd lax_M(const SpectralData& sd, const NormalizedBasis& nb, cplx zeta) {
  const int n = sd.n();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int sh = 0; sh < n; ++sh) {
    cplx den = sd.sheet_denominator(sh, zeta);
    cplx hp = sd.h_plus(sh, zeta);
    for (int v = 0; v < n; ++v) {
      cplx qt = rev_conj(nb.basis.rows[v].entry[sh], n - 1).eval(zeta);
      for (int u = 0; u < n; ++u) {
        cplx num = -nb.dot.rows[u].entry[sh].eval(zeta) +
                   nb.basis.rows[u].entry[sh].eval(zeta) * hp;
        M(u, v) += num * qt / den;
      }
    }
  }
  return M;
}

}  // namespace

LaxSample lax_at(const SpectralData& sd, double s, cplx zeta, const NormalizedBasis& nb,
                 bool limit_mode) {
  if (sd.n() > 1) {
    double d = sd.double_point_distance(zeta);
    if (d < sd.tol.zeta_double_point && !limit_mode)
      throw Error(ErrorCode::ZetaTooCloseToDoublePoint, "request limit mode for this zeta");
    if (d < 1e-6 && limit_mode) {
      // removable singularity: average around a small circle
      const int N = 8;
      const double rad = 1e-4;
      LaxSample acc;
      acc.zeta = zeta;
      acc.s = s;
      acc.L = Eigen::MatrixXcd::Zero(sd.n(), sd.n());
      acc.M = Eigen::MatrixXcd::Zero(sd.n(), sd.n());
      for (int k = 0; k < N; ++k) {
        cplx zk = zeta + std::polar(rad, 2.0 * std::numbers::pi * k / N);
        acc.L += lax_L(sd, nb, zk);
        acc.M += lax_M(sd, nb, zk);
      }
      acc.L /= double(N);
      acc.M /= double(N);
      return acc;
    }
  }
  LaxSample out;
  out.zeta = zeta;
  out.s = s;
  out.L = lax_L(sd, nb, zeta);
  out.M = lax_M(sd, nb, zeta);
  return out;
}

NahmData nahm_matrices(const SpectralData& sd, double s, SolverKind kind) {
  if (!(s > 0)) throw Error(ErrorCode::InvalidConfig, "s must be positive");
  NormalizedBasis nb = normalized_with_derivative(sd, s, kind);
  LaxSample lm = lax_at(sd, s, cplx(0.0), nb);
  NahmData T;
  T.s = s;
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd Ld = lm.L.adjoint();
  Eigen::MatrixXcd Md = lm.M.adjoint();
  T.T1 = 0.5 * I * (lm.L + Ld);
  T.T2 = 0.5 * (lm.L - Ld);
  T.T3 = 0.5 * I * (lm.M + Md);
  T.T0 = 0.5 * (lm.M - Md);
  return T;
}

VerificationReport residuals(const SpectralData& sd, double s, double fd_step) {
  if (!(s - fd_step > 0)) throw Error(ErrorCode::InvalidConfig, "s - fd_step must stay positive");
  const int n = sd.n();
  VerificationReport rep;

  NahmData T = nahm_matrices(sd, s);
  NahmData Tp = nahm_matrices(sd, s + fd_step);
  NahmData Tm = nahm_matrices(sd, s - fd_step);

  auto comm = [](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    return (A * B - B * A).eval();
  };
  for (int eq = 0; eq < 3; ++eq) {
    int a = eq + 1, b = (eq + 1) % 3 + 1, c = (eq + 2) % 3 + 1;
    // dT_a/ds + [T0, T_a] = [T_b, T_c]
    Eigen::MatrixXcd fd = (Tp.T(a) - Tm.T(a)) / (2.0 * fd_step);
    Eigen::MatrixXcd rhs = comm(T.T(b), T.T(c));
    Eigen::MatrixXcd res = fd + comm(T.T0, T.T(a)) - rhs;
    rep.nahm_residuals[eq] = res.norm() / std::max(1.0, rhs.norm());
  }

  NormalizedBasis nb = normalized_with_derivative(sd, s);
  NormalizedBasis nbp = normalized_with_derivative(sd, s + fd_step);
  NormalizedBasis nbm = normalized_with_derivative(sd, s - fd_step);
  auto zetas = default_zeta_samples(sd, 77, 5, 0.63);

  double lax_res = 0, real_res = 0, real_res_m = 0, spec_res = 0;
  for (cplx zeta : zetas) {
    LaxSample lm = lax_at(sd, s, zeta, nb);
    LaxSample lp = lax_at(sd, s + fd_step, zeta, nbp);
    LaxSample lmn = lax_at(sd, s - fd_step, zeta, nbm);
    Eigen::MatrixXcd dL = (lp.L - lmn.L) / (2.0 * fd_step);
    Eigen::MatrixXcd bracket = lm.L * lm.M - lm.M * lm.L;
    lax_res = std::max(lax_res, (dL - bracket).norm() / std::max(1.0, bracket.norm()));

    cplx anti = -1.0 / std::conj(zeta);
    LaxSample la = lax_at(sd, s, anti, nb);
    Eigen::MatrixXcd lhs = la.L.adjoint() + lm.L / (zeta * zeta);
    real_res = std::max(real_res, lhs.norm() / std::max(1.0, (lm.L / (zeta * zeta)).norm()));
    Eigen::MatrixXcd lhsM = la.M.adjoint() + lm.M + lm.L / zeta;
    real_res_m = std::max(real_res_m, lhsM.norm() / std::max(1.0, lm.M.norm()));

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(lm.L);
    Eigen::VectorXcd ev = eig.eigenvalues();
    std::vector<bool> used(n, false);
    double worst = 0, scale = 1.0;
    for (int j = 0; j < n; ++j) {
      cplx pj = sd.p(j, zeta);
      scale = std::max(scale, std::abs(pj));
      int best = -1;
      double bd = 0;
      for (int k = 0; k < n; ++k) {
        if (used[k]) continue;
        double d = std::abs(ev[k] - pj);
        if (best < 0 || d < bd) {
          best = k;
          bd = d;
        }
      }
      used[best] = true;
      worst = std::max(worst, bd);
    }
    spec_res = std::max(spec_res, worst / scale);
  }
  rep.lax_residual = lax_res;
  rep.reality_residual = real_res;
  rep.reality_residual_M = real_res_m;
  rep.spectrum_residual = spec_res;

  // degree checks: interpolate entrywise and look at the top coefficient
  {
    std::vector<cplx> nodes4 = default_zeta_samples(sd, 91, 4, 0.55);
    std::vector<Eigen::MatrixXcd> Ls, Ms;
    double scaleL = 1.0, scaleM = 1.0;
    for (cplx zeta : nodes4) {
      LaxSample lm = lax_at(sd, s, zeta, nb);
      Ls.push_back(lm.L);
      Ms.push_back(lm.M);
      scaleL = std::max(scaleL, lm.L.norm());
      scaleM = std::max(scaleM, lm.M.norm());
    }
    double worstL = 0, worstM = 0;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        std::vector<cplx> vals;
        for (auto& Lk : Ls) vals.push_back(Lk(u, v));
        Poly fit = lagrange_interpolate(nodes4, vals);
        worstL = std::max(worstL, std::abs(fit.coeff(3)));
        std::vector<cplx> vm = {Ms[0](u, v), Ms[1](u, v), Ms[2](u, v)};
        std::vector<cplx> n3 = {nodes4[0], nodes4[1], nodes4[2]};
        Poly fitm = lagrange_interpolate(n3, vm);
        worstM = std::max(worstM, std::abs(fitm.coeff(2)));
      }
    rep.degree_residual_L = worstL / scaleL;
    rep.degree_residual_M = worstM / scaleM;
  }

  rep.gram_residual =
      (gram(nb.basis, sd).gram - Eigen::MatrixXcd::Identity(n, n)).norm();
  return rep;
}

BoundaryReport boundary_report(const SpectralData& sd, double s_small, double s_large) {
  if (!(0 < s_small && s_small < s_large))
    throw Error(ErrorCode::InvalidConfig, "need 0 < s_small < s_large");
  const int n = sd.n();
  BoundaryReport rep;
  rep.min_r = sd.min_r();

  NahmData T = nahm_matrices(sd, s_small);
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd H = -2.0 * I * s_small * T.T3;  // hermitian
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
  Eigen::VectorXd ev = eig.eigenvalues();
  for (int k = n - 1; k >= 0; --k) rep.t3_eigs.push_back(ev[k]);
  for (int k = 0; k < n; ++k) rep.t3_target.push_back(double(n - 1 - 2 * k));
  for (int k = 0; k < n; ++k)
    rep.t3_eig_dev = std::max(rep.t3_eig_dev, std::abs(rep.t3_eigs[k] - rep.t3_target[k]));

  Eigen::MatrixXcd cas = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 1; j <= 3; ++j) {
    Eigen::MatrixXcd m = 2.0 * s_small * T.T(j);
    cas += m * m;
  }
  cas += double(n * n - 1) * Eigen::MatrixXcd::Identity(n, n);
  rep.casimir_dev = cas.norm();

  auto dev_at = [&](double s) {
    NahmData Ts = nahm_matrices(sd, s);
    double worst = 0;
    for (int j = 1; j <= 3; ++j) {
      Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(n, n);
      for (int k = 0; k < n; ++k) tau(k, k) = I * sd.cfg.points[k][j - 1];
      worst = std::max(worst, (Ts.T(j) - tau).norm());
    }
    return worst;
  };
  double s1 = 0.75 * s_large;
  rep.large_dev1 = dev_at(s1);
  rep.large_dev2 = dev_at(s_large);
  if (rep.large_dev1 > 0 && rep.large_dev2 > 0)
    rep.fitted_decay = std::log(rep.large_dev1 / rep.large_dev2) / (s_large - s1);
  return rep;
}

}  // namespace nahm
