#include <Eigen/Dense>
#include <cmath>

#include "nahm/basis.hpp"
#include "nahm/errors.hpp"

namespace nahm {

namespace {

void check_scale(const SpectralData& sd, double s) {
  if (s * sd.max_r() / 2.0 > sd.tol.scale_overflow)
    throw Error(ErrorCode::ScaleOverflow, "s*max(r)/2 exceeds exponent budget");
}

// Unpivoted Doolittle LU; pivot failure reported as SingularBlock.
void lu_nopivot(Eigen::MatrixXcd A, Eigen::MatrixXcd& L, Eigen::MatrixXcd& U) {
  const int n = static_cast<int>(A.rows());
  L = Eigen::MatrixXcd::Identity(n, n);
  U = Eigen::MatrixXcd::Zero(n, n);
  double scale = A.cwiseAbs().maxCoeff();
  for (int k = 0; k < n; ++k) {
    U.row(k).tail(n - k) = A.row(k).tail(n - k);
    if (std::abs(U(k, k)) < 1e-14 * std::max(1.0, scale))
      throw Error(ErrorCode::SingularBlock, "vanishing pivot in triangular factorization");
    for (int i = k + 1; i < n; ++i) {
      L(i, k) = A(i, k) / U(k, k);
      A.row(i).tail(n - k - 1) -= L(i, k) * U.row(k).tail(n - k - 1);
    }
  }
}

// A = U * Lam with U upper triangular and Lam unit lower triangular,
// obtained as the LU of the row/column-reversed matrix.
void ul_decompose(const Eigen::MatrixXcd& A, Eigen::MatrixXcd& U, Eigen::MatrixXcd& Lam) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXcd B = A.reverse();  // both rows and columns
  Eigen::MatrixXcd L1, U1;
  lu_nopivot(B, L1, U1);
  Eigen::VectorXcd d = U1.diagonal();
  Eigen::MatrixXcd LD = L1 * d.asDiagonal();
  Eigen::MatrixXcd DU = d.asDiagonal().inverse() * U1;
  U = LD.reverse();
  Lam = DU.reverse();
}

}  // namespace

Eigen::MatrixXcd build_constraint_matrix(const SpectralData& sd, double s) {
  check_scale(sd, s);
  const int n = sd.n();
  Eigen::MatrixXcd xi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n) * (n - 1),
                                               static_cast<Eigen::Index>(n) * n);
  int row = 0;
  for (const auto& p : sd.pairs) {
    double ep = std::exp(s * p.r / 2.0);
    double em = std::exp(-s * p.r / 2.0);
    cplx apow(1.0);
    for (int k = 0; k < n; ++k) {
      xi(row, static_cast<Eigen::Index>(k) * n + p.i) += apow * ep;
      xi(row, static_cast<Eigen::Index>(k) * n + p.j) -= apow * em;
      apow *= p.a;
    }
    ++row;
  }
  return xi;
}

Eigen::MatrixXcd constraint_matrix_derivative(const SpectralData& sd, double s) {
  check_scale(sd, s);
  const int n = sd.n();
  Eigen::MatrixXcd dxi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n) * (n - 1),
                                                static_cast<Eigen::Index>(n) * n);
  int row = 0;
  for (const auto& p : sd.pairs) {
    double ep = (p.r / 2.0) * std::exp(s * p.r / 2.0);
    double em = (p.r / 2.0) * std::exp(-s * p.r / 2.0);
    cplx apow(1.0);
    for (int k = 0; k < n; ++k) {
      dxi(row, static_cast<Eigen::Index>(k) * n + p.i) += apow * ep;
      dxi(row, static_cast<Eigen::Index>(k) * n + p.j) += apow * em;
      apow *= p.a;
    }
    ++row;
  }
  return dxi;
}

BasisMatrix solve_basis_direct(const SpectralData& sd, double s) {
  const int n = sd.n();
  BasisMatrix out;
  out.s = s;
  if (n == 1) {
    PolyTuple row;
    row.s = s;
    row.entry.push_back(Poly::constant(cplx(1)));
    out.rows.push_back(row);
    return out;
  }

  Eigen::MatrixXcd xi = build_constraint_matrix(sd, s);
  const int m = n * (n - 1);
  // row equilibration to unit sup-norm
  for (int r = 0; r < m; ++r) {
    double w = xi.row(r).cwiseAbs().maxCoeff();
    if (w > 0) xi.row(r) /= w;
  }
  Eigen::MatrixXcd ab = xi.leftCols(m);
  Eigen::MatrixXcd c = xi.rightCols(n);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ab);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin < sd.tol.singular_block * smax)
    throw Error(ErrorCode::SingularBlock, "degree block numerically singular (non-generic data or s<=0)");

  Eigen::MatrixXcd Y = -ab.partialPivLu().solve(c);  // n(n-1) x n

  Eigen::MatrixXcd U, Lam;
  ul_decompose(Y.topRows(n), U, Lam);
  Eigen::MatrixXcd Lhat = Lam.inverse();  // unit lower triangular

  // stacked coefficient matrix: degrees 0, .., n-2 from Y*Lhat, degree n-1 = Lhat
  Eigen::MatrixXcd P(static_cast<Eigen::Index>(n) * n, n);
  P.topRows(m) = Y * Lhat;
  P.bottomRows(n) = Lhat;

  out.rows.reserve(n);
  for (int l = 0; l < n; ++l) {
    PolyTuple row;
    row.s = s;
    row.entry.resize(n);
    for (int sheet = 0; sheet < n; ++sheet) {
      Poly& q = row.entry[sheet];
      q.c.assign(n, cplx(0));
      for (int k = 0; k < n; ++k) q.c[k] = P(static_cast<Eigen::Index>(k) * n + sheet, l);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

SectionDiagnostics section_space_diagnostics(const SpectralData& sd, double s) {
  const int n = sd.n();
  SectionDiagnostics diag;
  if (n == 1) return diag;

  Eigen::MatrixXcd xi = build_constraint_matrix(sd, s);
  const int m = n * (n - 1);
  Eigen::MatrixXcd ab = xi.leftCols(m);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd_ab(ab, Eigen::ComputeFullV);
  const auto& sv = svd_ab.singularValues();
  diag.norm_ab = sv.maxCoeff();
  diag.smin_ab = sv.minCoeff();
  double cut = 1e-8 * std::max(1.0, diag.norm_ab);
  for (int k = 0; k < sv.size(); ++k)
    if (sv[k] < cut) ++diag.nullity_ab;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd_full(xi);
  const auto& svf = svd_full.singularValues();
  diag.nullity_full = n * n - m;  // columns minus rows lower bound
  int rank = 0;
  for (int k = 0; k < svf.size(); ++k)
    if (svf[k] >= cut) ++rank;
  diag.nullity_full = n * n - rank;

  if (diag.nullity_ab > 0) {
    // principal angle between the numerical null space of (a B) and the
    // span of e_k (x) (1,..,1), k = 0..n-2
    Eigen::MatrixXcd V = svd_ab.matrixV().rightCols(diag.nullity_ab);
    Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(m, n - 1);
    for (int k = 0; k < n - 1; ++k)
      for (int sheet = 0; sheet < n; ++sheet)
        target(static_cast<Eigen::Index>(k) * n + sheet, k) = 1.0 / std::sqrt(double(n));
    Eigen::MatrixXcd overlap = V.adjoint() * target;
    Eigen::JacobiSVD<Eigen::MatrixXcd> osvd(overlap);
    double cosmin = osvd.singularValues().minCoeff();
    cosmin = std::min(1.0, cosmin);
    diag.nullspace_angle = std::acos(cosmin);
  }
  return diag;
}

BasisMatrix solve_basis(const SpectralData& sd, double s, SolverKind kind) {
  return kind == SolverKind::Direct ? solve_basis_direct(sd, s) : solve_basis_lagrange_all(sd, s);
}

}  // namespace nahm
