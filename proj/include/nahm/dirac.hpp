#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nahm/nahm_assembly.hpp"

namespace nahm {

struct PointTwist {
  Eigen::Vector3d x;
  std::array<cplx, 3> px{};        // p_x(zeta) coefficients
  std::vector<cplx> a_jx, a_xj;    // the two roots of p_j - p_x per source j
};

/// Roots of p_j(zeta) - p_x(zeta) for every source. Throws NonGenericTwist
/// when x is vertically aligned with a source or coincides with one.
PointTwist point_roots(const SpectralData& sd, const Eigen::Vector3d& x);

struct ZeroModeFrame {
  Eigen::MatrixXcd W;              // 2n x 2n, columns (j, root)
  std::vector<cplx> col_zeta;      // the spectral parameter of each column
  double s = 0;
  Eigen::Vector3d x;
};

/// Fundamental solution matrix of the x-twisted problem: columns
/// e^{s h_x^+(a)} (1, a)^T (x) U_j^N(s, a) for a in {a_jx, a_xj}.
ZeroModeFrame nahm_side_frame(const SpectralData& sd, double s, const Eigen::Vector3d& x,
                              const NormalizedBasis& nb);

/// The 2n x 2n twisted operator applied with a central difference in s:
/// i dW/ds + i T0 W + sum_j sigma_j (x) (T_j - i x_j) W. Returns the relative
/// residual; adjoint = true applies the adjoint operator instead.
double dirac_frame_residual(const SpectralData& sd, double s, const Eigen::Vector3d& x,
                            const Eigen::MatrixXcd& frame_s,
                            const Eigen::MatrixXcd& frame_plus,
                            const Eigen::MatrixXcd& frame_minus, double h, bool adjoint);

/// Growth classification of frame columns between s and s + delta:
/// returns per-column norm ratios.
std::vector<double> column_growth(const Eigen::MatrixXcd& frame_s,
                                  const Eigen::MatrixXcd& frame_s2);

struct MonopoleField {
  cplx phi;                 // purely imaginary
  Eigen::Vector3d a_real;   // A_j = i * a_real[j] dx^j
};

/// Dirac multimonopole pair away from the sources. Throws AtSource;
/// StringCrossing when x sits on a gauge string r_k + x_k^3 ~ 0.
MonopoleField monopole_fields(const MonopoleConfig& cfg, const Eigen::Vector3d& x);

/// Product solution of the twisted linear problem:
/// prod_k sqrt(u_k)/zbar_k * e^{-s h_k^-(zeta)} / (zeta - a_xk),
/// relative coordinates per source. Throws PoleHit at the poles.
cplx chi(const MonopoleConfig& cfg, double s, const Eigen::Vector3d& x, cplx zeta);

/// Scalar residue sum of the zero-mode construction (conjugated):
/// conj( sum_i Res_{a_xi} (Q_i(zeta)/zeta) e^{-s h_i^-(zeta)} chi0(zeta) ).
cplx zero_mode_scalar(const MonopoleConfig& cfg, double s, const Eigen::Vector3d& x,
                      const PolyTuple& q);

/// Normalizable zero mode: the twisted operator applied to (g, 0)^T with
/// central differences in x (step h).
Eigen::Vector2cd monopole_zero_mode(const MonopoleConfig& cfg, double s,
                                    const Eigen::Vector3d& x, const PolyTuple& q,
                                    double h = 1e-4);

/// Relative residual of the adjoint operator on the zero mode at x.
double zero_mode_residual(const MonopoleConfig& cfg, double s, const Eigen::Vector3d& x,
                          const PolyTuple& q, double h = 1e-4);

}  // namespace nahm
