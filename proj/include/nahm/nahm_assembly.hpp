#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "nahm/inner_product.hpp"

namespace nahm {

struct NahmData {
  double s = 0;
  Eigen::MatrixXcd T0, T1, T2, T3;

  const Eigen::MatrixXcd& T(int mu) const {
    switch (mu) {
      case 0: return T0;
      case 1: return T1;
      case 2: return T2;
      default: return T3;
    }
  }
};

struct LaxSample {
  cplx zeta;
  Eigen::MatrixXcd L, M;
  double s = 0;
};

struct VerificationReport {
  std::array<double, 3> nahm_residuals{};  // the three flow equations, with T0 terms
  double lax_residual = 0;
  double reality_residual = 0;      // L relation, worst sampled zeta
  double reality_residual_M = 0;    // M relation via the patch transition
  double degree_residual_L = 0;     // cubic-in-zeta coefficient, relative
  double degree_residual_M = 0;     // quadratic-in-zeta coefficient, relative
  double spectrum_residual = 0;
  double gram_residual = 0;
};

struct BoundaryReport {
  std::vector<double> t3_eigs;      // eigenvalues of -2is T3 at s_small, descending
  std::vector<double> t3_target;    // n-1, n-3, ..., -(n-1)
  double t3_eig_dev = 0;
  double casimir_dev = 0;           // ||sum (2sT_j)^2 + (n^2-1) I|| at s_small
  double large_dev1 = 0;            // max_j ||T_j - i diag(tau_j)|| at 0.75 s_large
  double large_dev2 = 0;            // same at s_large
  double fitted_decay = 0;          // two-point exponent
  double min_r = 0;
};

/// Normalized basis rows and their analytic s-derivative.
struct NormalizedBasis {
  BasisMatrix basis;  // normalized
  BasisMatrix dot;    // d/ds of the normalized rows
  std::vector<double> norms;  // the row norms that were divided out
};

/// d/ds of the unnormalized conditions-(A) rows: differentiates the solved
/// square system analytically (all s-dependence sits in the e^{+-s r/2}
/// constraint entries).
BasisMatrix basis_derivative(const SpectralData& sd, double s, const BasisMatrix& unnormalized);

NormalizedBasis normalized_with_derivative(const SpectralData& sd, double s,
                                           SolverKind kind = SolverKind::Direct);

/// L and M from the orthonormal frame at a spectral parameter. Throws
/// ZetaTooCloseToDoublePoint unless limit_mode, which averages around the
/// removable singularity instead.
LaxSample lax_at(const SpectralData& sd, double s, cplx zeta, const NormalizedBasis& nb,
                 bool limit_mode = false);

NahmData nahm_matrices(const SpectralData& sd, double s, SolverKind kind = SolverKind::Direct);

VerificationReport residuals(const SpectralData& sd, double s, double fd_step);

BoundaryReport boundary_report(const SpectralData& sd, double s_small, double s_large);

}  // namespace nahm
