#pragma once

#include <Eigen/Dense>

#include "nahm/nahm_assembly.hpp"

namespace nahm {

/// Irreducible su(2) generators with [s_i, s_j] = 2i eps_ijk s_k,
/// s3 = diag(n-1, n-3, ..., -n+1), superdiagonal sqrt(j(n-j)).
struct RepGenerators {
  Eigen::MatrixXcd s1, s2, s3, splus;
};

RepGenerators rep_generators(int n);

NahmData exact_n1(const Eigen::Vector3d& point);

/// Closed-form two-point solution (general position).
NahmData exact_n2(const MonopoleConfig& cfg, double s);

/// Its vertical-pair limit for points (0,0,c/2), (0,0,-c/2).
NahmData exact_n2_axis_limit(double c, double s);

/// The hyperbolic solution T_j = i f_j(s) sigma_j with
/// f1 = f2 = c/(2 sinh cs), f3 = c/(2 tanh cs).
NahmData axis_n2(double c, double s);

struct AlignResult {
  Eigen::MatrixXcd g;
  double distance = 0;
  bool ambiguous = false;
};

/// Constant unitary minimizing sum_mu ||g T_mu g^dag - R_mu||_F^2, seeded by
/// matching T3 eigenframes, refined by alternating polar steps.
AlignResult gauge_align(const NahmData& T, const NahmData& T_ref);

/// First-order L(s,0), M(s,0) closed forms for n=3: s-independent diagonals
/// and the coefficient of e^{-s r_uv} in each lower-triangular entry.
struct N3FirstOrder {
  Eigen::VectorXcd diagL, diagM;
  cplx L21, L31, L32, M21, M31, M32;
};

N3FirstOrder n3_first_order_display(const SpectralData& sd);

}  // namespace nahm
