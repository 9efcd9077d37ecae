#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nahm/spectral.hpp"

namespace nahm {

/// One basis row: n polynomials of degree <= n-1, one per sheet.
struct PolyTuple {
  std::vector<Poly> entry;
  double s = 0;

  int sheets() const { return static_cast<int>(entry.size()); }
  cplx value(int sheet, cplx zeta) const { return entry[sheet].eval(zeta); }
};

enum class SolverKind { Direct, Lagrange };

struct BasisMatrix {
  std::vector<PolyTuple> rows;  // row l = q_l
  double s = 0;
  bool normalized = false;

  int n() const { return static_cast<int>(rows.size()); }
  /// Q(s,zeta): entry (l, j) = Q_j^{(l)}(zeta).
  Eigen::MatrixXcd eval(cplx zeta) const {
    Eigen::MatrixXcd m(n(), n());
    for (int l = 0; l < n(); ++l)
      for (int j = 0; j < n(); ++j) m(l, j) = rows[l].entry[j].eval(zeta);
    return m;
  }
};

// ---- direct (full coefficient system) route ----

/// Constraint matrix of size n(n-1) x n^2; row (i,j) is
/// (1, a_ij, ..., a_ij^{n-1}) (x) (e^{s r_ij/2} e_i - e^{-s r_ij/2} e_j),
/// column layout k*n+m = coefficient of zeta^k on sheet m.
Eigen::MatrixXcd build_constraint_matrix(const SpectralData& sd, double s);

/// d/ds of build_constraint_matrix at fixed geometry.
Eigen::MatrixXcd constraint_matrix_derivative(const SpectralData& sd, double s);

BasisMatrix solve_basis_direct(const SpectralData& sd, double s);

struct SectionDiagnostics {
  double smin_ab = 0;        // smallest singular value of the (a B) block
  double norm_ab = 0;        // largest singular value
  int nullity_ab = 0;        // numerical nullity of the degree-(n-2) block
  int nullity_full = 0;      // numerical nullity of the full matrix
  double nullspace_angle = -1;  // subspace angle of the s=0 null space vs r(zeta)(1,..,1); -1 if n/a
};

SectionDiagnostics section_space_diagnostics(const SpectralData& sd, double s);

// ---- Lagrange-interpolation (reduced) route ----

struct ReducedSystem {
  Eigen::MatrixXcd A;  // square, size n(n-1)/2 + (n-1-l)
  Eigen::VectorXcd B;
  // ordering: unknowns X_(v,u) (v<u lexicographic) then C_i for i>l
  int l = 0;
  int nx = 0;  // number of X unknowns
};

ReducedSystem assemble_reduced_system(const SpectralData& sd, double s, int l);

PolyTuple solve_basis_lagrange(const SpectralData& sd, double s, int l);
BasisMatrix solve_basis_lagrange_all(const SpectralData& sd, double s);

/// Step-1 interpolation formula: Q_k = C_k A_k + sum_j e^{-s r_kj} Q_j(a_kj) * ell_kj.
/// X holds the v<u values (lexicographic); v>u values are regenerated by the
/// sheet recursion.
PolyTuple reconstruct_from_values(const SpectralData& sd, double s,
                                  const Eigen::VectorXcd& X, const Eigen::VectorXcd& C);

BasisMatrix solve_basis(const SpectralData& sd, double s, SolverKind kind);

}  // namespace nahm
