#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "nahm/basis.hpp"

namespace nahm {

struct PairingResult {
  cplx value;
  double spread = 0;  // max relative deviation across zeta samples
};

/// Seeded zeta samples on a circle, kept clear of double points.
std::vector<cplx> default_zeta_samples(const SpectralData& sd, uint64_t seed = 2024,
                                       int count = 5, double radius = 0.7);

/// Hitchin pairing evaluated at the given zeta samples. Linear in p,
/// antilinear in r. For tuples satisfying the matching conditions the value is
/// sample-independent; the spread records how true that is.
PairingResult pairing(const PolyTuple& p, const PolyTuple& r, const SpectralData& sd,
                      std::span<const cplx> zetas, bool check_spread = false);

struct GramReport {
  Eigen::MatrixXcd gram;
  double zeta_spread = 0;
};

GramReport gram(const BasisMatrix& basis, const SpectralData& sd);

/// Divides each row by the positive real square root of its squared norm.
BasisMatrix normalize(const BasisMatrix& basis, const SpectralData& sd);

/// U^N(s,zeta): column j of Q scaled by e^{-s h_j^+(zeta)}.
Eigen::MatrixXcd to_section_frame(const BasisMatrix& qhat, const SpectralData& sd, cplx zeta);

}  // namespace nahm
