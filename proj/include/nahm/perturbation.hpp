#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "nahm/basis.hpp"

namespace nahm {

/// Exponent of one large-s term: integer multiplicities over unordered pairs
/// {i<j}, lexicographic. Compared exactly; the real value Sum m_ij r_ij is
/// only formed at evaluation time.
struct ExponentKey {
  std::vector<int> mult;

  bool operator<(const ExponentKey& o) const { return mult < o.mult; }
  bool operator==(const ExponentKey& o) const { return mult == o.mult; }
  int order() const {
    int t = 0;
    for (int m : mult) t += m;
    return t;
  }
  double delta(const SpectralData& sd) const;
};

struct PerturbTerm {
  ExponentKey key;
  std::vector<Poly> sheet;  // one polynomial per sheet, degree <= n-1
};

struct PerturbSeries {
  int row = 0;  // the l index, 0-based
  int max_order = 0;
  std::vector<PerturbTerm> terms;  // merged by key, sorted
};

/// Large-s expansion of basis row l by the interpolation recursion.
/// Terms whose exponent value exceeds delta_cut are dropped; delta_cut <= 0
/// means 12 * min r.
PerturbSeries expand_basis(const SpectralData& sd, int l, int order, double delta_cut = 0);

/// Sum of e^{-s Delta} * poly(zeta) per sheet.
std::vector<cplx> eval_series(const PerturbSeries& series, const SpectralData& sd, double s,
                              cplx zeta);

/// Max coefficient deviation between the order-truncated series and the exact
/// rows at this s, over all rows and sheets.
double series_error(const SpectralData& sd, double s, int order);

/// First-order content of L(s,0), M(s,0) extracted exactly from the series:
/// diag holds the s-independent diagonal, coef(u,v) the coefficient of
/// e^{-s r_uv} in the (u,v) entry.
struct FirstOrderLax {
  Eigen::VectorXcd diagL, diagM;
  Eigen::MatrixXcd coefL, coefM;
};

FirstOrderLax first_order_lax(const SpectralData& sd);

}  // namespace nahm
