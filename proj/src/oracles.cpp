#include "nahm/oracles.hpp"

#include <cmath>

#include "nahm/errors.hpp"

namespace nahm {

RepGenerators rep_generators(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "n >= 1");
  RepGenerators g;
  g.s3 = Eigen::MatrixXcd::Zero(n, n);
  g.splus = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) g.s3(j, j) = double(n - 1 - 2 * j);
  for (int j = 1; j < n; ++j) g.splus(j - 1, j) = std::sqrt(double(j) * (n - j));
  Eigen::MatrixXcd sminus = g.splus.adjoint();
  g.s1 = g.splus + sminus;
  g.s2 = cplx(0.0, -1.0) * (g.splus - sminus);
  return g;
}

NahmData exact_n1(const Eigen::Vector3d& point) {
  NahmData T;
  T.s = 0;
  const cplx I(0.0, 1.0);
  T.T0 = Eigen::MatrixXcd::Zero(1, 1);
  T.T1 = I * point[0] * Eigen::MatrixXcd::Identity(1, 1);
  T.T2 = I * point[1] * Eigen::MatrixXcd::Identity(1, 1);
  T.T3 = I * point[2] * Eigen::MatrixXcd::Identity(1, 1);
  return T;
}

NahmData exact_n2(const MonopoleConfig& cfg, double s) {
  if (cfg.n() != 2) throw Error(ErrorCode::InvalidConfig, "two points required");
  const auto& p1 = cfg.points[0];
  const auto& p2 = cfg.points[1];
  cplx z1(p1[0], p1[1]), z2(p2[0], p2[1]);
  cplx z12 = z1 - z2;
  double az = std::abs(z12);
  if (az == 0) throw Error(ErrorCode::VerticalPair, "use the axis limit for vertical pairs");
  double r = (p1 - p2).norm();
  double x12 = p1[2] - p2[2];
  double sh = std::sinh(s * r);
  double D = r * std::cosh(s * r) - x12 * sh;
  const cplx I(0.0, 1.0);

  NahmData T;
  T.s = s;
  T.T1.resize(2, 2);
  T.T1 << p1[0], -(r / (2 * sh)) * std::conj(z12) / az,
      -(r / (2 * sh)) * z12 / az, p2[0];
  T.T1 *= I;
  T.T2.resize(2, 2);
  T.T2 << p1[1], (-I * r / (2 * sh)) * std::conj(z12) / az,
      (I * r / (2 * sh)) * z12 / az, p2[1];
  T.T2 *= I;
  T.T3.resize(2, 2);
  T.T3 << 2 * p1[2] - r * r / (sh * D), -r * az / D,
      -r * az / D, 2 * p2[2] + r * r / (sh * D);
  T.T3 *= 0.5 * I;
  T.T0.resize(2, 2);
  T.T0 << 0.0, r * az / (2 * D), -r * az / (2 * D), 0.0;
  return T;
}

NahmData exact_n2_axis_limit(double c, double s) {
  RepGenerators g = rep_generators(2);
  const cplx I(0.0, 1.0);
  NahmData T;
  T.s = s;
  T.T1 = I * (-c / (2 * std::sinh(c * s))) * g.s1;
  T.T2 = I * (c / (2 * std::sinh(c * s))) * g.s2;
  T.T3 = I * (-c / (2 * std::tanh(c * s))) * g.s3;
  T.T0 = Eigen::MatrixXcd::Zero(2, 2);
  return T;
}

NahmData axis_n2(double c, double s) {
  if (!(c > 0 && s > 0)) throw Error(ErrorCode::InvalidConfig, "c, s > 0");
  RepGenerators g = rep_generators(2);
  const cplx I(0.0, 1.0);
  NahmData T;
  T.s = s;
  T.T1 = I * (c / (2 * std::sinh(c * s))) * g.s1;
  T.T2 = I * (c / (2 * std::sinh(c * s))) * g.s2;
  T.T3 = I * (c / (2 * std::tanh(c * s))) * g.s3;
  T.T0 = Eigen::MatrixXcd::Zero(2, 2);
  return T;
}

namespace {

double align_cost(const Eigen::MatrixXcd& g, const NahmData& T, const NahmData& R) {
  double c = 0;
  for (int mu = 0; mu < 4; ++mu) c += (g * T.T(mu) * g.adjoint() - R.T(mu)).squaredNorm();
  return std::sqrt(c);
}

Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// eigenvector frame of the hermitian matrix -i T3, eigenvalues descending,
// column phases pinned by the largest entry
Eigen::MatrixXcd t3_frame(const NahmData& T, bool& degenerate) {
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd H = -I * T.T3;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (H + H.adjoint()));
  Eigen::VectorXd ev = eig.eigenvalues();
  const int n = static_cast<int>(ev.size());
  degenerate = false;
  double scale = std::max(1.0, std::abs(ev[n - 1]));
  for (int k = 0; k + 1 < n; ++k)
    if (std::abs(ev[k] - ev[k + 1]) < 1e-8 * scale) degenerate = true;
  Eigen::MatrixXcd V(n, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd col = eig.eigenvectors().col(n - 1 - k);
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(col[i]) > std::abs(col[imax])) imax = i;
    col *= std::abs(col[imax]) / col[imax];
    V.col(k) = col;
  }
  return V;
}

}  // namespace

AlignResult gauge_align(const NahmData& T, const NahmData& T_ref) {
  if (T.T1.rows() != T_ref.T1.rows())
    throw Error(ErrorCode::InvalidConfig, "rank mismatch");
  const int n = static_cast<int>(T.T1.rows());

  bool deg1 = false, deg2 = false;
  Eigen::MatrixXcd V = t3_frame(T, deg1);
  Eigen::MatrixXcd Vr = t3_frame(T_ref, deg2);
  Eigen::MatrixXcd g = Vr * V.adjoint();

  Eigen::MatrixXcd best = g;
  double bestc = align_cost(g, T, T_ref);
  // identity seed as a fallback
  if (double cid = align_cost(Eigen::MatrixXcd::Identity(n, n), T, T_ref); cid < bestc) {
    best = Eigen::MatrixXcd::Identity(n, n);
    bestc = cid;
  }

  g = best;
  for (int it = 0; it < 200; ++it) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    for (int mu = 0; mu < 4; ++mu) A += T_ref.T(mu).adjoint() * g * T.T(mu);
    Eigen::MatrixXcd gn = polar_unitary(A);
    double c = align_cost(gn, T, T_ref);
    if (c < bestc) {
      bestc = c;
      best = gn;
    }
    if ((gn - g).norm() < 1e-14) break;
    g = gn;
  }

  AlignResult out;
  out.g = best;
  out.distance = bestc;
  out.ambiguous = deg1 || deg2;
  return out;
}

N3FirstOrder n3_first_order_display(const SpectralData& sd) {
  if (sd.n() != 3) throw Error(ErrorCode::InvalidConfig, "n = 3 required");
  cplx a12 = sd.a(0, 1), a13 = sd.a(0, 2), a21 = sd.a(1, 0), a23 = sd.a(1, 2),
       a31 = sd.a(2, 0), a32 = sd.a(2, 1);
  cplx z1 = sd.z(0), z2 = sd.z(1), z3 = sd.z(2);
  cplx z12 = z1 - z2, z13 = z1 - z3, z23 = z2 - z3;
  double x1 = sd.x3(0), x2 = sd.x3(1), x3 = sd.x3(2);
  double r12 = sd.r(0, 1), r13 = sd.r(0, 2), r23 = sd.r(1, 2);
  auto zb = [](cplx v) { return std::conj(v); };

  N3FirstOrder o;
  o.diagL.resize(3);
  o.diagM.resize(3);
  o.diagL << z1, z2, z3;
  o.diagM << x1, x2, x3;

  o.L21 = (std::abs(z12) * std::sqrt(zb(z13) * a31 * zb(z23) * a32) * (a21 - a12) / z12) *
          (z1 * a13 * (a12 - a23) / (z13 * (a12 - a13)) -
           z2 * a23 * a32 * (a12 - a31) / (z23 * a31 * (a12 - a32)));
  o.L31 = (std::abs(z13) * std::sqrt(-zb(z12) * a21 * zb(z23) * a23) * (a13 - a31) / z13) *
          (z1 * a12 * (a13 - a32) / (z12 * (a12 - a13)) -
           z3 * a23 * a32 * (a13 - a21) / (z23 * a21 * (a13 - a23)));
  o.L32 = (std::abs(z23) * std::sqrt(zb(z12) * a12 * zb(z13) * a13) * (a23 - a32) / z23) *
          (z2 * a21 * (a23 - a31) / (z12 * (a23 - a21)) -
           z3 * a13 * a31 * (a12 - a23) / (z13 * a12 * (a13 - a23)));
  o.M21 = (std::abs(z12) * std::sqrt(zb(z13) * a31 * zb(z23) * a32) * (a12 - a21) / z12) *
          (x2 * a32 * a23 * (a12 - a31) / (z23 * a31 * (a12 - a32)) -
           (x1 + r12) * a13 * (a12 - a23) / (z13 * (a12 - a13)));
  // prefactor sign follows the (a31 - a13) pattern of the other M entries
  o.M31 = (std::abs(z13) * std::sqrt(-zb(z12) * a21 * zb(z23) * a23) * (a31 - a13) / z13) *
          (x3 * a23 * a32 * (a13 - a21) / (z23 * a21 * (a13 - a23)) -
           (x1 + r13) * a12 * (a13 - a32) / (z12 * (a12 - a13)));
  o.M32 = (std::abs(z23) * std::sqrt(zb(z12) * a12 * zb(z13) * a13) * (a23 - a32) / z23) *
          (x3 * a13 * a31 * (a12 - a23) / (z13 * a12 * (a23 - a13)) -
           (x2 + r23) * a21 * (a23 - a31) / (z12 * (a21 - a23)));
  return o;
}

}  // namespace nahm
