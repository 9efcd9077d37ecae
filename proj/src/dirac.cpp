#include "nahm/dirac.hpp"

#include <cmath>

#include "nahm/errors.hpp"

namespace nahm {

namespace {

const Eigen::Matrix2cd& pauli(int j) {
  static const Eigen::Matrix2cd s1 = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd s2 =
      (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  static const Eigen::Matrix2cd s3 = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  switch (j) {
    case 0: return s1;
    case 1: return s2;
    default: return s3;
  }
}

struct Relative {
  Eigen::Vector3d y;
  double r;
  cplx z;     // y1 + i y2
  double u;   // r + y3
  cplx a_xk;  // (y3 + r)/(-conj(z))
};

Relative relative(const Eigen::Vector3d& x, const Eigen::Vector3d& c) {
  Relative rel;
  rel.y = x - c;
  rel.r = rel.y.norm();
  rel.z = cplx(rel.y[0], rel.y[1]);
  rel.u = rel.r + rel.y[2];
  if (rel.r == 0) throw Error(ErrorCode::AtSource, "evaluation point hits a source");
  if (std::abs(rel.z) == 0) throw Error(ErrorCode::NonGenericTwist, "vertical alignment with a source");
  rel.a_xk = cplx(rel.y[2] + rel.r, 0.0) / (-std::conj(rel.z));
  return rel;
}

}  // namespace

PointTwist point_roots(const SpectralData& sd, const Eigen::Vector3d& x) {
  PointTwist tw;
  tw.x = x;
  cplx zx(x[0], x[1]);
  tw.px = {zx, cplx(-2.0 * x[2], 0.0), -std::conj(zx)};
  for (int j = 0; j < sd.n(); ++j) {
    const auto& c = sd.cfg.points[j];
    double r = (c - x).norm();
    if (r == 0) throw Error(ErrorCode::AtSource, "twist point coincides with a source");
    cplx den_jx(x[0] - c[0], -(x[1] - c[1]));
    cplx den_xj(c[0] - x[0], -(c[1] - x[1]));
    if (std::abs(den_jx) == 0)
      throw Error(ErrorCode::NonGenericTwist, "twist point vertically aligned with source " +
                                                  std::to_string(j));
    tw.a_jx.push_back(cplx(c[2] - x[2] + r, 0.0) / den_jx);
    tw.a_xj.push_back(cplx(x[2] - c[2] + r, 0.0) / den_xj);
  }
  return tw;
}

ZeroModeFrame nahm_side_frame(const SpectralData& sd, double s, const Eigen::Vector3d& x,
                              const NormalizedBasis& nb) {
  const int n = sd.n();
  PointTwist tw = point_roots(sd, x);
  cplx zx(x[0], x[1]);
  auto hx_plus = [&](cplx zeta) { return x[2] + std::conj(zx) * zeta; };

  ZeroModeFrame frame;
  frame.s = s;
  frame.x = x;
  frame.W.resize(2 * n, 2 * n);
  int col = 0;
  for (int j = 0; j < n; ++j) {
    for (cplx a : {tw.a_jx[j], tw.a_xj[j]}) {
      Eigen::MatrixXcd U = to_section_frame(nb.basis, sd, a);
      Eigen::VectorXcd uj = U.col(j);
      cplx w = std::exp(s * hx_plus(a));
      frame.W.col(col).head(n) = w * uj;
      frame.W.col(col).tail(n) = w * a * uj;
      frame.col_zeta.push_back(a);
      ++col;
    }
  }
  return frame;
}

double dirac_frame_residual(const SpectralData& sd, double s, const Eigen::Vector3d& x,
                            const Eigen::MatrixXcd& frame_s, const Eigen::MatrixXcd& frame_plus,
                            const Eigen::MatrixXcd& frame_minus, double h, bool adjoint) {
  const int n = sd.n();
  NahmData T = nahm_matrices(sd, s);
  const cplx I(0.0, 1.0);
  auto kron2 = [n](const Eigen::Matrix2cd& sig, const Eigen::MatrixXcd& A) {
    Eigen::MatrixXcd out(2 * n, 2 * n);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out.block(a * n, b * n, n, n) = sig(a, b) * A;
    return out;
  };
  Eigen::MatrixXcd dW = (frame_plus - frame_minus) / (2.0 * h);
  Eigen::MatrixXcd res = I * dW;
  res += kron2(Eigen::Matrix2cd::Identity(), (I * T.T0).eval()) * frame_s;
  double sign = adjoint ? -1.0 : 1.0;
  for (int j = 0; j < 3; ++j) {
    Eigen::MatrixXcd Aj = T.T(j + 1) - I * x[j] * Eigen::MatrixXcd::Identity(n, n);
    res += sign * kron2(pauli(j), Aj) * frame_s;
  }
  double scale = frame_s.norm() * std::max(1.0, s + x.norm());
  return res.norm() / scale;
}

std::vector<double> column_growth(const Eigen::MatrixXcd& frame_s,
                                  const Eigen::MatrixXcd& frame_s2) {
  std::vector<double> out;
  for (int c = 0; c < frame_s.cols(); ++c)
    out.push_back(frame_s2.col(c).norm() / frame_s.col(c).norm());
  return out;
}

MonopoleField monopole_fields(const MonopoleConfig& cfg, const Eigen::Vector3d& x) {
  MonopoleField f;
  f.phi = cplx(0);
  f.a_real.setZero();
  for (const auto& c : cfg.points) {
    Eigen::Vector3d y = x - c;
    double r = y.norm();
    if (r == 0) throw Error(ErrorCode::AtSource, "field evaluation at a source");
    double u = r + y[2];
    if (std::abs(u) < 1e-12 * r)
      throw Error(ErrorCode::StringCrossing, "point on the gauge string");
    f.phi += cplx(0.0, 1.0 / (2.0 * r));
    f.a_real += Eigen::Vector3d(y[1], -y[0], 0.0) / (2.0 * r * u);
  }
  return f;
}

cplx chi(const MonopoleConfig& cfg, double s, const Eigen::Vector3d& x, cplx zeta) {
  cplx tot(1.0);
  for (const auto& c : cfg.points) {
    Relative rel = relative(x, c);
    if (std::abs(zeta - rel.a_xk) < 1e-12)
      throw Error(ErrorCode::PoleHit, "zeta at a twist root");
    cplx hminus = -rel.z / zeta + rel.y[2];
    tot *= std::sqrt(rel.u) / std::conj(rel.z) * std::exp(-s * hminus) / (zeta - rel.a_xk);
  }
  return tot;
}

cplx zero_mode_scalar(const MonopoleConfig& cfg, double s, const Eigen::Vector3d& x,
                      const PolyTuple& q) {
  const int n = cfg.n();
  if (q.sheets() != n) throw Error(ErrorCode::InvalidConfig, "tuple size mismatch");
  std::vector<Relative> rel;
  rel.reserve(n);
  for (const auto& c : cfg.points) rel.push_back(relative(x, c));

  cplx tot(0);
  for (int i = 0; i < n; ++i) {
    cplx a = rel[i].a_xk;
    // e^{-s h_i^-(a)} = e^{-s r_i} exactly at the i-th root
    cplx term = q.entry[i].eval(a) / a * std::exp(-s * rel[i].r);
    for (int k = 0; k < n; ++k) {
      term *= std::sqrt(rel[k].u) / std::conj(rel[k].z);
      if (k != i) term /= (a - rel[k].a_xk);
    }
    tot += term;
  }
  return std::conj(tot);
}

namespace {

// D_s (g, 0)^T with D_s = sigma.D + i Phi + s and D_j = d_j - i alpha_j
Eigen::Vector2cd apply_dirac_seed(const MonopoleConfig& cfg, double s, const Eigen::Vector3d& x,
                                  const PolyTuple& q, double h) {
  MonopoleField f = monopole_fields(cfg, x);
  cplx g0 = zero_mode_scalar(cfg, s, x, q);
  Eigen::Vector2cd out = Eigen::Vector2cd::Zero();
  Eigen::Vector2cd seed(1.0, 0.0);
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[j] = h;
    cplx dj = (zero_mode_scalar(cfg, s, x + e, q) - zero_mode_scalar(cfg, s, x - e, q)) / (2 * h);
    dj += cplx(0.0, -f.a_real[j]) * g0;
    out += pauli(j) * seed * dj;
  }
  out += (s + cplx(0.0, 1.0) * f.phi) * g0 * seed;
  return out;
}

}  // namespace

Eigen::Vector2cd monopole_zero_mode(const MonopoleConfig& cfg, double s, const Eigen::Vector3d& x,
                                    const PolyTuple& q, double h) {
  return apply_dirac_seed(cfg, s, x, q, h);
}

double zero_mode_residual(const MonopoleConfig& cfg, double s, const Eigen::Vector3d& x,
                          const PolyTuple& q, double h) {
  MonopoleField f = monopole_fields(cfg, x);
  Eigen::Vector2cd p0 = monopole_zero_mode(cfg, s, x, q, h);
  Eigen::Vector2cd out = (s + cplx(0.0, 1.0) * f.phi) * p0;
  double terms = std::abs(s + cplx(0.0, 1.0) * f.phi) * p0.norm();
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[j] = h;
    Eigen::Vector2cd dp =
        (monopole_zero_mode(cfg, s, x + e, q, h) - monopole_zero_mode(cfg, s, x - e, q, h)) /
        (2 * h);
    dp += cplx(0.0, -f.a_real[j]) * p0;
    Eigen::Vector2cd t = pauli(j) * dp;
    out -= t;
    terms += t.norm();
  }
  return out.norm() / terms;
}

}  // namespace nahm
