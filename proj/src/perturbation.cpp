#include "nahm/perturbation.hpp"

#include <cmath>
#include <map>

#include "nahm/errors.hpp"
#include "nahm/inner_product.hpp"

namespace nahm {

namespace {

std::vector<std::pair<int, int>> unordered_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

int pair_slot(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  // index of (i,j) in lexicographic unordered pairs
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += n - 1 - a;
  return idx + (j - i - 1);
}

}  // namespace

double ExponentKey::delta(const SpectralData& sd) const {
  auto pr = unordered_pairs(sd.n());
  double d = 0;
  for (size_t k = 0; k < pr.size(); ++k)
    d += mult[k] * sd.r(pr[k].first, pr[k].second);
  return d;
}

PerturbSeries expand_basis(const SpectralData& sd, int l, int order, double delta_cut) {
  const int n = sd.n();
  if (l < 0 || l >= n) throw Error(ErrorCode::InvalidConfig, "row index out of range");
  if (delta_cut <= 0) delta_cut = n > 1 ? 12.0 * sd.min_r() : 0.0;
  const int npairs = n * (n - 1) / 2;

  using Level = std::map<ExponentKey, std::vector<Poly>>;
  Level cur;
  {
    std::vector<Poly> sheets(n, Poly::zero(n - 1));
    Poly Al = annihilator(sd, l);
    Al.resize_to(n - 1);
    sheets[l] = Al;
    cur[ExponentKey{std::vector<int>(npairs, 0)}] = sheets;
  }

  Level all = cur;
  for (int step = 0; step < order; ++step) {
    Level next;
    for (const auto& [key, sheets] : cur) {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          if (i == j) continue;
          const Poly& gi = sheets[i];
          if (gi.degree() < 0) continue;
          cplx a_ji = sd.a(j, i);
          cplx val = gi.eval(a_ji);

          ExponentKey nk = key;
          nk.mult[pair_slot(n, i, j)] += 1;
          if (nk.delta(sd) > delta_cut) continue;

          Poly lp = Poly::constant(cplx(1));
          cplx den(1.0);
          for (int k = 0; k < n; ++k) {
            if (k == j || k == i) continue;
            lp = lp.mul_linear(sd.a(j, k));
            den *= a_ji - sd.a(j, k);
          }
          lp *= val / den;
          if (j > l) {
            // vanishing at zero keeps the extra zeta/a factor
            lp = lp.mul_linear(cplx(0));
            lp *= cplx(1.0) / a_ji;
          }
          lp.resize_to(n - 1);

          auto it = next.find(nk);
          if (it == next.end()) {
            std::vector<Poly> fresh(n, Poly::zero(n - 1));
            it = next.emplace(nk, std::move(fresh)).first;
          }
          it->second[j] += lp;
        }
      }
    }
    for (const auto& [key, sheets] : next) {
      auto it = all.find(key);
      if (it == all.end()) {
        all.emplace(key, sheets);
      } else {
        for (int j = 0; j < n; ++j) it->second[j] += sheets[j];
      }
    }
    cur = std::move(next);
  }

  PerturbSeries out;
  out.row = l;
  out.max_order = order;
  for (auto& [key, sheets] : all) out.terms.push_back(PerturbTerm{key, sheets});
  return out;
}

std::vector<cplx> eval_series(const PerturbSeries& series, const SpectralData& sd, double s,
                              cplx zeta) {
  const int n = sd.n();
  std::vector<cplx> out(n, cplx(0));
  for (const auto& term : series.terms) {
    double w = std::exp(-s * term.key.delta(sd));
    for (int j = 0; j < n; ++j) out[j] += w * term.sheet[j].eval(zeta);
  }
  return out;
}

double series_error(const SpectralData& sd, double s, int order) {
  const int n = sd.n();
  BasisMatrix exact = solve_basis_direct(sd, s);
  double worst = 0;
  for (int l = 0; l < n; ++l) {
    PerturbSeries ser = expand_basis(sd, l, order);
    std::vector<Poly> approx(n, Poly::zero(n - 1));
    for (const auto& term : ser.terms) {
      double w = std::exp(-s * term.key.delta(sd));
      for (int j = 0; j < n; ++j) {
        Poly scaled = term.sheet[j];
        scaled *= cplx(w);
        approx[j] += scaled;
      }
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(approx[j].coeff(k) - exact.rows[l].entry[j].coeff(k)));
  }
  return worst;
}

FirstOrderLax first_order_lax(const SpectralData& sd) {
  const int n = sd.n();
  const int npairs = n * (n - 1) / 2;
  FirstOrderLax out;
  out.diagL.resize(n);
  out.diagM.resize(n);
  out.coefL = Eigen::MatrixXcd::Zero(n, n);
  out.coefM = Eigen::MatrixXcd::Zero(n, n);

  // zeroth-order norms 1/d_l of the diagonal annihilator rows
  auto zetas = default_zeta_samples(sd);
  std::vector<double> d(n);
  std::vector<PerturbSeries> series;
  for (int l = 0; l < n; ++l) {
    series.push_back(expand_basis(sd, l, 1));
    PolyTuple zrow;
    zrow.s = 0;
    zrow.entry.assign(n, Poly::zero(n - 1));
    Poly Al = annihilator(sd, l);
    Al.resize_to(n - 1);
    zrow.entry[l] = Al;
    cplx G = pairing(zrow, zrow, sd, zetas).value;
    d[l] = 1.0 / std::sqrt(G.real());
  }

  const cplx zeta(0.0);
  auto zero_key_poly = [&](int row, int sheet) -> const Poly& {
    for (const auto& t : series[row].terms)
      if (t.key.order() == 0) return t.sheet[sheet];
    throw Error(ErrorCode::InvalidConfig, "missing zeroth order");
  };
  auto pair_key_poly = [&](int row, int sheet, int pi, int pj) -> const Poly* {
    for (const auto& t : series[row].terms) {
      if (t.key.order() != 1) continue;
      if (t.key.mult[pair_slot(n, pi, pj)] == 1) return &t.sheet[sheet];
    }
    return nullptr;
  };

  for (int u = 0; u < n; ++u) {
    out.diagL[u] = sd.p(u, zeta);
    out.diagM[u] = sd.h_plus(u, zeta);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      double ruv = sd.r(u, v);
      cplx cL(0), cM(0);
      // sheet v: first-order of row u against zeroth of row v
      if (const Poly* g = pair_key_poly(u, v, u, v)) {
        cplx q1 = g->eval(zeta);
        cplx q2t = rev_conj(zero_key_poly(v, v), n - 1).eval(zeta);
        cplx den = sd.sheet_denominator(v, zeta);
        cL += sd.p(v, zeta) * q1 * q2t / den;
        cM += (ruv * q1 + q1 * sd.h_plus(v, zeta)) * q2t / den;
      }
      // sheet u: zeroth of row u against first-order of row v
      if (const Poly* g = pair_key_poly(v, u, u, v)) {
        cplx q1 = zero_key_poly(u, u).eval(zeta);
        cplx q2t = rev_conj(*g, n - 1).eval(zeta);
        cplx den = sd.sheet_denominator(u, zeta);
        cL += sd.p(u, zeta) * q1 * q2t / den;
        cM += q1 * sd.h_plus(u, zeta) * q2t / den;
      }
      out.coefL(u, v) = d[u] * d[v] * cL;
      out.coefM(u, v) = d[u] * d[v] * cM;
    }
  }
  return out;
}

}  // namespace nahm
