#pragma once

// Reference implementations used by the tests. They share no code with the library
// beyond reading a fan's rays and maximal-cone index lists.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "toric/fan.hpp"

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;

// 2 * #{1 <= a, b <= N : gcd(a, b) = 1}: rationals a/b with max(|a|, b) <= N.
inline std::uint64_t p1_coprime_count(std::uint64_t N) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= N; ++a)
    for (std::uint64_t b = 1; b <= N; ++b)
      if (std::gcd(a, b) == 1) ++c;
  return 2 * c;
}

// Torus points of P^n with max |X_j| <= N: primitive integer vectors with nonzero entries, up to sign.
inline std::uint64_t pn_brute_count(int n, std::int64_t N) {
  std::vector<std::int64_t> x(static_cast<std::size_t>(n + 1), -N);
  std::uint64_t c = 0;
  for (;;) {
    bool nonzero = true;
    std::int64_t g = 0;
    for (auto v : x) {
      nonzero = nonzero && v != 0;
      g = std::gcd(g, v);
    }
    if (nonzero && g == 1) ++c;
    std::size_t i = 0;
    while (i < x.size() && x[i] == N) x[i++] = -N;
    if (i == x.size()) break;
    ++x[i];
  }
  return c / 2;
}

// floor(B^beta) by integer search, for small B.
inline std::int64_t floor_power(std::int64_t B, const Q& beta) {
  // largest N with N^q <= B^p
  const unsigned long p = beta.get_num().get_ui(), q = beta.get_den().get_ui();
  Z rhs;
  mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(B), p);
  std::int64_t N = 0;
  for (;;) {
    Z lhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(N + 1), q);
    if (lhs > rhs) return N;
    ++N;
  }
}

// Inverse of a small rational matrix by Gauss-Jordan; matrix must be invertible.
inline std::vector<std::vector<Q>> inverse(std::vector<std::vector<Q>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Q>> inv(n, std::vector<Q>(n, Q(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Q lead = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= lead;
      inv[c][j] /= lead;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Q f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Per maximal cone: inverse of the matrix whose columns are the cone's rays.
// Row k of the inverse is the dual vector of the k-th ray of the cone.
struct ConeData {
  std::vector<int> rays;
  std::vector<std::vector<Q>> dual;
};

inline std::vector<ConeData> cone_data(const toric::Fan& fan) {
  std::vector<ConeData> out;
  const auto d = static_cast<std::size_t>(fan.dim());
  for (const auto& cone : fan.max_cones()) {
    std::vector<std::vector<Q>> m(d, std::vector<Q>(d));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) m[i][j] = fan.rays()[static_cast<std::size_t>(cone.ray_ids[j])][i];
    out.push_back({cone.ray_ids, inverse(m)});
  }
  return out;
}

// Coordinates of v in the cone's ray basis, in floating point.
inline std::vector<double> cone_coords(const ConeData& c, const std::vector<double>& v) {
  std::vector<double> out;
  for (const auto& row : c.dual) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += row[i].get_d() * v[i];
    out.push_back(s);
  }
  return out;
}

inline std::size_t locate_double(const std::vector<ConeData>& cones, const std::vector<double>& v, double tol = 1e-12) {
  for (std::size_t c = 0; c < cones.size(); ++c) {
    auto co = cone_coords(cones[c], v);
    bool ok = true;
    for (double x : co) ok = ok && x >= -tol;
    if (ok) return c;
  }
  return cones.size();
}

// Exact PL value from ray values at n, using every cone containing n (they must agree).
inline Q pl_value(const toric::Fan& fan, const std::vector<ConeData>& cones, const std::vector<Q>& values,
                  const std::vector<Q>& n) {
  for (const auto& c : cones) {
    std::vector<Q> coords;
    bool inside = true;
    for (const auto& row : c.dual) {
      Q s = 0;
      for (std::size_t i = 0; i < n.size(); ++i) s += row[i] * n[i];
      inside = inside && s >= 0;
      coords.push_back(s);
    }
    if (!inside) continue;
    Q v = 0;
    for (std::size_t k = 0; k < coords.size(); ++k) v += coords[k] * values[static_cast<std::size_t>(c.rays[k])];
    return v;
  }
  (void)fan;
  return Q(-1);
}

inline int valuation(Z n, unsigned long p) {
  int v = 0;
  n = abs(n);
  while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::vector<unsigned long> small_primes_dividing(const std::vector<Q>& x) {
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p < 5000; ++p) {
    bool prime = true;
    for (unsigned long q = 2; q * q <= p && prime; ++q) prime = p % q != 0;
    if (!prime) continue;
    for (const auto& c : x)
      if (mpz_divisible_ui_p(c.get_num().get_mpz_t(), p) || mpz_divisible_ui_p(c.get_den().get_mpz_t(), p)) {
        out.push_back(p);
        break;
      }
  }
  return out;
}

// Multi-height by the definition: local factors p^{phi_e(n_p)} and the archimedean factor
// prod |x_i|^{-m_i} on a cone located in floating point. Coordinates must have prime factors < 5000.
inline std::vector<Q> heights(const toric::Fan& fan, const std::vector<ConeData>& cones, const std::vector<Q>& x) {
  const std::size_t d = x.size(), r = fan.ray_count();
  std::vector<Q> H(r, Q(1));
  for (auto p : small_primes_dividing(x)) {
    std::vector<Q> n(d);
    for (std::size_t i = 0; i < d; ++i) n[i] = valuation(x[i].get_num(), p) - valuation(x[i].get_den(), p);
    for (std::size_t e = 0; e < r; ++e) {
      std::vector<Q> delta(r, Q(0));
      delta[e] = 1;
      Q v = pl_value(fan, cones, delta, n);
      Z pp;
      mpz_ui_pow_ui(pp.get_mpz_t(), p, static_cast<unsigned long>(std::abs(v.get_num().get_si())));
      H[e] *= v >= 0 ? Q(pp) : Q(1) / Q(pp);
    }
  }
  std::vector<double> arch(d);
  for (std::size_t i = 0; i < d; ++i) arch[i] = -std::log(std::abs(x[i].get_d()));
  const auto c = locate_double(cones, arch, 1e-9);
  for (std::size_t e = 0; e < r; ++e) {
    // m = dual vector of e in the archimedean cone, or 0 when e is not a ray of it.
    for (std::size_t k = 0; k < cones[c].rays.size(); ++k) {
      if (static_cast<std::size_t>(cones[c].rays[k]) != e) continue;
      for (std::size_t i = 0; i < d; ++i) {
        long m = cones[c].dual[k][i].get_num().get_si();
        Q ax = abs(x[i]);
        Q f = 1;
        for (long t = 0; t < std::abs(m); ++t) f *= ax;
        H[e] *= m > 0 ? Q(1) / f : f;
      }
    }
  }
  return H;
}

// Torus points with H_e^{q_e} <= B^{p_e}, brute force over fractions with max(|a_i|, b_i) <= box[i].
inline std::uint64_t brute_count(const toric::Fan& fan, std::int64_t B, const std::vector<Q>& beta,
                                 const std::vector<std::int64_t>& box) {
  const auto cones = cone_data(fan);
  const std::size_t d = box.size();
  std::vector<std::vector<Q>> axis(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::int64_t a = -box[i]; a <= box[i]; ++a)
      for (std::int64_t b = 1; b <= box[i]; ++b)
        if (a != 0 && std::gcd(a, b) == 1) axis[i].push_back(Q(a, b));
  std::vector<std::size_t> idx(d, 0);
  std::uint64_t count = 0;
  for (;;) {
    std::vector<Q> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = axis[i][idx[i]];
    auto H = heights(fan, cones, x);
    bool ok = true;
    for (std::size_t e = 0; e < H.size() && ok; ++e) {
      // H^q <= B^p
      Q lhs = 1;
      for (unsigned long t = 0; t < beta[e].get_den().get_ui(); ++t) lhs *= H[e];
      Z rhs;
      mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(B), beta[e].get_num().get_ui());
      ok = lhs <= Q(rhs);
    }
    if (ok) ++count;
    std::size_t i = 0;
    while (i < d && idx[i] + 1 == axis[i].size()) idx[i++] = 0;
    if (i == d) break;
    ++idx[i];
  }
  return count;
}

// phi_s(n) for real ray values s, located in floating point.
inline double pl_real(const std::vector<ConeData>& cones, const std::vector<double>& s, const std::vector<double>& n) {
  const auto c = locate_double(cones, n, 1e-9);
  auto co = cone_coords(cones[c], n);
  double v = 0;
  for (std::size_t k = 0; k < co.size(); ++k) v += co[k] * s[static_cast<std::size_t>(cones[c].rays[k])];
  return v;
}

inline double lattice_sum(const toric::Fan& fan, const std::vector<double>& s, unsigned p, int R) {
  const auto cones = cone_data(fan);
  const auto d = static_cast<std::size_t>(fan.dim());
  std::vector<int> n(d, -R);
  double total = 0;
  for (;;) {
    std::vector<double> v(n.begin(), n.end());
    total += std::pow(static_cast<double>(p), -pl_real(cones, s, v));
    std::size_t i = 0;
    while (i < d && n[i] == R) n[i++] = -R;
    if (i == d) break;
    ++n[i];
  }
  return total;
}

// 20-point Gauss-Legendre on [a, b] split into `panels` pieces.
template <class F>
auto gauss_legendre(F f, double a, double b, int panels) {
  static const double x[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195, 0.5108670019508271,
                               0.6360536807265150, 0.7463319064601508, 0.8391169718222188, 0.9122344282513259,
                               0.9639719272779138, 0.9931285991850949};
  static const double w[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820, 0.1316886384491766,
                               0.1181945319615184, 0.1019301198172404, 0.0832767415767048, 0.0626720483341091,
                               0.0406014298003869, 0.0176140071391521};
  decltype(f(a)) total{};
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h, mid = lo + h / 2;
    for (int j = 0; j < 10; ++j) {
      total += w[j] * (h / 2) * (f(mid - h / 2 * x[j]) + f(mid + h / 2 * x[j]));
    }
  }
  return total;
}

// Integral over R^d of exp(-phi_s(n) - i<m, n>) dn. In polar form the radial integral is
// (d-1)! / c(theta)^d with c = phi_s(theta) + i<m, theta>; d = 1 is a two-point sum and
// d = 2 a quadrature over the circle split at the ray directions.
inline std::complex<double> arch_quadrature(const toric::Fan& fan, const std::vector<double>& s,
                                            const std::vector<double>& m) {
  const auto cones = cone_data(fan);
  auto c_of = [&](const std::vector<double>& dir) {
    double mn = 0;
    for (std::size_t i = 0; i < dir.size(); ++i) mn += m[i] * dir[i];
    return std::complex<double>(pl_real(cones, s, dir), mn);
  };
  if (fan.dim() == 1) return 1.0 / c_of({1.0}) + 1.0 / c_of({-1.0});
  std::vector<double> angles;
  for (const auto& r : fan.rays()) {
    double t = std::atan2(static_cast<double>(r[1]), static_cast<double>(r[0]));
    angles.push_back(t < 0 ? t + 2 * M_PI : t);
  }
  std::sort(angles.begin(), angles.end());
  angles.push_back(angles.front() + 2 * M_PI);
  std::complex<double> total = 0;
  for (std::size_t k = 0; k + 1 < angles.size(); ++k)
    total += gauss_legendre(
        [&](double t) {
          auto c = c_of({std::cos(t), std::sin(t)});
          return 1.0 / (c * c);
        },
        angles[k], angles[k + 1], 64);
  return total;
}

// Monte-Carlo estimate of the integral of exp(-<y, x>) over {y : <y, g> >= 0 for all generators g}
// in dimension 2, sampling y = (r cos t, r sin t) with t uniform and r exponential.
inline double xfun_monte_carlo(const std::vector<std::vector<double>>& gens, const std::vector<double>& x,
                               std::size_t samples, std::uint64_t seed, double rate = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  std::exponential_distribution<double> radius(rate);
  double sum = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = angle(rng), r = radius(rng);
    const double y0 = r * std::cos(t), y1 = r * std::sin(t);
    bool inside = true;
    for (const auto& g : gens) inside = inside && y0 * g[0] + y1 * g[1] >= 0;
    if (!inside) continue;
    // density of (t, r) is rate exp(-rate r) / (2 pi); the integrand is exp(-<y,x>) r
    sum += std::exp(-(y0 * x[0] + y1 * x[1]) + rate * r) * r * 2 * M_PI / rate;
  }
  return sum / static_cast<double>(samples);
}

}  // namespace oracle
