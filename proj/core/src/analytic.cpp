#include "toric/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <set>

#include "height_kernel.hpp"
#include "toric/error.hpp"

namespace toric {

// ---------------------------------------------------------------------------
// Q polynomial

QPolynomial::QPolynomial(std::size_t variables, std::map<Monomial, std::int64_t> terms)
    : variables_(variables) {
  for (auto& [m, c] : terms)
    if (c != 0) terms_.emplace(m, c);
}

std::int64_t QPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

Complex QPolynomial::evaluate(std::span<const Complex> u) const {
  Complex total = 0.0;
  for (const auto& [m, c] : terms_) {
    Complex term = static_cast<double>(c);
    for (auto e : m) term *= u[static_cast<std::size_t>(e)];
    total += term;
  }
  return total;
}

double QPolynomial::evaluate(std::span<const double> u) const {
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = static_cast<double>(c);
    for (auto e : m) term *= u[static_cast<std::size_t>(e)];
    total += term;
  }
  return total;
}

std::vector<std::int64_t> QPolynomial::diagonal() const {
  std::vector<std::int64_t> out(variables_ + 1, 0);
  for (const auto& [m, c] : terms_) out[m.size()] += c;
  return out;
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  std::map<QPolynomial::Monomial, std::int64_t> terms;
  const auto shift = static_cast<RayId>(a.variables());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      QPolynomial::Monomial m = ma;
      for (auto e : mb) m.push_back(e + shift);
      terms[m] += ca * cb;
    }
  return QPolynomial(a.variables() + b.variables(), std::move(terms));
}

std::string QPolynomial::to_string() const {
  std::vector<std::pair<Monomial, std::int64_t>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& x, const auto& y) { return x.first.size() < y.first.size(); });
  if (sorted.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const auto& [m, c] = sorted[k];
    std::string body;
    for (std::size_t j = 0; j < m.size(); ++j) body += (j ? "*u" : "u") + std::to_string(m[j] + 1);
    const std::int64_t mag = c < 0 ? -c : c;
    std::string factor = m.empty() ? std::to_string(mag) : (mag == 1 ? body : std::to_string(mag) + "*" + body);
    if (k == 0) out = (c < 0 ? "-" : "") + factor;
    else out += (c < 0 ? " - " : " + ") + factor;
  }
  return out;
}

QPolynomial q_polynomial(const Fan& fan) {
  const std::size_t n = fan.ray_count();
  if (n > 24) throw Error(ErrorKind::ResourceLimit, "too many rays to expand the Q polynomial");
  const std::uint32_t all = (n == 0) ? 0u : ((1u << n) - 1u);
  std::vector<std::int64_t> coeff(std::size_t{1} << n, 0);
  for (const auto& face : fan.faces()) {
    std::uint32_t mask = 0;
    for (auto e : face) mask |= 1u << e;
    const std::uint32_t rest = all & ~mask;
    // prod_{e in face} u_e * prod_{e in rest} (1 - u_e)
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      coeff[mask | sub] += (std::popcount(sub) % 2 == 0) ? 1 : -1;
      if (sub == 0) break;
    }
  }
  std::map<QPolynomial::Monomial, std::int64_t> terms;
  for (std::uint32_t mask = 0; mask < coeff.size(); ++mask) {
    if (coeff[mask] == 0) continue;
    QPolynomial::Monomial m;
    for (std::size_t e = 0; e < n; ++e)
      if (mask & (1u << e)) m.push_back(static_cast<RayId>(e));
    terms.emplace(std::move(m), coeff[mask]);
  }
  return QPolynomial(n, std::move(terms));
}

// ---------------------------------------------------------------------------
// Local and global transforms

namespace {

void require_positive_real_part(std::span<const Complex> s, double lower, const char* what) {
  for (const auto& z : s)
    if (!(z.real() > lower))
      throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs Re s_e > " + std::to_string(lower));
}

void check_size(const Fan& fan, std::span<const Complex> s) {
  if (s.size() != fan.ray_count()) throw Error(ErrorKind::DimensionMismatch, "one s value per ray expected");
}

Complex local_factor_from_logp(const QPolynomial& q, std::span<const Complex> s, double log_p,
                               std::vector<Complex>& u) {
  u.resize(s.size());
  Complex denominator = 1.0;
  for (std::size_t e = 0; e < s.size(); ++e) {
    u[e] = std::exp(-s[e] * log_p);
    Complex one_minus = 1.0 - u[e];
    if (std::abs(one_minus) < 1e-14) throw Error(ErrorKind::PoleAtInput, "p^{-s_e} = 1");
    denominator *= one_minus;
  }
  return q.evaluate(std::span<const Complex>(u)) / denominator;
}

}  // namespace

Complex local_factor(const Fan& fan, const QPolynomial& q, std::span<const Complex> s, std::uint64_t p) {
  check_size(fan, s);
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "p must be a prime");
  std::vector<Complex> u;
  return local_factor_from_logp(q, s, std::log(static_cast<double>(p)), u);
}

Complex local_factor(const Fan& fan, std::span<const Complex> s, std::uint64_t p) {
  return local_factor(fan, q_polynomial(fan), s, p);
}

Complex local_lattice_sum(const Fan& fan, std::span<const Complex> s, std::uint64_t p, int R) {
  check_size(fan, s);
  if (R < 0) throw Error(ErrorKind::InvalidArgument, "R must be nonnegative");
  const auto d = static_cast<std::size_t>(fan.dim());
  const double side = 2.0 * R + 1.0;
  if (std::pow(side, static_cast<double>(d)) > 5e7) throw Error(ErrorKind::ResourceLimit, "lattice box too large");
  const double log_p = std::log(static_cast<double>(p));
  IntVec n(d, -R);
  Complex total = 0.0;
  for (;;) {
    const auto& cone = fan.max_cones()[fan.locate(std::span<const std::int64_t>(n))];
    Complex phi = 0.0;
    for (std::size_t k = 0; k < cone.ray_ids.size(); ++k)
      phi += s[static_cast<std::size_t>(cone.ray_ids[k])] * static_cast<double>(dot(cone.dual_basis[k], n));
    total += std::exp(-phi * log_p);
    std::size_t i = 0;
    while (i < d && n[i] == R) n[i++] = -R;
    if (i == d) break;
    ++n[i];
  }
  return total;
}

Complex arch_transform(const Fan& fan, std::span<const Complex> s, std::span<const double> m) {
  check_size(fan, s);
  if (m.size() != static_cast<std::size_t>(fan.dim())) throw Error(ErrorKind::DimensionMismatch, "m has wrong length");
  std::vector<Complex> shifted(s.size());
  for (std::size_t e = 0; e < s.size(); ++e) {
    double pairing = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) pairing += m[i] * static_cast<double>(fan.rays()[e][i]);
    shifted[e] = s[e] + Complex(0.0, pairing);
    if (shifted[e] == Complex(0.0, 0.0)) throw Error(ErrorKind::PoleAtInput, "s_e + i<m,e> = 0");
  }
  Complex total = 0.0;
  for (const auto& cone : fan.max_cones()) {
    Complex term = 1.0;
    for (auto e : cone.ray_ids) term /= shifted[static_cast<std::size_t>(e)];
    total += term;
  }
  return total;
}

Complex global_transform(const Fan& fan, std::span<const Complex> s, std::uint32_t prime_cutoff) {
  check_size(fan, s);
  require_positive_real_part(s, 1.0, "global_transform");
  const QPolynomial q = q_polynomial(fan);
  std::vector<double> zero(static_cast<std::size_t>(fan.dim()), 0.0);
  Complex product = arch_transform(fan, s, zero);
  std::vector<Complex> u;
  for (auto p : primes_up_to(prime_cutoff)) product *= local_factor_from_logp(q, s, std::log(double(p)), u);
  return product;
}

double singular_constant(const Fan& fan, std::uint32_t prime_cutoff) {
  if (prime_cutoff < 2) throw Error(ErrorKind::InvalidArgument, "prime cutoff must be at least 2");
  const auto diag = q_polynomial(fan).diagonal();
  long double log_product = 0.0L;
  for (auto p : primes_up_to(prime_cutoff)) {
    const long double t = 1.0L / p;
    long double value = 0.0L, power = 1.0L;
    for (auto c : diag) {
      value += c * power;
      power *= t;
    }
    log_product += std::log(value);
  }
  return static_cast<double>(static_cast<long double>(fan.max_cones().size()) * std::exp(log_product));
}

// ---------------------------------------------------------------------------
// Polyhedral cones and the X-function

namespace {

// A nonzero kernel vector of a (k-1) x k rational matrix of rank k-1.
RatVec kernel_vector(RatMatrix a, std::size_t k) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    Rational lead = a[r][c];
    for (auto& x : a[r]) x /= lead;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < k; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::size_t free_col = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) ++free_col;
  RatVec y(k, Rational(0));
  y[free_col] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) y[pivot_col[i]] = -a[i][free_col];
  return y;
}

RatVec primitive_integer(RatVec v) {
  BigInt l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  BigInt g = 0;
  for (auto& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  return v;
}

Rational rdot(const RatVec& a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::size_t rank_of(const std::vector<RatVec>& all, const std::vector<std::size_t>& ids) {
  RatMatrix m;
  for (auto i : ids) m.push_back(all[i]);
  return m.empty() ? 0 : rank(m);
}

Rational abs_det(const std::vector<RatVec>& vs) {
  const std::size_t n = vs.size();
  RatMatrix a(vs.begin(), vs.end());
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) std::swap(a[p], a[c]);
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return abs(det);
}

}  // namespace

PolyCone::PolyCone(std::vector<RatVec> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw Error(ErrorKind::Malformed, "cone needs generators");
  dim_ = generators_[0].size();
  if (dim_ == 0) throw Error(ErrorKind::Malformed, "cone lives in a zero-dimensional space");
  for (const auto& g : generators_) {
    if (g.size() != dim_) throw Error(ErrorKind::Malformed, "generators have different lengths");
    if (std::all_of(g.begin(), g.end(), [](const Rational& q) { return q == 0; }))
      throw Error(ErrorKind::Malformed, "zero generator");
  }
  if (rank(RatMatrix(generators_.begin(), generators_.end())) != dim_)
    throw Error(ErrorKind::Malformed, "cone is not full-dimensional");

  // Dual extreme rays: normals of (k-1)-subsets of generators that are nonnegative on all generators.
  std::set<RatVec> rays;
  const std::size_t k = dim_;
  std::vector<std::size_t> idx(k - 1);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == k - 1) {
      RatMatrix sub;
      for (auto i : idx) sub.push_back(generators_[i]);
      if (k > 1 && rank(sub) != k - 1) return;
      RatVec y = k == 1 ? RatVec{Rational(1)} : kernel_vector(sub, k);
      bool pos = false, neg = false;
      for (const auto& g : generators_) {
        Rational v = rdot(y, g);
        if (v > 0) pos = true;
        if (v < 0) neg = true;
      }
      if (pos && neg) return;
      if (neg)
        for (auto& x : y) x = -x;
      rays.insert(primitive_integer(std::move(y)));
      return;
    }
    for (std::size_t i = start; i < generators_.size(); ++i) {
      idx[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  dual_rays_.assign(rays.begin(), rays.end());
  if (dual_rays_.empty() || rank(RatMatrix(dual_rays_.begin(), dual_rays_.end())) != dim_)
    throw Error(ErrorKind::Malformed, "cone is not strictly convex");

  // Pulling triangulation: cone the first ray with a triangulation of every facet avoiding it.
  std::function<std::vector<std::vector<std::size_t>>(const std::vector<std::size_t>&, std::size_t)> triangulate =
      [&](const std::vector<std::size_t>& face, std::size_t r) -> std::vector<std::vector<std::size_t>> {
    if (face.size() == r) return {face};
    const std::size_t apex = face[0];
    std::set<std::vector<std::size_t>> facets;
    for (const auto& g : generators_) {
      if (rdot(dual_rays_[apex], g) <= 0) continue;
      std::vector<std::size_t> facet;
      for (auto v : face)
        if (rdot(dual_rays_[v], g) == 0) facet.push_back(v);
      if (!facet.empty() && rank_of(dual_rays_, facet) == r - 1) facets.insert(facet);
    }
    std::vector<std::vector<std::size_t>> out;
    for (const auto& facet : facets)
      for (auto simplex : triangulate(facet, r - 1)) {
        simplex.insert(simplex.begin(), apex);
        out.push_back(std::move(simplex));
      }
    return out;
  };
  std::vector<std::size_t> all(dual_rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  triangulation_ = triangulate(all, dim_);
}

bool PolyCone::is_interior(std::span<const Rational> x) const {
  if (x.size() != dim_) return false;
  return std::all_of(dual_rays_.begin(), dual_rays_.end(), [&](const RatVec& v) { return rdot(v, x) > 0; });
}

Rational x_function(const PolyCone& cone, std::span<const Rational> x) {
  if (!cone.is_interior(x)) throw Error(ErrorKind::NotInterior, "x is not interior to the cone");
  Rational total = 0;
  for (const auto& simplex : cone.dual_triangulation()) {
    std::vector<RatVec> vs;
    Rational denom = 1;
    for (auto i : simplex) {
      vs.push_back(cone.dual_rays()[i]);
      denom *= rdot(cone.dual_rays()[i], x);
    }
    total += abs_det(vs) / denom;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Height zeta function and the Poisson check

namespace {

struct ZetaWorker {
  detail::HeightKernel kernel;
  const detail::Threshold* cutoff;
  std::vector<double> s_real;
  std::vector<double> s_imag;
  std::vector<std::vector<detail::PrimeExponent>> exps;
  std::vector<detail::PrimeExponent> total;
  Complex sum = 0.0;

  void visit(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    kernel.evaluate(a, b, exps);
    total.clear();
    for (const auto& v : exps) total.insert(total.end(), v.begin(), v.end());
    std::sort(total.begin(), total.end(), [](auto x, auto y) { return x.prime < y.prime; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < total.size(); ++r) {
      if (w > 0 && total[w - 1].prime == total[r].prime) total[w - 1].exponent += total[r].exponent;
      else total[w++] = total[r];
    }
    total.resize(w);
    if (!detail::height_within(total, *cutoff)) return;
    double re = 0.0, im = 0.0;
    for (std::size_t e = 0; e < exps.size(); ++e) {
      double lh = detail::log_height(exps[e]);
      re -= s_real[e] * lh;
      im -= s_imag[e] * lh;
    }
    sum += std::polar(std::exp(re), im);
  }
};

// Largest exponent lambda with max(|a_i|, b_i) <= H^lambda whenever the anticanonical height is at
// most H. With t_e = log H_e / log H we have t >= 0, sum t_e <= 1 and sum_e t_e e = 0 (product
// formula), and max(|a_i|, b_i) <= prod_e H_e^{k_e} with k_e = max(-<+-e_i^*, e>, 0). The LP
// max k.t over that polytope is attained at a vertex with at most d + 1 nonzero entries.
Rational box_exponent(const Fan& fan, std::size_t i) {
  const auto d = static_cast<std::size_t>(fan.dim());
  const std::size_t n = fan.ray_count();
  std::optional<Rational> best_over_signs;
  for (int sign : {1, -1}) {
    Rational best = 0;
    std::vector<std::size_t> cols(d + 1);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
      if (depth == d + 1) {
        RatMatrix a(d + 1, RatVec(d + 1));
        RatVec rhs(d + 1, Rational(0));
        for (std::size_t c = 0; c < d + 1; ++c) {
          for (std::size_t r = 0; r < d; ++r) a[r][c] = fan.rays()[cols[c]][r];
          a[d][c] = 1;
        }
        rhs[d] = 1;
        auto t = solve(a, rhs);
        if (!t) return;
        Rational value = 0;
        for (std::size_t c = 0; c < d + 1; ++c) {
          if ((*t)[c] < 0) return;
          value += (*t)[c] * std::max<std::int64_t>(-sign * fan.rays()[cols[c]][i], 0);
        }
        best = std::max(best, value);
        return;
      }
      for (std::size_t e = start; e < n; ++e) {
        cols[depth] = e;
        choose(e + 1, depth + 1);
      }
    };
    choose(0, 0);
    if (!best_over_signs || best < *best_over_signs) best_over_signs = best;
  }
  return *best_over_signs;
}

}  // namespace

Complex zeta_direct(const Fan& fan, std::span<const Complex> s, std::uint64_t height_cutoff, unsigned jobs) {
  check_size(fan, s);
  require_positive_real_part(s, 1.0, "zeta_direct");
  if (height_cutoff < 1) throw Error(ErrorKind::InvalidArgument, "height cutoff must be positive");
  if (fan.dim() == 1) {
    // Every complete regular fan in dimension 1 has rays +1 and -1, and both heights of
    // a/b equal h = max(|a|, b), so the anticanonical height is h^2. Points with a given
    // h: 2 for h = 1, else 4 phi(h).
    const BigInt root = floor_power(BigInt(static_cast<unsigned long>(height_cutoff)), Rational(1, 2));
    const auto n = static_cast<std::uint32_t>(root.get_ui());
    if (n > 200'000'000) throw Error(ErrorKind::ResourceLimit, "height cutoff too large");
    std::vector<std::uint32_t> phi(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i) phi[i] = i;
    for (std::uint32_t p = 2; p <= n; ++p)
      if (phi[p] == p)
        for (std::uint32_t j = p; j <= n; j += p) phi[j] -= phi[j] / p;
    const Complex total_s = s[0] + s[1];
    Complex sum = 2.0;
    for (std::uint32_t h = 2; h <= n; ++h) sum += 4.0 * phi[h] * std::exp(-total_s * std::log(double(h)));
    return sum;
  }

  std::vector<std::uint32_t> box;
  for (std::size_t i = 0; i < static_cast<std::size_t>(fan.dim()); ++i) {
    BigInt n = floor_power(BigInt(static_cast<unsigned long>(height_cutoff)), box_exponent(fan, i));
    if (n > (1u << 26)) throw Error(ErrorKind::ResourceLimit, "height cutoff too large to enumerate");
    box.push_back(static_cast<std::uint32_t>(n.get_ui()));
  }
  std::uint32_t limit = 1;
  for (auto v : box) limit = std::max(limit, v);
  const FactorTable table(limit);
  const detail::Threshold cutoff(BigInt(static_cast<unsigned long>(height_cutoff)), Rational(1));
  std::vector<double> re, im;
  for (const auto& z : s) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  auto workers = detail::run_box<ZetaWorker>(box, jobs, [&] {
    return ZetaWorker{detail::HeightKernel(fan, table), &cutoff, re, im, {}, {}, 0.0};
  });
  Complex sum = 0.0;
  for (const auto& w : workers) sum += w.sum;
  return sum * std::ldexp(1.0, fan.dim());
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, std::size_t panels) {
  panels = std::max<std::size_t>(1, panels);
  double total = 0.0;
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = (k + 1 == panels) ? b : lo + width;
    const double flo = f(lo), fhi = f(hi), fmid = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    const double eps = std::max(rel_tol * std::abs(whole), 1e-300);
    total += simpson_step(f, lo, hi, flo, fmid, fhi, whole, eps, 40);
  }
  return total;
}

PoissonResult poisson_check(const Fan& fan, double s1, double s2, double T, std::uint32_t P, std::uint64_t H) {
  if (fan.dim() != 1) throw Error(ErrorKind::InvalidArgument, "the Poisson check is implemented for d = 1");
  if (!(s1 > 1.0 && s2 > 1.0)) throw Error(ErrorKind::InvalidArgument, "the Poisson check needs s_e > 1");
  if (!(T > 0.0) || P < 2 || H < 1) throw Error(ErrorKind::InvalidArgument, "cutoffs must be positive");
  PoissonResult out;
  out.T = T;
  out.P = P;
  out.H = H;
  const std::vector<Complex> s{Complex(s1, 0.0), Complex(s2, 0.0)};
  out.lhs = zeta_direct(fan, s, H).real();

  const QPolynomial q = q_polynomial(fan);
  std::vector<double> log_p;
  for (auto p : primes_up_to(P)) log_p.push_back(std::log(double(p)));
  std::vector<Complex> shifted(2), u;
  auto integrand = [&](double t) {
    // phi + i m with m = t: ray values s_e + i t <1, e>.
    for (std::size_t e = 0; e < 2; ++e)
      shifted[e] = s[e] + Complex(0.0, t * static_cast<double>(fan.rays()[e][0]));
    Complex value = arch_transform(fan, shifted, std::vector<double>{0.0});
    for (double lp : log_p) value *= local_factor_from_logp(q, shifted, lp, u);
    return value.real();
  };
  // The integrand at -t is the conjugate of the one at t.
  const double half = integrate(integrand, 0.0, T, 1e-6, static_cast<std::size_t>(std::ceil(4.0 * T)));
  out.rhs = 2.0 * half / std::numbers::pi;
  out.ratio = out.lhs / out.rhs;
  return out;
}

}  // namespace toric
