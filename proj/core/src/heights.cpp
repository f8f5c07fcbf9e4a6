#include "toric/heights.hpp"

#include <algorithm>
#include <set>

#include "toric/error.hpp"

namespace toric {

TorusPoint::TorusPoint(RatVec coords) : coords_(std::move(coords)) {
  std::set<BigInt> primes;
  for (auto& q : coords_) {
    q.canonicalize();
    if (q == 0) throw Error(ErrorKind::InvalidArgument, "torus points have nonzero coordinates");
    for (const auto& pp : factorize(q.get_num())) primes.insert(pp.prime);
    for (const auto& pp : factorize(q.get_den())) primes.insert(pp.prime);
  }
  support_.assign(primes.begin(), primes.end());
}

TorusPoint TorusPoint::parse(std::string_view text) { return TorusPoint(parse_rational_list(text)); }

namespace {

int valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) return 0;
  BigInt m = abs(n);
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

BigInt ipow(const BigInt& base, std::uint64_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// True iff prod_i |x_i|^{u_i} <= 1.
bool monomial_at_most_one(const TorusPoint& x, std::span<const std::int64_t> u) {
  BigInt lhs = 1, rhs = 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    BigInt a = abs(x[i].get_num());
    const BigInt& b = x[i].get_den();
    auto k = static_cast<std::uint64_t>(u[i] > 0 ? u[i] : -u[i]);
    if (u[i] > 0) {
      lhs *= ipow(a, k);
      rhs *= ipow(b, k);
    } else {
      lhs *= ipow(b, k);
      rhs *= ipow(a, k);
    }
  }
  return lhs <= rhs;
}

// prod_i |x_i|^{-m_i}
Rational inverse_monomial(const TorusPoint& x, std::span<const std::int64_t> m) {
  Rational r = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    r *= pow(Rational(abs(x[i])), -m[i]);
  }
  return r;
}

void check_dim(const Fan& fan, const TorusPoint& x) {
  if (x.dim() != static_cast<std::size_t>(fan.dim()))
    throw Error(ErrorKind::DimensionMismatch, "point dimension does not match fan dimension");
}

}  // namespace

Rational pow(const Rational& base, std::int64_t exponent) {
  if (exponent == 0) return 1;
  if (base == 0 && exponent < 0) throw Error(ErrorKind::InvalidArgument, "zero to a negative power");
  auto k = static_cast<std::uint64_t>(exponent > 0 ? exponent : -exponent);
  Rational r(ipow(base.get_num(), k), ipow(base.get_den(), k));
  r.canonicalize();
  return exponent > 0 ? r : Rational(1) / r;
}

ValuationProfile valuation_profile(const TorusPoint& x) {
  ValuationProfile out;
  for (const auto& p : x.prime_support()) {
    IntVec n(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) n[i] = valuation(x[i].get_num(), p) - valuation(x[i].get_den(), p);
    if (std::any_of(n.begin(), n.end(), [](auto v) { return v != 0; })) out.emplace(p, std::move(n));
  }
  return out;
}

ConeId archimedean_cone(const Fan& fan, const TorusPoint& x) {
  check_dim(fan, x);
  for (ConeId c = 0; c < fan.max_cones().size(); ++c) {
    const auto& cone = fan.max_cones()[c];
    bool inside = std::all_of(cone.dual_basis.begin(), cone.dual_basis.end(),
                              [&](const IntVec& u) { return monomial_at_most_one(x, u); });
    if (inside) return c;
  }
  throw Error(ErrorKind::LocationFailure, "archimedean vector not located");
}

Rational height_pl(const PLFunction& phi, const TorusPoint& x) {
  const Fan& fan = phi.fan();
  check_dim(fan, x);
  if (!phi.is_integral()) throw Error(ErrorKind::NonIntegral, "heights need an integral PL function");
  if (fan.dim() == 0) return 1;
  Rational h = 1;
  for (const auto& [p, n] : valuation_profile(x)) {
    Rational value = phi.evaluate(std::span<const std::int64_t>(n));
    TORIC_ASSERT(value.get_den() == 1, "integral PL function took a non-integral value on N");
    h *= pow(Rational(p), to_int64(value.get_num()));
  }
  h *= inverse_monomial(x, phi.integer_form(archimedean_cone(fan, x)));
  return h;
}

MultiHeight multi_height(const Fan& fan, const TorusPoint& x) {
  check_dim(fan, x);
  MultiHeight h(fan.ray_count(), Rational(1));
  if (fan.dim() == 0) return h;
  for (const auto& [p, n] : valuation_profile(x)) {
    const auto& cone = fan.max_cones()[fan.locate(std::span<const std::int64_t>(n))];
    for (std::size_t k = 0; k < cone.ray_ids.size(); ++k) {
      auto c = dot(cone.dual_basis[k], n);
      if (c != 0) h[static_cast<std::size_t>(cone.ray_ids[k])] *= pow(Rational(p), c);
    }
  }
  const auto& arch = fan.max_cones()[archimedean_cone(fan, x)];
  for (std::size_t k = 0; k < arch.ray_ids.size(); ++k)
    h[static_cast<std::size_t>(arch.ray_ids[k])] *= inverse_monomial(x, arch.dual_basis[k]);
  return h;
}

TorusPoint monomial_transform(const TorusPoint& x, const IntMatrix& u) {
  RatVec out;
  for (const auto& row : u) {
    Rational r = 1;
    for (std::size_t j = 0; j < row.size(); ++j) r *= pow(x[j], row[j]);
    out.push_back(r);
  }
  return TorusPoint(std::move(out));
}

}  // namespace toric
