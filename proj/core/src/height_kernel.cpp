#include "height_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "toric/error.hpp"

namespace toric::detail {

namespace {

bool fits_u128(const BigInt& z, u128& out) {
  if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 127) return false;
  BigInt hi = z >> 64;
  BigInt lo = z - (hi << 64);
  out = (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
  return true;
}

BigInt big_pow(const BigInt& base, std::uint64_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

Threshold::Threshold(const BigInt& B, const Rational& beta) {
  if (beta <= 0) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  if (!beta.get_num().fits_ulong_p() || !beta.get_den().fits_uint_p())
    throw Error(ErrorKind::ResourceLimit, "beta has a huge numerator or denominator");
  q = static_cast<std::uint32_t>(beta.get_den().get_ui());
  bound = big_pow(B, beta.get_num().get_ui());
  bound_fits = fits_u128(bound, bound_small);
}

bool checked_mul(u128& acc, u128 factor) { return !__builtin_mul_overflow(acc, factor, &acc); }

bool checked_pow_mul(u128& acc, std::uint64_t base, std::uint64_t exponent) {
  for (std::uint64_t k = 0; k < exponent; ++k)
    if (!checked_mul(acc, base)) return false;
  return true;
}

bool height_within(std::span<const PrimeExponent> exps, const Threshold& t) {
  u128 num = 1, den = 1;
  bool ok = true;
  for (const auto& pe : exps) {
    if (pe.exponent > 0) ok = ok && checked_pow_mul(num, pe.prime, static_cast<std::uint64_t>(pe.exponent));
    else ok = ok && checked_pow_mul(den, pe.prime, static_cast<std::uint64_t>(-pe.exponent));
    if (!ok) break;
  }
  if (ok && t.bound_fits) {
    u128 lhs = num, rhs = den;
    bool fits = true;
    if (t.q != 1) {
      lhs = 1;
      rhs = 1;
      for (std::uint32_t k = 0; k < t.q && fits; ++k) fits = checked_mul(lhs, num) && checked_mul(rhs, den);
    }
    if (fits && checked_mul(rhs, t.bound_small)) return lhs <= rhs;
  }
  // Slow exact path.
  BigInt n = 1, dd = 1;
  for (const auto& pe : exps) {
    if (pe.exponent > 0) n *= big_pow(BigInt(static_cast<unsigned long>(pe.prime)), static_cast<std::uint64_t>(pe.exponent));
    else dd *= big_pow(BigInt(static_cast<unsigned long>(pe.prime)), static_cast<std::uint64_t>(-pe.exponent));
  }
  return big_pow(n, t.q) <= t.bound * big_pow(dd, t.q);
}

Rational height_value(std::span<const PrimeExponent> exps) {
  BigInt n = 1, d = 1;
  for (const auto& pe : exps) {
    BigInt pp = big_pow(BigInt(static_cast<unsigned long>(pe.prime)), static_cast<std::uint64_t>(std::abs(pe.exponent)));
    if (pe.exponent > 0) n *= pp;
    else d *= pp;
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

double log_height(std::span<const PrimeExponent> exps) {
  double s = 0.0;
  for (const auto& pe : exps) s += pe.exponent * std::log(static_cast<double>(pe.prime));
  return s;
}

HeightKernel::HeightKernel(const Fan& fan, const FactorTable& table)
    : dim_(static_cast<std::size_t>(fan.dim())),
      rays_(fan.ray_count()),
      cones_(fan.max_cones()),
      table_(table),
      n_(dim_) {
  dual_.assign(cones_.size() * rays_, nullptr);
  for (std::size_t c = 0; c < cones_.size(); ++c)
    for (std::size_t k = 0; k < cones_[c].ray_ids.size(); ++k)
      dual_[c * rays_ + static_cast<std::size_t>(cones_[c].ray_ids[k])] = &cones_[c].dual_basis[k];
}

bool HeightKernel::monomial_at_most_one(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                        std::span<const std::int64_t> u) const {
  u128 lhs = 1, rhs = 1;
  bool ok = true;
  for (std::size_t i = 0; i < dim_ && ok; ++i) {
    if (u[i] > 0) {
      ok = checked_pow_mul(lhs, a[i], static_cast<std::uint64_t>(u[i])) &&
           checked_pow_mul(rhs, b[i], static_cast<std::uint64_t>(u[i]));
    } else if (u[i] < 0) {
      ok = checked_pow_mul(lhs, b[i], static_cast<std::uint64_t>(-u[i])) &&
           checked_pow_mul(rhs, a[i], static_cast<std::uint64_t>(-u[i]));
    }
  }
  if (ok) return lhs <= rhs;
  BigInt l = 1, r = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    auto k = static_cast<std::uint64_t>(u[i] > 0 ? u[i] : -u[i]);
    BigInt ai(static_cast<unsigned long>(a[i])), bi(static_cast<unsigned long>(b[i]));
    if (u[i] > 0) {
      l *= big_pow(ai, k);
      r *= big_pow(bi, k);
    } else if (u[i] < 0) {
      l *= big_pow(bi, k);
      r *= big_pow(ai, k);
    }
  }
  return l <= r;
}

std::size_t HeightKernel::archimedean_cone(std::span<const std::uint32_t> a,
                                           std::span<const std::uint32_t> b) const {
  for (std::size_t c = 0; c < cones_.size(); ++c) {
    bool inside = true;
    for (const auto& u : cones_[c].dual_basis)
      if (!monomial_at_most_one(a, b, u)) {
        inside = false;
        break;
      }
    if (inside) return c;
  }
  throw InternalError("archimedean vector not located on a validated fan");
}

void HeightKernel::evaluate(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                            std::vector<std::vector<PrimeExponent>>& exps) {
  exps.resize(rays_);
  for (auto& v : exps) v.clear();
  if (dim_ == 0) return;

  entries_.clear();
  for (std::size_t i = 0; i < dim_; ++i) {
    factors_.clear();
    table_.factor(a[i], factors_);
    for (auto [p, v] : factors_) entries_.push_back({p, static_cast<std::uint32_t>(i), v});
    factors_.clear();
    table_.factor(b[i], factors_);
    for (auto [p, v] : factors_) entries_.push_back({p, static_cast<std::uint32_t>(i), -v});
  }
  std::sort(entries_.begin(), entries_.end(), [](const Entry& x, const Entry& y) { return x.prime < y.prime; });

  const std::size_t arch = archimedean_cone(a, b);
  const IntVec* const* arch_dual = &dual_[arch * rays_];

  for (std::size_t start = 0; start < entries_.size();) {
    const std::uint32_t p = entries_[start].prime;
    std::fill(n_.begin(), n_.end(), 0);
    std::size_t end = start;
    while (end < entries_.size() && entries_[end].prime == p) {
      n_[entries_[end].coord] += entries_[end].exponent;
      ++end;
    }
    start = end;

    std::size_t located = cones_.size();
    for (std::size_t c = 0; c < cones_.size() && located == cones_.size(); ++c) {
      bool inside = true;
      for (const auto& u : cones_[c].dual_basis)
        if (dot(u, n_) < 0) {
          inside = false;
          break;
        }
      if (inside) located = c;
    }
    TORIC_ASSERT(located < cones_.size(), "valuation vector not located on a validated fan");
    const IntVec* const* local_dual = &dual_[located * rays_];
    for (std::size_t e = 0; e < rays_; ++e) {
      std::int64_t exponent = 0;
      if (local_dual[e]) exponent += dot(*local_dual[e], n_);
      if (arch_dual[e]) exponent -= dot(*arch_dual[e], n_);
      if (exponent != 0) exps[e].push_back({p, static_cast<std::int32_t>(exponent)});
    }
  }
}

}  // namespace toric::detail
