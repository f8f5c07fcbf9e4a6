#pragma once

// Exact integer and rational helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toric {

using BigInt = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rational>;
using IntMatrix = std::vector<IntVec>;  // row-major
using RatMatrix = std::vector<RatVec>;

// Accepts "7", "-3/4", "2.5" (exact decimal); throws Error(InvalidArgument).
Rational parse_rational(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text, char sep = ',');
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

std::int64_t to_int64(const BigInt& z);  // throws ResourceLimit if it does not fit

std::int64_t gcd_of(std::span<const std::int64_t> v);
bool is_primitive(std::span<const std::int64_t> v);

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
Rational dot(std::span<const std::int64_t> a, std::span<const Rational> b);

BigInt determinant(const IntMatrix& square);
std::size_t rank(const RatMatrix& m);

// Solves A x = b for square nonsingular A; nullopt when singular.
std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b);

// Inverse of an integer matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& square);

// For primitive f, a unimodular U with U f equal to the last standard basis vector,
// built by extended-gcd row reduction of f.
IntMatrix unimodular_completion(std::span<const std::int64_t> f);

IntMatrix transpose(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVec apply(const IntMatrix& a, std::span<const std::int64_t> v);

// floor(base^(r)) for base >= 1 and rational r >= 0.
BigInt floor_power(const BigInt& base, const Rational& exponent);

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

struct PrimePower {
  BigInt prime;
  int exponent;
};
// Prime factorization of |n|, n != 0, ascending primes. Trial division then Pollard-Brent rho.
std::vector<PrimePower> factorize(const BigInt& n);

// Smallest-prime-factor table for 0..limit (entries 0 and 1 are 0).
class FactorTable {
 public:
  explicit FactorTable(std::uint32_t limit);

  std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
  // Appends (prime, exponent) pairs of n (1 <= n <= limit) in ascending prime order.
  void factor(std::uint32_t n, std::vector<std::pair<std::uint32_t, int>>& out) const;

 private:
  std::vector<std::uint32_t> spf_;
};

}  // namespace toric
