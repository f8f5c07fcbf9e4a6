#pragma once

// Exact heights of rational torus points over Q.
//
// For an integral PL function phi the returned height is
//   prod_p p^{phi(n_p)} * prod_i |x_i|^{-m_i},
// where n_p = (v_p(x_1), ..., v_p(x_d)) and m is the form of phi on the maximal cone
// containing the archimedean vector (-log|x_1|, ..., -log|x_d|). That cone is found
// without logarithms by comparing monomials prod |x_i|^{c_i} against 1.

#include <map>
#include <string_view>
#include <vector>

#include "toric/arith.hpp"
#include "toric/fan.hpp"
#include "toric/piecewise_linear.hpp"

namespace toric {

class TorusPoint {
 public:
  explicit TorusPoint(RatVec coords);
  // Parses "3/2,-1/5".
  static TorusPoint parse(std::string_view text);

  std::size_t dim() const { return coords_.size(); }
  const RatVec& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  // Primes dividing some numerator or denominator, ascending.
  const std::vector<BigInt>& prime_support() const { return support_; }

 private:
  RatVec coords_;
  std::vector<BigInt> support_;
};

using ValuationProfile = std::map<BigInt, IntVec>;
using MultiHeight = std::vector<Rational>;

ValuationProfile valuation_profile(const TorusPoint& x);

// Lowest-index maximal cone containing the archimedean vector of x.
ConeId archimedean_cone(const Fan& fan, const TorusPoint& x);

Rational height_pl(const PLFunction& phi, const TorusPoint& x);

// (H_e(x))_e with H_e = height_pl(phi_e, x).
MultiHeight multi_height(const Fan& fan, const TorusPoint& x);

// x'_i = prod_j x_j^{u_ij}; matches transforming the fan's rays by u.
TorusPoint monomial_transform(const TorusPoint& x, const IntMatrix& u);

Rational pow(const Rational& base, std::int64_t exponent);

}  // namespace toric
