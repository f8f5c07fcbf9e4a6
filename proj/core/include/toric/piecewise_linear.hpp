#pragma once

// Piecewise-linear functions on a fan, keyed by their values on rays, and the
// exact sequence M -> PL(fan) -> Pic.

#include <vector>

#include "toric/arith.hpp"
#include "toric/fan.hpp"

namespace toric {

class PLFunction {
 public:
  // Per-cone linear forms are solved through the dual bases: m_sigma = sum_{e in sigma} phi(e) u_e.
  static PLFunction from_ray_values(const Fan& fan, RatVec values);

  const Fan& fan() const { return fan_; }
  const RatVec& ray_values() const { return values_; }
  const RatVec& cone_form(ConeId c) const { return forms_.at(c); }
  bool is_integral() const { return integral_; }

  Rational evaluate(std::span<const Rational> n) const;
  Rational evaluate(std::span<const std::int64_t> n) const;
  // Integer form on cone c; requires is_integral().
  IntVec integer_form(ConeId c) const;

  friend PLFunction operator+(const PLFunction& a, const PLFunction& b);
  friend PLFunction operator-(const PLFunction& a, const PLFunction& b);
  friend PLFunction operator*(const Rational& k, const PLFunction& a);
  friend bool operator==(const PLFunction& a, const PLFunction& b) { return a.values_ == b.values_; }

 private:
  PLFunction(Fan fan, RatVec values, std::vector<RatVec> forms, bool integral)
      : fan_(std::move(fan)), values_(std::move(values)), forms_(std::move(forms)), integral_(integral) {}

  Fan fan_;
  RatVec values_;
  std::vector<RatVec> forms_;
  bool integral_;
};

inline PLFunction pl_from_ray_values(const Fan& fan, RatVec values) {
  return PLFunction::from_ray_values(fan, std::move(values));
}

// phi_e: ray values delta_{ef}.
PLFunction generator_pl(const Fan& fan, RayId e);
// phi_Sigma: all ray values 1.
PLFunction anticanonical_pl(const Fan& fan);
// The linear function <m, .>.
PLFunction linear_pl(const Fan& fan, std::span<const std::int64_t> m);

struct PicData {
  IntMatrix m_matrix;  // row e is the ray e, so (m_matrix * m)_e = <m, e>
  std::size_t pic_rank = 0;
  std::vector<BigInt> invariant_factors;  // Smith normal form diagonal, length d
};

PicData pic_data(const Fan& fan);
bool is_effective_interior(const PLFunction& phi);

// Smith normal form diagonal of an integer matrix (nonzero entries, ascending divisibility).
std::vector<BigInt> smith_invariants(const IntMatrix& m);

// True when the ray values are <m, e> for some integer m (Pic class zero).
bool in_m_image(const Fan& fan, const RatVec& ray_values);
bool same_pic_class(const PLFunction& a, const PLFunction& b);

struct RestrictedPL {
  StarFan star;
  IntVec shift;  // the integer m with <m, f> = phi(f)
  PLFunction function;
};

// Restriction of an integral phi to the boundary divisor of ray f. Only the Pic class
// of the result is canonical; the representative uses the extended-gcd choice of m.
RestrictedPL restrict_pl(const PLFunction& phi, RayId f);

}  // namespace toric
