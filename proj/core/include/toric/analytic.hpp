#pragma once

// Fourier transforms of heights for the trivial character over Q, and the
// numerical diagnostics built on them.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "toric/arith.hpp"
#include "toric/fan.hpp"

namespace toric {

using Complex = std::complex<double>;
using ComplexRayValues = std::vector<Complex>;

// Multilinear integer polynomial in the ray variables u_e. A monomial is a sorted list of ray ids.
class QPolynomial {
 public:
  using Monomial = std::vector<RayId>;

  QPolynomial() = default;
  QPolynomial(std::size_t variables, std::map<Monomial, std::int64_t> terms);

  std::size_t variables() const { return variables_; }
  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  std::int64_t coefficient(const Monomial& m) const;

  Complex evaluate(std::span<const Complex> u) const;
  double evaluate(std::span<const double> u) const;
  // Coefficients of t^k in Q(t, ..., t).
  std::vector<std::int64_t> diagonal() const;

  // Variables of b are renamed u_{e + variables()}.
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

  // "1 - u1*u2*u3": 1-based names, terms by degree then lexicographically.
  std::string to_string() const;

 private:
  std::size_t variables_ = 0;
  std::map<Monomial, std::int64_t> terms_;  // nonzero coefficients only
};

// Q = sum over all cones sigma of prod_{e in sigma} u_e prod_{e not in sigma} (1 - u_e).
QPolynomial q_polynomial(const Fan& fan);

// Q((p^{-s_e})_e) prod_e (1 - p^{-s_e})^{-1}.
Complex local_factor(const Fan& fan, const QPolynomial& q, std::span<const Complex> s, std::uint64_t p);
Complex local_factor(const Fan& fan, std::span<const Complex> s, std::uint64_t p);

// sum over n in Z^d with |n|_inf <= R of p^{-phi_s(n)}, phi_s the PL function with ray values s.
Complex local_lattice_sum(const Fan& fan, std::span<const Complex> s, std::uint64_t p, int R);

// sum over maximal cones of prod_{e in sigma} 1 / (s_e + i <m, e>).
Complex arch_transform(const Fan& fan, std::span<const Complex> s, std::span<const double> m);

// arch_transform(s, 0) times the Euler product over p <= prime_cutoff (no tail bound).
Complex global_transform(const Fan& fan, std::span<const Complex> s, std::uint32_t prime_cutoff);

// (#maximal cones) prod_{p <= P} Q(1/p, ..., 1/p).
double singular_constant(const Fan& fan, std::uint32_t prime_cutoff);

// A strictly convex, full-dimensional polyhedral cone given by generators.
class PolyCone {
 public:
  explicit PolyCone(std::vector<RatVec> generators);

  std::size_t dim() const { return dim_; }
  const std::vector<RatVec>& generators() const { return generators_; }
  // Extreme rays of the dual cone, scaled to primitive integer vectors.
  const std::vector<RatVec>& dual_rays() const { return dual_rays_; }
  // Simplicial cones (indices into dual_rays) triangulating the dual cone.
  const std::vector<std::vector<std::size_t>>& dual_triangulation() const { return triangulation_; }

  bool is_interior(std::span<const Rational> x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<RatVec> generators_;
  std::vector<RatVec> dual_rays_;
  std::vector<std::vector<std::size_t>> triangulation_;
};

// Integral of exp(-<y, x>) over the dual cone: sum_k |det V_k| / prod_j <v_kj, x>.
Rational x_function(const PolyCone& cone, std::span<const Rational> x);

// Partial sum of prod_e H_e(x)^{-s_e} over torus points with anticanonical height <= H.
Complex zeta_direct(const Fan& fan, std::span<const Complex> s, std::uint64_t height_cutoff, unsigned jobs = 1);

struct PoissonResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double T = 0.0;
  std::uint32_t P = 0;
  std::uint64_t H = 0;
};

// Dimension 1: direct sum against (1/pi) int_{-T}^{T} of the transform at (s1 + it, s2 - it).
PoissonResult poisson_check(const Fan& fan, double s1, double s2, double T, std::uint32_t P, std::uint64_t H);

// Adaptive Simpson on [a, b], split into `panels` pieces, each refined to relative tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 std::size_t panels = 1);

}  // namespace toric
