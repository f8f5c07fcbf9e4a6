#pragma once

// Fast exact multi-height evaluation for enumeration. Heights depend only on |x_i|,
// so the kernel works with positive numerators and denominators and the caller
// accounts for the 2^d sign choices.
//
// Every H_e is a product of prime powers: with sigma_p the cone of the valuation
// vector n_p and sigma_inf the archimedean cone,
//   v_p(H_e) = [e in sigma_p] <u_e^{sigma_p}, n_p> - [e in sigma_inf] <u_e^{sigma_inf}, n_p>,
// because |x_i| = prod_p p^{(n_p)_i}.

#include <cstdint>
#include <algorithm>
#include <functional>
#include <numeric>
#include <span>
#include <thread>
#include <vector>

#include "toric/arith.hpp"
#include "toric/fan.hpp"

namespace toric::detail {

using u128 = unsigned __int128;

struct PrimeExponent {
  std::uint32_t prime;
  std::int32_t exponent;
};

// B^p compared against H^q for H a product of prime powers.
struct Threshold {
  std::uint32_t q = 1;
  BigInt bound;           // B^p
  bool bound_fits = false;
  u128 bound_small = 0;

  Threshold() = default;
  Threshold(const BigInt& B, const Rational& beta);
};

bool checked_mul(u128& acc, u128 factor);
bool checked_pow_mul(u128& acc, std::uint64_t base, std::uint64_t exponent);

// Exact test prod p^E <= threshold^(1/q), i.e. H^q <= B^p.
bool height_within(std::span<const PrimeExponent> exps, const Threshold& t);
Rational height_value(std::span<const PrimeExponent> exps);
double log_height(std::span<const PrimeExponent> exps);

class HeightKernel {
 public:
  HeightKernel(const Fan& fan, const FactorTable& table);
  HeightKernel(const HeightKernel&) = delete;
  HeightKernel& operator=(const HeightKernel&) = delete;
  HeightKernel(HeightKernel&&) = default;

  std::size_t dim() const { return dim_; }
  std::size_t rays() const { return rays_; }

  // |x_i| = a[i] / b[i] (reduced, positive). Fills exps[e] with the nonzero prime exponents of H_e.
  void evaluate(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                std::vector<std::vector<PrimeExponent>>& exps);

 private:
  std::size_t archimedean_cone(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) const;
  bool monomial_at_most_one(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                            std::span<const std::int64_t> u) const;

  std::size_t dim_, rays_;
  std::vector<Cone> cones_;
  // dual_[c * rays_ + e]: dual vector of e in cone c, or nullptr when e is not in c.
  std::vector<const IntVec*> dual_;
  const FactorTable& table_;

  struct Entry {
    std::uint32_t prime;
    std::uint32_t coord;
    std::int32_t exponent;
  };
  std::vector<Entry> entries_;
  std::vector<std::pair<std::uint32_t, int>> factors_;
  IntVec n_;
};

// Visits every tuple of positive reduced fractions a_i/b_i with a_i, b_i <= box[i].
// Work is split over `jobs` workers by the first coordinate's denominator; each
// worker gets its own state from make_worker and the states are returned in worker order.
template <class Worker>
std::vector<Worker> run_box(std::span<const std::uint32_t> box, unsigned jobs,
                            const std::function<Worker()>& make_worker) {
  const std::size_t d = box.size();
  jobs = std::max(1u, jobs);
  std::vector<Worker> workers;
  for (unsigned w = 0; w < jobs; ++w) workers.push_back(make_worker());

  auto body = [&](unsigned w) {
    Worker& worker = workers[w];
    if (d == 0) {
      if (w == 0) worker.visit(std::span<const std::uint32_t>(), std::span<const std::uint32_t>());
      return;
    }
    std::vector<std::uint32_t> a(d, 1), b(d, 1);
    // Odometer over (b_i, a_i); coordinate 0 steps its denominator by `jobs`.
    auto valid = [&](std::size_t i) { return std::gcd(a[i], b[i]) == 1u; };
    auto advance = [&](std::size_t i) -> bool {
      // Moves coordinate i to its next coprime pair; false when exhausted.
      for (;;) {
        if (a[i] < box[i]) {
          ++a[i];
        } else {
          a[i] = 1;
          b[i] += (i == 0 ? jobs : 1);
          if (b[i] > box[i]) return false;
        }
        if (valid(i)) return true;
      }
    };
    b[0] = 1 + w;
    if (b[0] > box[0]) return;
    a[0] = 1;
    if (!valid(0) && !advance(0)) return;
    for (std::size_t i = 1; i < d; ++i) {
      a[i] = 1;
      b[i] = 1;
    }
    for (;;) {
      worker.visit(std::span<const std::uint32_t>(a), std::span<const std::uint32_t>(b));
      std::size_t i = d;
      bool carried = true;
      while (carried && i > 0) {
        --i;
        if (advance(i)) {
          carried = false;
        } else if (i == 0) {
          return;
        } else {
          a[i] = 1;
          b[i] = 1;
        }
      }
    }
  };

  if (jobs == 1) {
    body(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(body, w);
  }
  return workers;
}

}  // namespace toric::detail
