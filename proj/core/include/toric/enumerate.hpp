#pragma once

// Exact counting of torus points under simultaneous bounds H_e(x) <= B^{beta_e},
// and of boundary strata through iterated star fans.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "toric/arith.hpp"
#include "toric/fan.hpp"

namespace toric {

struct BoundSpec {
  BigInt B = 1;
  RatVec beta;  // one positive rational per ray

  void validate(const Fan& fan) const;
};

struct CountRecord {
  BigInt B;
  std::uint64_t torus_count = 0;
  // Keyed by the cone (sorted ray ids) whose orbit closure is the stratum.
  std::map<std::vector<RayId>, std::uint64_t> stratum_counts;
  std::vector<BigInt> coordinate_bounds;
  double elapsed_seconds = 0.0;

  std::uint64_t boundary_total() const;
};

struct CountOptions {
  unsigned jobs = 1;
};

// N_i with max(|num x_i|, den x_i) <= N_i for every point inside the bounds.
std::vector<BigInt> coordinate_bounds(const Fan& fan, const BoundSpec& spec);

CountRecord count_torus(const Fan& fan, const BoundSpec& spec, const CountOptions& options = {});

// count_torus plus every boundary stratum, each counted on its own star fan with the
// bounds of the surviving rays.
CountRecord count_boundary(const Fan& fan, const BoundSpec& spec, const CountOptions& options = {});

// Closed-form count for P^n (all heights equal max|X_j|) and P1 x P1 (factorwise);
// nullopt for any other fan.
std::optional<BigInt> closed_form_count(const Fan& fan, const BoundSpec& spec);

}  // namespace toric
