#pragma once

// Complete regular fans in N = Z^d, their face lattices, standard constructions
// and quotient (star) fans.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "toric/arith.hpp"

namespace toric {

using RayId = int;
using ConeId = std::size_t;

// A maximal cone: sorted ray ids and the integer dual basis, dual_basis[k] pairing with ray_ids[k].
struct Cone {
  std::vector<RayId> ray_ids;
  IntMatrix dual_basis;

  bool contains(RayId e) const;
  // Position of e in ray_ids, or -1.
  int position(RayId e) const;
};

class Fan {
 public:
  // Validates primitivity, smoothness and completeness; throws Error otherwise.
  static Fan build(int dim, std::vector<IntVec> rays, std::vector<std::vector<RayId>> max_cones);

  // The unique 0-dimensional fan: no rays, one empty maximal cone.
  static Fan point();

  int dim() const { return data_->dim; }
  std::size_t ray_count() const { return data_->rays.size(); }
  const std::vector<IntVec>& rays() const { return data_->rays; }
  const IntVec& ray(RayId e) const { return data_->rays.at(static_cast<std::size_t>(e)); }
  const std::vector<Cone>& max_cones() const { return data_->max_cones; }
  // Every cone of the fan as a sorted ray-id set, zero cone first, ordered by (size, lex).
  const std::vector<std::vector<RayId>>& faces() const { return data_->faces; }

  bool is_face(std::span<const RayId> sorted_rays) const;

  // Lowest-index maximal cone whose closure contains n; throws LocationFailure.
  ConeId locate(std::span<const Rational> n) const;
  ConeId locate(std::span<const std::int64_t> n) const;

  // The rays adjacent to e (spanning a 2-dim cone with e), ascending.
  std::vector<RayId> neighbours(RayId e) const;

  friend bool operator==(const Fan& a, const Fan& b);

 private:
  struct Data {
    int dim = 0;
    std::vector<IntVec> rays;
    std::vector<Cone> max_cones;
    std::vector<std::vector<RayId>> faces;
  };
  explicit Fan(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

// Standard constructions.
Fan projective_space(int n);
Fan product(const Fan& a, const Fan& b);
Fan hirzebruch(int a);
// Star subdivision of a maximal cone at the sum of its generators; the new ray is appended.
Fan blowup_at_cone(const Fan& fan, ConeId cone);
// Rays transformed by a unimodular matrix; ray and cone order preserved.
Fan apply_unimodular(const Fan& fan, const IntMatrix& u);

struct StarFan {
  Fan fan;
  RayId centre = 0;
  // source_ray[k]: the ray of the original fan whose image is ray k of the star fan.
  std::vector<RayId> source_ray;
  // Rows 0..d-2 give the projection N -> N / Z e; row d-1 pairs to 1 with e.
  IntMatrix basis_change;
};

StarFan star_fan(const Fan& fan, RayId e);

// Resolves builtin names: p1, p2, p<n>, p(<n>), p1xp1, hirzebruch:<a>.
// Returns false if the name is not a builtin.
bool is_builtin_name(const std::string& name);
Fan builtin_fan(const std::string& name);

}  // namespace toric
