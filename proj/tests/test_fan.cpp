#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "toric/arith.hpp"
#include "toric/fan.hpp"
#include "toric/fan_io.hpp"

using namespace toric;
using testing::error_kind;
using testing::named;

namespace {

IntMatrix random_unimodular(std::size_t d, std::mt19937_64& rng) {
  IntMatrix u(d, IntVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  if (d < 2) {
    u[0][0] = (rng() & 1) ? 1 : -1;
    return u;
  }
  std::uniform_int_distribution<int> pick(0, static_cast<int>(d) - 1), coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    auto i = static_cast<std::size_t>(pick(rng)), j = static_cast<std::size_t>(pick(rng));
    if (i == j) continue;
    const int c = coef(rng);
    for (std::size_t k = 0; k < d; ++k) u[i][k] += c * u[j][k];
  }
  return u;
}

std::set<IntVec> ray_set(const Fan& f) { return {f.rays().begin(), f.rays().end()}; }

}  // namespace

TEST_CASE("build: smallest complete fan in dimension 1") {
  Fan f = Fan::build(1, {{1}, {-1}}, {{0}, {1}});
  CHECK(f.dim() == 1);
  CHECK(f.max_cones().size() == 2);
}

TEST_CASE("build: P2 face lattice has seven cones") {
  Fan f = Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(f.faces().size() == 7);
  CHECK(f.faces().front().empty());
}

TEST_CASE("build: rejected inputs name the violated invariant") {
  CHECK(error_kind([] { Fan::build(2, {{1, 0}, {0, 1}}, {{0, 1}}); }) == ErrorKind::NotComplete);
  CHECK(error_kind([] { Fan::build(1, {{2}, {-1}}, {{0}, {1}}); }) == ErrorKind::NotPrimitive);
  CHECK(error_kind([] { Fan::build(2, {{1, 0}, {1, 2}, {-1, -1}, {0, -1}, {-1, 0}}, {{0, 1}, {1, 2}, {2, 4}, {3, 4}, {0, 3}}); }) ==
        ErrorKind::NotSmooth);
  CHECK(error_kind([] { Fan::build(1, {{1}, {-1}}, {{0}, {2}}); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0}, {0, 2}, {1, 2}}); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { Fan::build(1, {{1}, {1}, {-1}}, {{0}, {2}}); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { Fan::build(0, {}, {}); }) == ErrorKind::Malformed);
}

TEST_CASE("standard constructions") {
  Fan p2 = projective_space(2);
  CHECK(p2.ray_count() == 3);
  CHECK(p2.max_cones().size() == 3);

  Fan h1 = hirzebruch(1);
  CHECK(ray_set(h1) == std::set<IntVec>{{1, 0}, {0, 1}, {-1, 1}, {0, -1}});
  for (const auto& c : h1.max_cones()) {
    IntMatrix m{h1.ray(c.ray_ids[0]), h1.ray(c.ray_ids[1])};
    CHECK(abs(determinant(m)) == 1);
  }

  Fan b = blowup_at_cone(p2, 0);
  CHECK(b.ray_count() == 4);
  CHECK(b.max_cones().size() == 4);
  CHECK(ray_set(b).count(IntVec{1, 1}) == 1);
}

TEST_CASE("star fans") {
  const std::set<IntVec> p1_rays{{1}, {-1}};
  Fan p2 = projective_space(2);
  for (RayId e = 0; e < 3; ++e) {
    StarFan s = star_fan(p2, e);
    CHECK(s.fan.dim() == 1);
    CHECK(ray_set(s.fan) == p1_rays);
    CHECK(s.source_ray.size() == 2);
  }
  Fan q = builtin_fan("p1xp1");
  RayId first = 0;
  while (q.ray(first) != IntVec{1, 0}) ++first;
  CHECK(ray_set(star_fan(q, first).fan) == p1_rays);

  StarFan pt = star_fan(projective_space(1), 0);
  CHECK(pt.fan.dim() == 0);
  CHECK(pt.fan.ray_count() == 0);
}

TEST_CASE("locate") {
  Fan p2 = projective_space(2);
  auto cone_of = [&](IntVec n) { return p2.max_cones()[p2.locate(std::span<const std::int64_t>(n))].ray_ids; };
  CHECK(cone_of({2, 1}) == std::vector<RayId>{0, 1});
  CHECK(cone_of({-1, -2}) == std::vector<RayId>{0, 2});
  for (const auto& name : testing::builtin_names()) {
    Fan f = named(name);
    IntVec zero(static_cast<std::size_t>(f.dim()), 0);
    CHECK(f.locate(std::span<const std::int64_t>(zero)) == 0);
  }
  RatVec half{Rational(1, 2), Rational(-3, 7)};
  ConeId c = p2.locate(std::span<const Rational>(half));
  CHECK(p2.max_cones()[c].ray_ids == std::vector<RayId>{0, 2});
}

TEST_CASE("dual bases pair to the identity on every builtin") {
  for (const auto& name : testing::builtin_names()) {
    CAPTURE(name);
    Fan f = named(name);
    for (const auto& c : f.max_cones()) {
      REQUIRE(c.ray_ids.size() == static_cast<std::size_t>(f.dim()));
      for (std::size_t k = 0; k < c.ray_ids.size(); ++k)
        for (std::size_t l = 0; l < c.ray_ids.size(); ++l)
          CHECK(dot(c.dual_basis[k], f.ray(c.ray_ids[l])) == (k == l ? 1 : 0));
    }
  }
}

TEST_CASE("completeness witnesses on every builtin") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
  for (const auto& name : testing::builtin_names()) {
    CAPTURE(name);
    Fan f = named(name);
    for (int k = 0; k < 1000; ++k) {
      IntVec n(static_cast<std::size_t>(f.dim()));
      for (auto& x : n) x = coord(rng);
      ConeId c = f.locate(std::span<const std::int64_t>(n));
      for (const auto& u : f.max_cones()[c].dual_basis) CHECK(dot(u, n) >= 0);
    }
    // every ridge lies in exactly two maximal cones
    std::map<std::vector<RayId>, int> ridges;
    for (const auto& c : f.max_cones())
      for (std::size_t drop = 0; drop < c.ray_ids.size(); ++drop) {
        std::vector<RayId> r = c.ray_ids;
        r.erase(r.begin() + static_cast<long>(drop));
        ++ridges[r];
      }
    for (const auto& [r, n] : ridges) CHECK(n == 2);
  }
}

TEST_CASE("star fans of builtins validate") {
  for (const auto& name : testing::builtin_names()) {
    Fan f = named(name);
    for (RayId e = 0; e < static_cast<RayId>(f.ray_count()); ++e) {
      StarFan s = star_fan(f, e);
      CHECK(s.fan.dim() == f.dim() - 1);
      if (s.fan.dim() > 0) CHECK(Fan::build(s.fan.dim(), s.fan.rays(), [&] {
                             std::vector<std::vector<RayId>> cones;
                             for (const auto& c : s.fan.max_cones()) cones.push_back(c.ray_ids);
                             return cones;
                           }()) == s.fan);
      CHECK(s.fan.ray_count() == f.neighbours(e).size());
    }
  }
}

TEST_CASE("product fan sizes") {
  Fan a = projective_space(2), b = hirzebruch(2);
  Fan p = product(a, b);
  CHECK(p.dim() == 4);
  CHECK(p.ray_count() == a.ray_count() + b.ray_count());
  CHECK(p.max_cones().size() == a.max_cones().size() * b.max_cones().size());
}

TEST_CASE("unimodular images validate with isomorphic face lattices") {
  std::mt19937_64 rng(11);
  for (const auto& name : testing::builtin_names()) {
    Fan f = named(name);
    for (int k = 0; k < 5; ++k) {
      IntMatrix u = random_unimodular(static_cast<std::size_t>(f.dim()), rng);
      Fan g = apply_unimodular(f, u);
      CHECK(g.faces() == f.faces());
      CHECK(g.max_cones().size() == f.max_cones().size());
    }
  }
}

TEST_CASE("fan JSON round trip and sources") {
  for (const auto& name : testing::builtin_names()) {
    Fan f = named(name);
    CHECK(fan_from_json(fan_to_json(f)) == f);
  }
  std::istringstream in(fan_to_json(projective_space(2)));
  CHECK(load_fan("-", in) == projective_space(2));
  std::istringstream none;
  CHECK(load_fan("blowup:p2:0", none) == blowup_at_cone(projective_space(2), 0));
  CHECK(load_fan("p(3)", none) == projective_space(3));
  CHECK(error_kind([] { fan_from_json("{\"dim\": 1"); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { fan_from_json("{\"dim\": 1, \"rays\": \"x\", \"max_cones\": []}"); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { fan_from_json("[1, 2]"); }) == ErrorKind::Malformed);
}
