#include "toric/fan.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <set>

#include "toric/error.hpp"

namespace toric {

bool Cone::contains(RayId e) const { return std::binary_search(ray_ids.begin(), ray_ids.end(), e); }

int Cone::position(RayId e) const {
  auto it = std::lower_bound(ray_ids.begin(), ray_ids.end(), e);
  if (it == ray_ids.end() || *it != e) return -1;
  return static_cast<int>(it - ray_ids.begin());
}

namespace {

std::string describe(const std::vector<RayId>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + "}";
}

// Completeness witness: generic random vectors lie in the interior of exactly one
// maximal cone, and every vector is located somewhere.
void check_random_location(int dim, const std::vector<Cone>& cones) {
  std::mt19937_64 rng(0x5eedf00dULL);
  std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
  IntVec n(static_cast<std::size_t>(dim));
  for (int trial = 0; trial < 1000; ++trial) {
    for (auto& x : n) x = coord(rng);
    int interior = 0;
    bool located = false;
    bool on_wall = false;
    for (const auto& cone : cones) {
      bool all_nonneg = true, all_pos = true;
      for (const auto& u : cone.dual_basis) {
        auto c = dot(u, n);
        if (c < 0) all_nonneg = false;
        if (c <= 0) all_pos = false;
      }
      if (all_nonneg) located = true;
      if (all_pos) ++interior;
      else if (all_nonneg) on_wall = true;
    }
    if (!located) throw Error(ErrorKind::NotComplete, "random vector not covered by any maximal cone");
    if (!on_wall && interior != 1)
      throw Error(ErrorKind::NotComplete, "maximal cones overlap (a generic vector lies in " +
                                              std::to_string(interior) + " cones)");
  }
}

}  // namespace

Fan Fan::build(int dim, std::vector<IntVec> rays, std::vector<std::vector<RayId>> max_cones) {
  if (dim < 1) throw Error(ErrorKind::Malformed, "dimension must be at least 1");
  const auto d = static_cast<std::size_t>(dim);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != d)
      throw Error(ErrorKind::Malformed, "ray " + std::to_string(i) + " has wrong length");
    if (std::all_of(rays[i].begin(), rays[i].end(), [](auto x) { return x == 0; }))
      throw Error(ErrorKind::NotPrimitive, "ray " + std::to_string(i) + " is zero");
    if (!is_primitive(rays[i])) throw Error(ErrorKind::NotPrimitive, "ray " + std::to_string(i) + " is not primitive");
  }
  {
    std::set<IntVec> seen(rays.begin(), rays.end());
    if (seen.size() != rays.size()) throw Error(ErrorKind::Malformed, "rays are not pairwise distinct");
  }
  if (max_cones.empty()) throw Error(ErrorKind::Malformed, "no maximal cones");

  auto data = std::make_shared<Data>();
  data->dim = dim;
  std::vector<bool> used(rays.size(), false);
  std::set<std::vector<RayId>> seen_cones;
  for (auto& ids : max_cones) {
    std::sort(ids.begin(), ids.end());
    if (ids.size() != d) throw Error(ErrorKind::Malformed, "maximal cone " + describe(ids) + " does not have d rays");
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      throw Error(ErrorKind::Malformed, "maximal cone " + describe(ids) + " repeats a ray");
    for (auto id : ids) {
      if (id < 0 || static_cast<std::size_t>(id) >= rays.size())
        throw Error(ErrorKind::Malformed, "maximal cone " + describe(ids) + " has an invalid ray index");
      used[static_cast<std::size_t>(id)] = true;
    }
    if (!seen_cones.insert(ids).second) throw Error(ErrorKind::Malformed, "duplicate maximal cone " + describe(ids));

    IntMatrix columns(d, IntVec(d));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) columns[i][k] = rays[static_cast<std::size_t>(ids[k])][i];
    BigInt det = determinant(columns);
    if (abs(det) != 1)
      throw Error(ErrorKind::NotSmooth, "maximal cone " + describe(ids) + " has determinant " + det.get_str());
    data->max_cones.push_back(Cone{ids, unimodular_inverse(columns)});
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i]) throw Error(ErrorKind::Malformed, "ray " + std::to_string(i) + " lies in no maximal cone");

  // Facet pairing: each ridge bounds exactly two maximal cones, lying on opposite sides.
  std::map<std::vector<RayId>, std::vector<std::pair<std::size_t, RayId>>> ridges;
  for (std::size_t c = 0; c < data->max_cones.size(); ++c) {
    const auto& ids = data->max_cones[c].ray_ids;
    for (std::size_t drop = 0; drop < d; ++drop) {
      std::vector<RayId> ridge;
      for (std::size_t k = 0; k < d; ++k)
        if (k != drop) ridge.push_back(ids[k]);
      ridges[ridge].emplace_back(c, ids[drop]);
    }
  }
  for (const auto& [ridge, owners] : ridges) {
    if (owners.size() != 2)
      throw Error(ErrorKind::NotComplete, "ridge " + describe(ridge) + " bounds " + std::to_string(owners.size()) +
                                              " maximal cones instead of 2");
    const auto& [c0, opposite0] = owners[0];
    const auto& [c1, opposite1] = owners[1];
    const auto& cone0 = data->max_cones[c0];
    const auto& normal = cone0.dual_basis[static_cast<std::size_t>(cone0.position(opposite0))];
    if (dot(normal, rays[static_cast<std::size_t>(opposite1)]) >= 0)
      throw Error(ErrorKind::NotComplete, "cones across ridge " + describe(ridge) + " overlap");
  }
  check_random_location(dim, data->max_cones);

  std::set<std::vector<RayId>> faces;
  for (const auto& cone : data->max_cones) {
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      std::vector<RayId> f;
      for (std::size_t k = 0; k < d; ++k)
        if (mask & (1u << k)) f.push_back(cone.ray_ids[k]);
      faces.insert(std::move(f));
    }
  }
  data->faces.assign(faces.begin(), faces.end());
  std::stable_sort(data->faces.begin(), data->faces.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  data->rays = std::move(rays);
  return Fan(std::move(data));
}

Fan Fan::point() {
  auto data = std::make_shared<Data>();
  data->dim = 0;
  data->max_cones.push_back(Cone{});
  data->faces.push_back({});
  return Fan(std::move(data));
}

bool Fan::is_face(std::span<const RayId> sorted_rays) const {
  std::vector<RayId> key(sorted_rays.begin(), sorted_rays.end());
  return std::binary_search(data_->faces.begin(), data_->faces.end(), key, [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
}

ConeId Fan::locate(std::span<const Rational> n) const {
  if (n.size() != static_cast<std::size_t>(dim()))
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match fan dimension");
  for (ConeId c = 0; c < data_->max_cones.size(); ++c) {
    const auto& cone = data_->max_cones[c];
    bool inside = std::all_of(cone.dual_basis.begin(), cone.dual_basis.end(),
                              [&](const IntVec& u) { return dot(u, n) >= 0; });
    if (inside) return c;
  }
  throw Error(ErrorKind::LocationFailure, "no maximal cone contains the vector");
}

ConeId Fan::locate(std::span<const std::int64_t> n) const {
  if (n.size() != static_cast<std::size_t>(dim()))
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match fan dimension");
  for (ConeId c = 0; c < data_->max_cones.size(); ++c) {
    const auto& cone = data_->max_cones[c];
    bool inside = std::all_of(cone.dual_basis.begin(), cone.dual_basis.end(),
                              [&](const IntVec& u) { return dot(u, n) >= 0; });
    if (inside) return c;
  }
  throw Error(ErrorKind::LocationFailure, "no maximal cone contains the vector");
}

std::vector<RayId> Fan::neighbours(RayId e) const {
  std::set<RayId> out;
  for (const auto& cone : data_->max_cones) {
    if (!cone.contains(e)) continue;
    for (auto f : cone.ray_ids)
      if (f != e) out.insert(f);
  }
  return {out.begin(), out.end()};
}

bool operator==(const Fan& a, const Fan& b) {
  if (a.dim() != b.dim() || a.rays() != b.rays() || a.max_cones().size() != b.max_cones().size()) return false;
  for (std::size_t c = 0; c < a.max_cones().size(); ++c)
    if (a.max_cones()[c].ray_ids != b.max_cones()[c].ray_ids) return false;
  return true;
}

Fan projective_space(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "projective space needs n >= 1");
  const auto d = static_cast<std::size_t>(n);
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i < d; ++i) {
    IntVec r(d, 0);
    r[i] = 1;
    rays.push_back(r);
  }
  rays.push_back(IntVec(d, -1));
  // All n-subsets of the n+1 rays, lexicographic.
  std::vector<std::vector<RayId>> cones;
  for (int skip = n; skip >= 0; --skip) {
    std::vector<RayId> c;
    for (int i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return Fan::build(n, std::move(rays), std::move(cones));
}

Fan product(const Fan& a, const Fan& b) {
  const auto da = static_cast<std::size_t>(a.dim()), db = static_cast<std::size_t>(b.dim());
  std::vector<IntVec> rays;
  for (const auto& r : a.rays()) {
    IntVec v(da + db, 0);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(v);
  }
  for (const auto& r : b.rays()) {
    IntVec v(da + db, 0);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(da));
    rays.push_back(v);
  }
  const auto offset = static_cast<RayId>(a.ray_count());
  std::vector<std::vector<RayId>> cones;
  for (const auto& ca : a.max_cones())
    for (const auto& cb : b.max_cones()) {
      std::vector<RayId> c = ca.ray_ids;
      for (auto id : cb.ray_ids) c.push_back(id + offset);
      cones.push_back(c);
    }
  return Fan::build(a.dim() + b.dim(), std::move(rays), std::move(cones));
}

Fan hirzebruch(int a) {
  if (a < 0) throw Error(ErrorKind::InvalidArgument, "Hirzebruch parameter must be nonnegative");
  return Fan::build(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

Fan blowup_at_cone(const Fan& fan, ConeId cone) {
  if (cone >= fan.max_cones().size()) throw Error(ErrorKind::InvalidArgument, "cone index out of range");
  const auto d = static_cast<std::size_t>(fan.dim());
  std::vector<IntVec> rays = fan.rays();
  const auto& target = fan.max_cones()[cone].ray_ids;
  IntVec centre(d, 0);
  for (auto id : target)
    for (std::size_t i = 0; i < d; ++i) centre[i] += fan.ray(id)[i];
  const auto new_ray = static_cast<RayId>(rays.size());
  rays.push_back(centre);
  std::vector<std::vector<RayId>> cones;
  for (ConeId c = 0; c < fan.max_cones().size(); ++c) {
    if (c != cone) {
      cones.push_back(fan.max_cones()[c].ray_ids);
      continue;
    }
    for (std::size_t drop = 0; drop < d; ++drop) {
      std::vector<RayId> sub;
      for (std::size_t k = 0; k < d; ++k)
        if (k != drop) sub.push_back(target[k]);
      sub.push_back(new_ray);
      cones.push_back(sub);
    }
  }
  return Fan::build(fan.dim(), std::move(rays), std::move(cones));
}

Fan apply_unimodular(const Fan& fan, const IntMatrix& u) {
  if (abs(determinant(u)) != 1) throw Error(ErrorKind::InvalidArgument, "matrix is not unimodular");
  std::vector<IntVec> rays;
  for (const auto& r : fan.rays()) rays.push_back(toric::apply(u, r));
  std::vector<std::vector<RayId>> cones;
  for (const auto& c : fan.max_cones()) cones.push_back(c.ray_ids);
  return Fan::build(fan.dim(), std::move(rays), std::move(cones));
}

StarFan star_fan(const Fan& fan, RayId e) {
  if (e < 0 || static_cast<std::size_t>(e) >= fan.ray_count()) throw Error(ErrorKind::InvalidArgument, "ray index out of range");
  StarFan out{Fan::point(), e, {}, unimodular_completion(fan.ray(e))};
  if (fan.dim() == 1) return out;

  const auto d = static_cast<std::size_t>(fan.dim());
  out.source_ray = fan.neighbours(e);
  std::map<RayId, RayId> index;
  std::vector<IntVec> images;
  for (auto f : out.source_ray) {
    IntVec full = toric::apply(out.basis_change, fan.ray(f));
    index[f] = static_cast<RayId>(images.size());
    images.emplace_back(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(d - 1));
  }
  std::vector<std::vector<RayId>> cones;
  for (const auto& cone : fan.max_cones()) {
    if (!cone.contains(e)) continue;
    std::vector<RayId> c;
    for (auto f : cone.ray_ids)
      if (f != e) c.push_back(index.at(f));
    cones.push_back(c);
  }
  try {
    out.fan = Fan::build(fan.dim() - 1, std::move(images), std::move(cones));
  } catch (const Error& err) {
    throw InternalError(std::string("star fan of a validated fan failed validation: ") + err.what());
  }
  return out;
}

namespace {

bool parse_nonneg_int(const std::string& s, int& out) {
  if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    return false;
  out = std::stoi(s);
  return true;
}

}  // namespace

bool is_builtin_name(const std::string& name) {
  int n = 0;
  if (name == "p1xp1") return true;
  if (name.rfind("hirzebruch:", 0) == 0) return parse_nonneg_int(name.substr(11), n);
  if (name.size() > 3 && name.rfind("p(", 0) == 0 && name.back() == ')')
    return parse_nonneg_int(name.substr(2, name.size() - 3), n) && n >= 1;
  if (name.size() > 1 && name[0] == 'p') return parse_nonneg_int(name.substr(1), n) && n >= 1;
  return false;
}

Fan builtin_fan(const std::string& name) {
  if (!is_builtin_name(name)) throw Error(ErrorKind::InvalidArgument, "unknown builtin fan '" + name + "'");
  int n = 0;
  if (name == "p1xp1") return product(projective_space(1), projective_space(1));
  if (name.rfind("hirzebruch:", 0) == 0) {
    parse_nonneg_int(name.substr(11), n);
    return hirzebruch(n);
  }
  if (name.rfind("p(", 0) == 0) parse_nonneg_int(name.substr(2, name.size() - 3), n);
  else parse_nonneg_int(name.substr(1), n);
  return projective_space(n);
}

}  // namespace toric
