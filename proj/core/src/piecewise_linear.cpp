#include "toric/piecewise_linear.hpp"

#include <algorithm>

#include "toric/error.hpp"

namespace toric {

PLFunction PLFunction::from_ray_values(const Fan& fan, RatVec values) {
  if (values.size() != fan.ray_count())
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(fan.ray_count()) + " ray values, got " +
                                                  std::to_string(values.size()));
  for (auto& q : values) q.canonicalize();
  const auto d = static_cast<std::size_t>(fan.dim());
  bool integral = std::all_of(values.begin(), values.end(), [](const Rational& q) { return q.get_den() == 1; });
  std::vector<RatVec> forms;
  forms.reserve(fan.max_cones().size());
  for (const auto& cone : fan.max_cones()) {
    RatVec m(d, Rational(0));
    for (std::size_t k = 0; k < cone.ray_ids.size(); ++k) {
      const auto& value = values[static_cast<std::size_t>(cone.ray_ids[k])];
      if (value == 0) continue;
      for (std::size_t i = 0; i < d; ++i) m[i] += value * static_cast<long>(cone.dual_basis[k][i]);
    }
    forms.push_back(std::move(m));
  }
  return PLFunction(fan, std::move(values), std::move(forms), integral);
}

Rational PLFunction::evaluate(std::span<const Rational> n) const {
  if (fan_.dim() == 0) return 0;
  const auto& m = forms_[fan_.locate(n)];
  Rational s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * n[i];
  return s;
}

Rational PLFunction::evaluate(std::span<const std::int64_t> n) const {
  if (fan_.dim() == 0) return 0;
  return dot(n, forms_[fan_.locate(n)]);
}

IntVec PLFunction::integer_form(ConeId c) const {
  if (!integral_) throw Error(ErrorKind::NonIntegral, "PL function is not integral");
  const auto& m = forms_.at(c);
  IntVec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    TORIC_ASSERT(m[i].get_den() == 1, "integral PL function has a non-integral cone form");
    out[i] = to_int64(m[i].get_num());
  }
  return out;
}

namespace {

PLFunction combine(const PLFunction& a, const PLFunction& b, int sign) {
  if (!(a.fan() == b.fan())) throw Error(ErrorKind::DimensionMismatch, "PL functions live on different fans");
  RatVec v = a.ray_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += sign * b.ray_values()[i];
  return PLFunction::from_ray_values(a.fan(), std::move(v));
}

}  // namespace

PLFunction operator+(const PLFunction& a, const PLFunction& b) { return combine(a, b, 1); }
PLFunction operator-(const PLFunction& a, const PLFunction& b) { return combine(a, b, -1); }

PLFunction operator*(const Rational& k, const PLFunction& a) {
  RatVec v = a.ray_values();
  for (auto& x : v) x *= k;
  return PLFunction::from_ray_values(a.fan(), std::move(v));
}

PLFunction generator_pl(const Fan& fan, RayId e) {
  if (e < 0 || static_cast<std::size_t>(e) >= fan.ray_count())
    throw Error(ErrorKind::InvalidArgument, "ray index out of range");
  RatVec v(fan.ray_count(), Rational(0));
  v[static_cast<std::size_t>(e)] = 1;
  return PLFunction::from_ray_values(fan, std::move(v));
}

PLFunction anticanonical_pl(const Fan& fan) {
  return PLFunction::from_ray_values(fan, RatVec(fan.ray_count(), Rational(1)));
}

PLFunction linear_pl(const Fan& fan, std::span<const std::int64_t> m) {
  if (m.size() != static_cast<std::size_t>(fan.dim()))
    throw Error(ErrorKind::DimensionMismatch, "linear form has wrong length");
  RatVec v;
  for (const auto& r : fan.rays()) v.emplace_back(static_cast<long>(dot(m, r)));
  return PLFunction::from_ray_values(fan, std::move(v));
}

std::vector<BigInt> smith_invariants(const IntMatrix& m_in) {
  const std::size_t rows = m_in.size();
  const std::size_t cols = rows ? m_in[0].size() : 0;
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<long>(m_in[i][j]);

  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Move the smallest nonzero entry of the trailing block to (t, t).
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return diag;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any row whose entries the pivot does not divide.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

PicData pic_data(const Fan& fan) {
  PicData out;
  out.m_matrix = fan.rays();
  out.pic_rank = fan.ray_count() - static_cast<std::size_t>(fan.dim());
  out.invariant_factors = smith_invariants(out.m_matrix);
  return out;
}

bool is_effective_interior(const PLFunction& phi) {
  const auto& v = phi.ray_values();
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q > 0; });
}

bool in_m_image(const Fan& fan, const RatVec& ray_values) {
  if (ray_values.size() != fan.ray_count()) throw Error(ErrorKind::DimensionMismatch, "ray value count mismatch");
  if (fan.dim() == 0) return true;
  // Candidate m from the first maximal cone; it is the only one possible.
  auto phi = PLFunction::from_ray_values(fan, ray_values);
  const auto& m = phi.cone_form(0);
  if (std::any_of(m.begin(), m.end(), [](const Rational& q) { return q.get_den() != 1; })) return false;
  for (std::size_t e = 0; e < fan.ray_count(); ++e)
    if (dot(fan.rays()[e], m) != ray_values[e]) return false;
  return true;
}

bool same_pic_class(const PLFunction& a, const PLFunction& b) {
  return in_m_image(a.fan(), (a - b).ray_values());
}

RestrictedPL restrict_pl(const PLFunction& phi, RayId f) {
  if (!phi.is_integral()) throw Error(ErrorKind::NonIntegral, "restriction needs an integral PL function");
  const Fan& fan = phi.fan();
  StarFan star = star_fan(fan, f);
  const auto d = static_cast<std::size_t>(fan.dim());
  const auto value_f = to_int64(phi.ray_values()[static_cast<std::size_t>(f)].get_num());
  IntVec m(d);
  for (std::size_t i = 0; i < d; ++i) m[i] = value_f * star.basis_change[d - 1][i];
  TORIC_ASSERT(dot(m, fan.ray(f)) == value_f, "shift does not match phi(f)");

  RatVec values;
  for (auto g : star.source_ray)
    values.push_back(phi.ray_values()[static_cast<std::size_t>(g)] - static_cast<long>(dot(m, fan.ray(g))));
  auto restricted = PLFunction::from_ray_values(star.fan, std::move(values));
  return RestrictedPL{std::move(star), std::move(m), std::move(restricted)};
}

}  // namespace toric
