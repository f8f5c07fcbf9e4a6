#include "toric/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "height_kernel.hpp"
#include "toric/error.hpp"

namespace toric {

using detail::HeightKernel;
using detail::PrimeExponent;
using detail::Threshold;

void BoundSpec::validate(const Fan& fan) const {
  if (B < 1) throw Error(ErrorKind::InvalidArgument, "B must be a positive integer");
  if (beta.size() != fan.ray_count())
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(fan.ray_count()) + " beta values, got " +
                                                  std::to_string(beta.size()));
  for (const auto& b : beta)
    if (b <= 0) throw Error(ErrorKind::InvalidArgument, "every beta must be positive");
}

std::uint64_t CountRecord::boundary_total() const {
  std::uint64_t s = 0;
  for (const auto& [cone, n] : stratum_counts) s += n;
  return s;
}

std::vector<BigInt> coordinate_bounds(const Fan& fan, const BoundSpec& spec) {
  spec.validate(fan);
  const auto d = static_cast<std::size_t>(fan.dim());
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < d; ++i) {
    // For m = +-e_i^*: max(|a_i|, b_i) <= prod_e H_e^{max(-<m,e>, 0)} <= B^{sum_e beta_e max(-<m,e>, 0)}.
    BigInt best;
    for (int sign : {1, -1}) {
      Rational exponent = 0;
      for (std::size_t e = 0; e < fan.ray_count(); ++e) {
        auto pairing = -sign * fan.rays()[e][i];
        if (pairing > 0) exponent += spec.beta[e] * static_cast<long>(pairing);
      }
      BigInt n = floor_power(spec.B, exponent);
      if (sign == 1 || n < best) best = n;
    }
    out.push_back(best);
  }
  return out;
}

namespace {

constexpr std::uint64_t kMaxCoordinateBound = 1u << 26;

std::vector<std::uint32_t> small_box(const std::vector<BigInt>& bounds) {
  std::vector<std::uint32_t> box;
  for (const auto& n : bounds) {
    if (n > kMaxCoordinateBound)
      throw Error(ErrorKind::ResourceLimit, "coordinate bound " + n.get_str() + " is beyond desk-scale enumeration");
    box.push_back(static_cast<std::uint32_t>(n.get_ui()));
  }
  return box;
}

struct Counter {
  HeightKernel kernel;
  const std::vector<Threshold>* thresholds;
  std::vector<std::vector<PrimeExponent>> exps;
  std::uint64_t count = 0;

  void visit(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    kernel.evaluate(a, b, exps);
    for (std::size_t e = 0; e < exps.size(); ++e)
      if (!detail::height_within(exps[e], (*thresholds)[e])) return;
    ++count;
  }
};

struct StratumFan {
  Fan fan;
  std::vector<RayId> source;  // star ray -> original ray
};

StratumFan stratum_fan(const Fan& fan, const std::vector<RayId>& cone) {
  StratumFan cur{fan, {}};
  for (std::size_t e = 0; e < fan.ray_count(); ++e) cur.source.push_back(static_cast<RayId>(e));
  for (auto r : cone) {
    auto it = std::find(cur.source.begin(), cur.source.end(), r);
    TORIC_ASSERT(it != cur.source.end(), "cone ray vanished from an iterated star fan");
    StarFan s = star_fan(cur.fan, static_cast<RayId>(it - cur.source.begin()));
    std::vector<RayId> source;
    for (auto k : s.source_ray) source.push_back(cur.source[static_cast<std::size_t>(k)]);
    cur = StratumFan{s.fan, std::move(source)};
  }
  return cur;
}

}  // namespace

CountRecord count_torus(const Fan& fan, const BoundSpec& spec, const CountOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  spec.validate(fan);
  CountRecord record;
  record.B = spec.B;
  record.coordinate_bounds = coordinate_bounds(fan, spec);
  const auto box = small_box(record.coordinate_bounds);

  std::vector<Threshold> thresholds;
  for (const auto& b : spec.beta) thresholds.emplace_back(spec.B, b);
  std::uint32_t limit = 1;
  for (auto n : box) limit = std::max(limit, n);
  const FactorTable table(limit);

  auto workers = detail::run_box<Counter>(box, options.jobs, [&] {
    return Counter{HeightKernel(fan, table), &thresholds, {}, 0};
  });
  std::uint64_t positive = 0;
  for (const auto& w : workers) positive += w.count;
  // Heights see only |x_i|; each positive tuple stands for 2^d sign patterns.
  record.torus_count = positive << fan.dim();
  record.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

CountRecord count_boundary(const Fan& fan, const BoundSpec& spec, const CountOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CountRecord record = count_torus(fan, spec, options);
  for (const auto& cone : fan.faces()) {
    if (cone.empty()) continue;
    StratumFan stratum = stratum_fan(fan, cone);
    if (stratum.fan.dim() == 0) {
      record.stratum_counts[cone] = 1;
      continue;
    }
    BoundSpec inherited{spec.B, {}};
    for (auto r : stratum.source) inherited.beta.push_back(spec.beta[static_cast<std::size_t>(r)]);
    record.stratum_counts[cone] = count_torus(stratum.fan, inherited, options).torus_count;
  }
  record.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

namespace {

enum class ClosedForm { None, ProjectiveSpace, P1xP1 };

ClosedForm detect(const Fan& fan) {
  const auto d = static_cast<std::size_t>(fan.dim());
  std::set<IntVec> rays(fan.rays().begin(), fan.rays().end());
  std::set<IntVec> expected;
  for (std::size_t i = 0; i < d; ++i) {
    IntVec v(d, 0);
    v[i] = 1;
    expected.insert(v);
  }
  expected.insert(IntVec(d, -1));
  if (rays == expected) return ClosedForm::ProjectiveSpace;
  if (d == 2 && rays == std::set<IntVec>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) return ClosedForm::P1xP1;
  return ClosedForm::None;
}

// #{x in P^n(Q) in the torus : max|X_j| <= N} = (1/2) sum_k mu(k) (2 floor(N/k))^{n+1}.
BigInt projective_torus_count(int n, std::uint64_t N) {
  if (N == 0) return 0;
  std::vector<int> mu(N + 1, 1);
  std::vector<bool> composite(N + 1, false);
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t j = p; j <= N; j += p) {
      if (j > p) composite[j] = true;
      mu[j] = -mu[j];
    }
    for (std::uint64_t j = p * p; j <= N; j += p * p) mu[j] = 0;
  }
  BigInt total = 0;
  for (std::uint64_t k = 1; k <= N; ++k) {
    if (mu[k] == 0) continue;
    BigInt side(static_cast<unsigned long>(2 * (N / k)));
    BigInt term;
    mpz_pow_ui(term.get_mpz_t(), side.get_mpz_t(), static_cast<unsigned long>(n + 1));
    total += mu[k] * term;
  }
  return total / 2;
}

std::uint64_t min_floor_bound(const Fan& fan, const BoundSpec& spec, std::span<const IntVec> rays) {
  BigInt best;
  bool first = true;
  for (std::size_t e = 0; e < fan.ray_count(); ++e) {
    if (std::find(rays.begin(), rays.end(), fan.rays()[e]) == rays.end()) continue;
    BigInt n = floor_power(spec.B, spec.beta[e]);
    if (first || n < best) best = n;
    first = false;
  }
  if (best > kMaxCoordinateBound) throw Error(ErrorKind::ResourceLimit, "closed-form bound too large");
  return best.get_ui();
}

}  // namespace

std::optional<BigInt> closed_form_count(const Fan& fan, const BoundSpec& spec) {
  spec.validate(fan);
  switch (detect(fan)) {
    case ClosedForm::ProjectiveSpace: {
      auto N = min_floor_bound(fan, spec, fan.rays());
      return projective_torus_count(fan.dim(), N);
    }
    case ClosedForm::P1xP1: {
      const std::vector<IntVec> first{{1, 0}, {-1, 0}}, second{{0, 1}, {0, -1}};
      return projective_torus_count(1, min_floor_bound(fan, spec, first)) *
             projective_torus_count(1, min_floor_bound(fan, spec, second));
    }
    case ClosedForm::None:
      break;
  }
  return std::nullopt;
}

}  // namespace toric
