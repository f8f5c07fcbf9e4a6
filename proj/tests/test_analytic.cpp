#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "toric/analytic.hpp"

using namespace toric;
using testing::error_kind;
using testing::named;

namespace {

constexpr double kZeta2 = M_PI * M_PI / 6;
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZeta4 = M_PI * M_PI * M_PI * M_PI / 90;

std::vector<Complex> real_s(std::initializer_list<double> xs) { return {xs.begin(), xs.end()}; }
std::vector<Complex> constant_s(const Fan& f, double v) { return std::vector<Complex>(f.ray_count(), Complex(v, 0)); }

QPolynomial::Monomial mono(std::initializer_list<RayId> ids) { return ids; }

// Sum of max(|a|,b)^{-t} over a/b with max^2 <= H, the anticanonical height on P1 being max^2.
double p1_zeta_oracle(double t, std::uint64_t H) {
  double z = 0;
  for (std::uint64_t N = 1; N * N <= H; ++N) {
    std::uint64_t pairs = 0;
    for (std::uint64_t a = 1; a <= N; ++a)
      for (std::uint64_t b = 1; b <= N; ++b)
        if (std::max(a, b) == N && std::gcd(a, b) == 1) ++pairs;
    z += 2.0 * static_cast<double>(pairs) * std::pow(static_cast<double>(N), -t);
  }
  return z;
}

// Same on P2: primitive triples up to sign, anticanonical height max^3.
double p2_zeta_oracle(double t, std::uint64_t H) {
  std::int64_t N = 1;
  while (static_cast<std::uint64_t>((N + 1) * (N + 1) * (N + 1)) <= H) ++N;
  double z = 0;
  for (std::int64_t a = -N; a <= N; ++a)
    for (std::int64_t b = -N; b <= N; ++b)
      for (std::int64_t c = -N; c <= N; ++c) {
        if (a == 0 || b == 0 || c == 0 || std::gcd(std::gcd(a, b), c) != 1) continue;
        const auto m = std::max({std::abs(a), std::abs(b), std::abs(c)});
        z += 0.5 * std::pow(static_cast<double>(m), -t);
      }
  return z;
}

}  // namespace

TEST_CASE("Q polynomial closed forms") {
  QPolynomial p1 = q_polynomial(projective_space(1));
  CHECK(p1 == QPolynomial(2, {{mono({}), 1}, {mono({0, 1}), -1}}));
  CHECK(q_polynomial(projective_space(2)).to_string() == "1 - u1*u2*u3");
  CHECK(q_polynomial(projective_space(2)) == QPolynomial(3, {{mono({}), 1}, {mono({0, 1, 2}), -1}}));
  CHECK(p1.diagonal() == std::vector<std::int64_t>{1, 0, -1});
  CHECK(p1.coefficient(mono({0})) == 0);

  Fan q = builtin_fan("p1xp1");
  QPolynomial qq = q_polynomial(q);
  // pairs of opposite rays
  std::vector<std::pair<RayId, RayId>> opposite;
  for (RayId a = 0; a < 4; ++a)
    for (RayId b = a + 1; b < 4; ++b)
      if (q.ray(a)[0] == -q.ray(b)[0] && q.ray(a)[1] == -q.ray(b)[1]) opposite.emplace_back(a, b);
  REQUIRE(opposite.size() == 2);
  auto [a1, a2] = opposite[0];
  auto [b1, b2] = opposite[1];
  std::map<QPolynomial::Monomial, std::int64_t> expected{{mono({}), 1}, {mono({a1, a2}), -1}, {mono({b1, b2}), -1}};
  std::vector<RayId> all{a1, a2, b1, b2};
  std::sort(all.begin(), all.end());
  expected[all] = 1;
  CHECK(qq == QPolynomial(4, expected));
}

TEST_CASE("Q(0) = 1 and Q has no linear terms on every builtin") {
  for (const auto& name : testing::builtin_names()) {
    CAPTURE(name);
    Fan f = named(name);
    QPolynomial q = q_polynomial(f);
    CHECK(q.coefficient({}) == 1);
    for (RayId e = 0; e < static_cast<RayId>(f.ray_count()); ++e) CHECK(q.coefficient({e}) == 0);
    std::vector<double> zero(f.ray_count(), 0.0);
    CHECK(q.evaluate(std::span<const double>(zero)) == 1.0);
  }
}

TEST_CASE("Q of a product is the product of the Qs") {
  const std::vector<std::pair<std::string, std::string>> pairs{{"p1", "p1"}, {"p1", "p2"}, {"p2", "hirzebruch:1"}};
  for (const auto& [a, b] : pairs) {
    Fan fa = named(a), fb = named(b);
    CHECK(q_polynomial(product(fa, fb)) == q_polynomial(fa) * q_polynomial(fb));
  }
}

TEST_CASE("local factors") {
  Fan p1 = projective_space(1);
  auto s = real_s({2, 2});
  CHECK(local_factor(p1, s, 2).real() == doctest::Approx(5.0 / 3).epsilon(1e-13));
  CHECK(local_factor(p1, s, 2).imag() == 0.0);
  for (const auto& name : testing::builtin_names()) {
    Fan f = named(name);
    auto big = constant_s(f, 60.0);
    CHECK(std::abs(local_factor(f, big, 3) - 1.0) < 1e-20);
  }
  auto zero = real_s({0, 2});
  CHECK(error_kind([&] { local_factor(p1, zero, 2); }) == ErrorKind::PoleAtInput);
  CHECK(error_kind([&] { local_factor(p1, real_s({2, 2, 2}), 2); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("local factor equals the truncated lattice sum") {
  for (const auto& name : {"p1", "p2", "p1xp1", "hirzebruch:1", "blowup:p2:0"}) {
    Fan f = named(name);
    std::vector<double> sv(f.ray_count());
    for (std::size_t e = 0; e < sv.size(); ++e) sv[e] = 1.5 + 0.25 * static_cast<double>(e);
    std::vector<Complex> s(sv.begin(), sv.end());
    for (unsigned p : {2u, 3u, 5u}) {
      CAPTURE(name);
      CAPTURE(p);
      const double exact = local_factor(f, s, p).real();
      const double oracle_sum = oracle::lattice_sum(f, sv, p, 12);
      CHECK(std::abs(exact - oracle_sum) < 1e-4);
      CHECK(std::abs(local_lattice_sum(f, s, p, 12).real() - oracle_sum) < 1e-10 * oracle_sum);
    }
  }
}

TEST_CASE("archimedean transform") {
  Fan p1 = projective_space(1);
  std::vector<double> zero1{0.0}, zero2{0.0, 0.0};
  CHECK(std::abs(arch_transform(p1, real_s({2, 2}), zero1) - 1.0) < 1e-15);
  CHECK(std::abs(arch_transform(projective_space(2), real_s({2, 2, 2}), zero2) - 0.75) < 1e-15);
  std::vector<Complex> s{{1.5, 0.3}, {2.0, -1.0}};
  std::vector<double> t{0.7};
  const Complex i(0, 1);
  CHECK(std::abs(arch_transform(p1, s, t) - (1.0 / (s[0] + i * 0.7) + 1.0 / (s[1] - i * 0.7))) < 1e-14);
  std::vector<Complex> pole{{0, 1}, {1, 0}};
  std::vector<double> m{-1.0};
  CHECK(error_kind([&] { arch_transform(p1, pole, m); }) == ErrorKind::PoleAtInput);
}

TEST_CASE("archimedean transform matches quadrature on random inputs") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> sd(0.8, 3.0), md(-2.0, 2.0);
  for (const auto& name : {"p1", "p2", "p1xp1", "hirzebruch:2", "blowup:p2:0"}) {
    Fan f = named(name);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> sv(f.ray_count()), m(static_cast<std::size_t>(f.dim()));
      for (auto& v : sv) v = sd(rng);
      for (auto& v : m) v = md(rng);
      std::vector<Complex> s(sv.begin(), sv.end());
      CAPTURE(name);
      CHECK(std::abs(arch_transform(f, s, m) - oracle::arch_quadrature(f, sv, m)) < 1e-6);
    }
  }
}

TEST_CASE("global transform") {
  Fan p1 = projective_space(1);
  auto s = real_s({2, 2});
  const Complex g = global_transform(p1, s, 1'000'000);
  CHECK(std::abs(g.real() - kZeta2 * kZeta2 / kZeta4) < 1e-5);
  CHECK(std::abs(g.real() - 2.5) < 1e-5);
  CHECK(error_kind([&] { global_transform(p1, real_s({1, 2}), 100); }) == ErrorKind::InvalidArgument);

  for (const auto& name : testing::builtin_names()) {
    Fan f = named(name);
    auto sf = constant_s(f, 1.7);
    double prev = 0;
    for (std::uint32_t P : {2u, 10u, 100u, 1000u}) {
      const Complex v = global_transform(f, sf, P);
      CHECK(v.imag() == 0.0);
      CHECK(v.real() > prev);
      prev = v.real();
    }
  }

  // P2 at s = (2,2,2): 3/4 times prod_p (1 - p^-6) / (1 - p^-2)^3, accumulated in reverse prime order
  Fan p2 = projective_space(2);
  const auto primes = primes_up_to(10'000);
  double log_sum = 0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const double p = *it;
    log_sum += std::log1p(-std::pow(p, -6)) - 3 * std::log1p(-std::pow(p, -2));
  }
  const double direct = 0.75 * std::exp(log_sum);
  CHECK(global_transform(p2, real_s({2, 2, 2}), 10'000).real() == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("singular constants") {
  CHECK(singular_constant(projective_space(1), 100'000) == doctest::Approx(12 / (M_PI * M_PI)).epsilon(1e-4));
  CHECK(singular_constant(projective_space(2), 100'000) == doctest::Approx(3 / kZeta3).epsilon(1e-4));
  CHECK(singular_constant(builtin_fan("p1xp1"), 100'000) == doctest::Approx(4 / (kZeta2 * kZeta2)).epsilon(1e-4));
  CHECK(error_kind([] { singular_constant(projective_space(1), 1); }) == ErrorKind::InvalidArgument);
  for (const auto& name : testing::builtin_names()) {
    const double a = singular_constant(named(name), 100), b = singular_constant(named(name), 1000);
    CHECK(a > 0);
    CHECK(b > 0);
  }
}

TEST_CASE("X-function") {
  std::vector<RatVec> orthant{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  PolyCone o(orthant);
  RatVec x{1, 2, 4};
  CHECK(x_function(o, x) == Rational(1, 8));
  RatVec ones{1, 1, 1};
  CHECK(x_function(o, ones) == 1);

  PolyCone c({{1, 0}, {1, 2}});
  RatVec x2{2, 1};
  CHECK(x_function(c, x2) == Rational(2, 3));
  CHECK(c.dual_rays().size() == 2);
  const double mc = oracle::xfun_monte_carlo({{1, 0}, {1, 2}}, {2, 1}, 2'000'000, 47);
  CHECK(std::abs(mc - 2.0 / 3) < 0.02 * 2.0 / 3);

  // square pyramid: the dual has four rays (+-1, +-1, 1), split into two simplices of determinant 4
  PolyCone pyramid({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}});
  RatVec apex{0, 0, 1};
  CHECK(pyramid.is_interior(apex));
  CHECK(pyramid.dual_triangulation().size() == 2);
  CHECK(x_function(pyramid, apex) == 8);

  RatVec outside{-1, 1};
  CHECK(error_kind([&] { x_function(c, outside); }) == ErrorKind::NotInterior);
  RatVec on_wall{0, 1};
  CHECK(error_kind([&] { x_function(c, on_wall); }) == ErrorKind::NotInterior);
  CHECK(error_kind([] { PolyCone({{1, 0}, {-1, 0}, {0, 1}}); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { PolyCone({{1, 1}}); }) == ErrorKind::Malformed);
  CHECK(error_kind([] { PolyCone({}); }) == ErrorKind::Malformed);
}

TEST_CASE("direct zeta sums") {
  for (const auto& name : testing::builtin_names()) {
    Fan f = named(name);
    auto s = constant_s(f, 2.0);
    CHECK(zeta_direct(f, s, 1).real() == doctest::Approx(std::pow(2.0, f.dim())));
  }
  Fan p1 = projective_space(1);
  auto s = real_s({2, 2});
  double prev = 0;
  for (std::uint64_t H : {1u, 4u, 50u, 1000u, 100000u}) {
    const double z = zeta_direct(p1, s, H).real();
    CHECK(z >= prev);
    prev = z;
  }
  CHECK(zeta_direct(p1, s, 10'000).real() == doctest::Approx(p1_zeta_oracle(4, 10'000)).epsilon(1e-12));
  CHECK(zeta_direct(p1, real_s({3, 2}), 10'000).real() == doctest::Approx(p1_zeta_oracle(5, 10'000)).epsilon(1e-12));

  Fan p2 = projective_space(2);
  CHECK(zeta_direct(p2, real_s({2, 2, 2}), 4000).real() == doctest::Approx(p2_zeta_oracle(6, 4000)).epsilon(1e-12));
  CHECK(zeta_direct(p2, real_s({2, 2, 2}), 4000, 3).real() ==
        doctest::Approx(zeta_direct(p2, real_s({2, 2, 2}), 4000, 1).real()).epsilon(1e-12));

  // full P1 sum: 4 zeta(t - 1) / zeta(t) - 2 at t = s1 + s2
  const double limit = 4 * kZeta3 / kZeta4 - 2;
  const double z = zeta_direct(p1, s, 1'000'000).real();
  CHECK(z <= limit);
  CHECK(limit - z < 1e-5);
  CHECK(error_kind([&] { zeta_direct(p1, real_s({1, 2}), 10); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Poisson check symmetry and sanity") {
  Fan p1 = projective_space(1);
  PoissonResult a = poisson_check(p1, 3, 2, 50, 1000, 100'000);
  PoissonResult b = poisson_check(p1, 2, 3, 50, 1000, 100'000);
  CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-14));
  CHECK(a.rhs == doctest::Approx(b.rhs).epsilon(1e-9));
  CHECK(a.ratio == doctest::Approx(a.lhs / a.rhs));
  CHECK(a.ratio > 0.9);
  CHECK(a.ratio < 1.1);
  CHECK(error_kind([&] { poisson_check(projective_space(2), 2, 2, 10, 100, 100); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([&] { poisson_check(p1, 1, 2, 10, 100, 100); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("adaptive Simpson") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0, M_PI, 1e-10) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0, 30, 1e-10, 7) == doctest::Approx(1.0).epsilon(1e-9));
}
