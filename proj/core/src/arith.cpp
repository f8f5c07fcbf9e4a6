#include "toric/arith.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>

#include "toric/error.hpp"

namespace toric {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::LocationFailure: return "LocationFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::PoleAtInput: return "PoleAtInput";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::DegenerateGrid: return "DegenerateGrid";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
  }
  return "Unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

BigInt parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw Error(ErrorKind::InvalidArgument, "not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty rational");
  Rational q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(s.substr(0, slash)));
    BigInt den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(s) + "'");
    q = Rational(num, den);
  } else if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot_pos);
    std::string_view frac = s.substr(dot_pos + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_integer_literal(whole)) ||
        (!frac.empty() && !is_integer_literal(frac)) || (!frac.empty() && (frac.front() == '-' || frac.front() == '+')))
      throw Error(ErrorKind::InvalidArgument, "not a decimal: '" + std::string(s) + "'");
    BigInt digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q = Rational(negative ? BigInt(-digits) : digits, scale);
  } else {
    q = Rational(parse_integer(s));
  }
  q.canonicalize();
  return q;
}

std::vector<Rational> parse_rational_list(std::string_view text, char sep) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(parse_rational(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

std::string to_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

std::int64_t to_int64(const BigInt& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::ResourceLimit, "integer exceeds 64 bits: " + z.get_str());
  return z.get_si();
}

std::int64_t gcd_of(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

bool is_primitive(std::span<const std::int64_t> v) { return gcd_of(v) == 1; }

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const std::int64_t> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(static_cast<long>(a[i])) * b[i];
  return s;
}

BigInt determinant(const IntMatrix& square) {
  // Bareiss fraction-free elimination.
  const std::size_t n = square.size();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(square[i][j]);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rational factor = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
    }
    ++r;
  }
  return r;
}

std::optional<RatVec> solve(const RatMatrix& a_in, const RatVec& b_in) {
  const std::size_t n = a_in.size();
  RatMatrix a = a_in;
  RatVec b = b_in;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational factor = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= factor * a[c][j];
      b[i] -= factor * b[c];
    }
  }
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

IntMatrix unimodular_inverse(const IntMatrix& square) {
  const std::size_t n = square.size();
  RatMatrix a(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(square[i][j]);
  IntMatrix inv(n, IntVec(n));
  for (std::size_t col = 0; col < n; ++col) {
    RatVec e(n, Rational(0));
    e[col] = 1;
    auto x = solve(a, e);
    if (!x) throw Error(ErrorKind::NotSmooth, "matrix is singular");
    for (std::size_t i = 0; i < n; ++i) {
      if ((*x)[i].get_den() != 1) throw Error(ErrorKind::NotSmooth, "matrix is not unimodular");
      inv[i][col] = to_int64((*x)[i].get_num());
    }
  }
  return inv;
}

IntMatrix unimodular_completion(std::span<const std::int64_t> f) {
  const std::size_t d = f.size();
  if (d == 0 || !is_primitive(f)) throw Error(ErrorKind::NotPrimitive, "vector is not primitive");
  IntMatrix u(d, IntVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  IntVec v(f.begin(), f.end());
  const std::size_t last = d - 1;
  for (std::size_t i = 0; i < last; ++i) {
    std::int64_t a = v[i], b = v[last];
    if (a == 0) continue;
    // extended gcd: x a + y b = g
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      std::int64_t q = old_r / r;
      std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
      std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
      std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    std::int64_t g = old_r, x = old_s, y = old_t;
    if (g < 0) { g = -g; x = -x; y = -y; }
    // rows (i, last) <- [[b/g, -a/g], [x, y]] * rows (i, last); determinant 1
    IntVec row_i = u[i], row_l = u[last];
    for (std::size_t j = 0; j < d; ++j) {
      u[i][j] = (b / g) * row_i[j] - (a / g) * row_l[j];
      u[last][j] = x * row_i[j] + y * row_l[j];
    }
    v[i] = 0;
    v[last] = g;
  }
  if (v[last] == -1) {
    for (auto& x : u[last]) x = -x;
    v[last] = 1;
  }
  TORIC_ASSERT(v[last] == 1, "unimodular completion did not reach a unit");
  return u;
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), IntVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), IntVec(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntVec apply(const IntMatrix& a, std::span<const std::int64_t> v) {
  IntVec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], v);
  return out;
}

BigInt floor_power(const BigInt& base, const Rational& exponent) {
  if (base < 1 || exponent < 0) throw Error(ErrorKind::InvalidArgument, "floor_power needs base >= 1, exponent >= 0");
  const BigInt& p = exponent.get_num();
  const BigInt& q = exponent.get_den();
  if (!p.fits_ulong_p() || !q.fits_ulong_p()) throw Error(ErrorKind::ResourceLimit, "exponent too large");
  BigInt powered;
  mpz_pow_ui(powered.get_mpz_t(), base.get_mpz_t(), p.get_ui());
  BigInt root;
  mpz_root(root.get_mpz_t(), powered.get_mpz_t(), q.get_ui());
  return root;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

namespace {

BigInt pollard_brent(const BigInt& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  BigInt y = seed % 97 + 2, c = seed % 89 + 1, g = 1, r = 1, q = 1, x, ys;
  const unsigned long m = 128;
  auto step = [&](const BigInt& v) {
    BigInt w = v * v + c;
    mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
    return w;
  };
  while (g == 1) {
    x = y;
    for (BigInt i = 0; i < r; ++i) y = step(y);
    BigInt k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < m && k + i < r; ++i) {
        y = step(y);
        BigInt diff = abs(x - y);
        q = (q * diff) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = step(ys);
      BigInt diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void factor_into(const BigInt& n, std::vector<BigInt>& primes) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
    primes.push_back(n);
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    BigInt d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, primes);
      factor_into(n / d, primes);
      return;
    }
  }
}

}  // namespace

std::vector<PrimePower> factorize(const BigInt& n_in) {
  if (n_in == 0) throw Error(ErrorKind::InvalidArgument, "cannot factor zero");
  BigInt n = abs(n_in);
  std::vector<BigInt> found;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      found.emplace_back(p);
      n /= p;
    }
  }
  if (n != 1) factor_into(n, found);
  std::sort(found.begin(), found.end());
  std::vector<PrimePower> out;
  for (auto& p : found) {
    if (!out.empty() && out.back().prime == p) ++out.back().exponent;
    else out.push_back({p, 1});
  }
  return out;
}

FactorTable::FactorTable(std::uint32_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0) {
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
}

void FactorTable::factor(std::uint32_t n, std::vector<std::pair<std::uint32_t, int>>& out) const {
  while (n > 1) {
    std::uint32_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
}

}  // namespace toric
