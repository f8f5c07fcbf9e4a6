#include "toric/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "toric/error.hpp"

namespace toric {

namespace {

double log_of(const BigInt& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double ratio_to_power(std::uint64_t count, const BigInt& B, const Rational& exponent) {
  return std::exp(std::log(static_cast<double>(count)) - exponent.get_d() * log_of(B));
}

bool tail_stable(const std::vector<double>& ratios) {
  if (ratios.size() < 2) return false;
  const std::size_t from = ratios.size() / 2;
  auto [lo, hi] = std::minmax_element(ratios.begin() + static_cast<long>(from), ratios.end());
  return *hi > 0.0 && (*hi - *lo) / *hi < 0.1;
}

}  // namespace

FitResult fit_exponent(std::span<const GridPoint> grid, long min_B) {
  FitResult fit;
  std::set<BigInt> distinct;
  for (const auto& g : grid) {
    if (g.B < min_B) continue;
    if (!(g.count > 0.0)) throw Error(ErrorKind::DegenerateGrid, "counts must be positive, got 0 at B = " + g.B.get_str());
    fit.grid.push_back(g);
    distinct.insert(g.B);
  }
  if (distinct.size() < 4)
    throw Error(ErrorKind::DegenerateGrid,
                "need at least 4 distinct B >= " + std::to_string(min_B) + ", got " + std::to_string(distinct.size()));
  const double n = static_cast<double>(fit.grid.size());
  double mx = 0, my = 0;
  for (const auto& g : fit.grid) {
    mx += log_of(g.B);
    my += std::log(g.count);
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (const auto& g : fit.grid) {
    const double dx = log_of(g.B) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(g.count) - my);
  }
  fit.sigma_hat = sxy / sxx;
  fit.log_c_hat = my - fit.sigma_hat * mx;
  double rss = 0;
  for (const auto& g : fit.grid) {
    const double r = std::log(g.count) - fit.log_c_hat - fit.sigma_hat * log_of(g.B);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / n);
  return fit;
}

Rational paper_exponent(const RatVec& beta) {
  Rational s = 0;
  for (const auto& b : beta) s += b;
  return s;
}

Rational lp_exponent(const Fan& fan, const RatVec& beta) {
  const std::size_t n = fan.ray_count();
  const auto d = static_cast<std::size_t>(fan.dim());
  if (beta.size() != n) throw Error(ErrorKind::DimensionMismatch, "one beta per ray expected");
  if (n > 16) throw Error(ErrorKind::ResourceLimit, "too many rays for exact vertex enumeration");
  if (d == 0) return paper_exponent(beta);

  // Columns of the constraint matrix are the rays; a complete fan's rays span, so rank d.
  // Every vertex of the box slice has d basic coordinates; the rest sit at 0 or beta_e.
  Rational best = 0;
  std::vector<std::size_t> basis(d);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      RatMatrix a(d, RatVec(d));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) a[i][j] = fan.rays()[basis[j]][i];
      if (rank(a) != d) return;
      std::vector<std::size_t> rest;
      for (std::size_t e = 0; e < n; ++e)
        if (std::find(basis.begin(), basis.end(), e) == basis.end()) rest.push_back(e);
      for (std::uint32_t mask = 0; mask < (1u << rest.size()); ++mask) {
        RatVec rhs(d, Rational(0));
        Rational total = 0;
        for (std::size_t k = 0; k < rest.size(); ++k) {
          if (!(mask & (1u << k))) continue;
          const auto e = rest[k];
          total += beta[e];
          for (std::size_t i = 0; i < d; ++i) rhs[i] -= beta[e] * fan.rays()[e][i];
        }
        auto t = solve(a, rhs);
        if (!t) continue;
        bool feasible = true;
        for (std::size_t j = 0; j < d && feasible; ++j) {
          const auto& v = (*t)[j];
          feasible = v >= 0 && v <= beta[basis[j]];
          total += v;
        }
        if (feasible && total > best) best = total;
      }
      return;
    }
    for (std::size_t e = start; e < n; ++e) {
      basis[depth] = e;
      choose(e + 1, depth + 1);
    }
  };
  choose(0, 0);
  return best;
}

TauberianTable tauberian_table(const Fan& fan, const RatVec& beta, std::span<const CountRecord> records) {
  TauberianTable table;
  table.sum_beta = paper_exponent(beta);
  table.lp = lp_exponent(fan, beta);
  std::vector<double> rs, rl;
  for (const auto& rec : records) {
    TauberianRow row{rec.B, rec.torus_count, 0.0, 0.0};
    if (rec.torus_count > 0) {
      row.ratio_sum_beta = ratio_to_power(rec.torus_count, rec.B, table.sum_beta);
      row.ratio_lp = ratio_to_power(rec.torus_count, rec.B, table.lp);
    }
    rs.push_back(row.ratio_sum_beta);
    rl.push_back(row.ratio_lp);
    table.rows.push_back(std::move(row));
  }
  table.sum_beta_stable = tail_stable(rs);
  table.lp_stable = tail_stable(rl);
  return table;
}

ComparatorReport report(const Fan& fan, const RatVec& beta, std::span<const CountRecord> records, double tolerance) {
  ComparatorReport out;
  out.sum_beta = paper_exponent(beta);
  out.lp_exponent = lp_exponent(fan, beta);
  std::vector<GridPoint> grid;
  for (const auto& r : records) grid.push_back({r.B, static_cast<double>(r.torus_count)});
  out.fit = fit_exponent(grid);
  out.table = tauberian_table(fan, beta, records);

  std::map<std::vector<RayId>, std::vector<GridPoint>> strata;
  for (const auto& r : records)
    for (const auto& [cone, n] : r.stratum_counts) strata[cone].push_back({r.B, static_cast<double>(n)});
  for (const auto& [cone, g] : strata) out.stratum_fits.emplace(cone, fit_exponent(g));

  const double sigma = out.fit.sigma_hat;
  const bool near_sum = std::abs(sigma - out.sum_beta.get_d()) <= tolerance;
  const bool near_lp = std::abs(sigma - out.lp_exponent.get_d()) <= tolerance;
  if (out.sum_beta == out.lp_exponent) {
    out.verdicts.push_back(near_sum ? "fitted, LP and Σβ agree" : "fitted departs from Σβ = LP");
  } else if (near_lp && !near_sum) {
    out.verdicts.push_back("fitted matches LP, not Σβ");
  } else if (near_sum && !near_lp) {
    out.verdicts.push_back("fitted matches Σβ, not LP");
  } else if (near_sum) {
    out.verdicts.push_back("grid cannot separate LP and Σβ");
  } else {
    out.verdicts.push_back("fitted matches neither LP nor Σβ");
  }
  if (out.table.sum_beta_stable) out.verdicts.push_back("ratio to B^Σβ stabilizes");
  if (out.sum_beta != out.lp_exponent && out.table.lp_stable) out.verdicts.push_back("ratio to B^LP stabilizes");
  if (!out.table.sum_beta_stable && !out.table.lp_stable) out.verdicts.push_back("no normalization stabilizes");
  if (!out.stratum_fits.empty()) {
    double worst = -1e300;
    for (const auto& [cone, f] : out.stratum_fits) worst = std::max(worst, f.sigma_hat);
    out.verdicts.push_back(worst < sigma ? "boundary strata grow slower than the torus"
                                         : "a boundary stratum grows at least as fast as the torus");
  }
  return out;
}

std::vector<BigInt> parse_grid(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::InvalidArgument, "bad grid '" + std::string(text) + "': " + why);
  };
  auto integer = [&](std::string_view s) {
    Rational q = parse_rational(s);
    if (q.get_den() != 1 || q < 1) throw fail("bounds must be positive integers");
    return BigInt(q.get_num());
  };
  std::vector<std::string_view> parts;
  const char sep = text.find(':') != std::string_view::npos ? ':' : ',';
  for (std::size_t pos = 0;;) {
    auto next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  std::set<BigInt> out;
  if (sep == ',') {
    for (auto p : parts) out.insert(integer(p));
  } else if (parts.size() == 3) {
    BigInt lo = integer(parts[0]), hi = integer(parts[1]), step = integer(parts[2]);
    if (hi < lo) throw fail("hi < lo");
    if ((hi - lo) / step > 100000) throw fail("too many points");
    for (BigInt b = lo; b <= hi; b += step) out.insert(b);
  } else if (parts.size() == 4 && parts[2] == "geometric") {
    BigInt lo = integer(parts[0]), hi = integer(parts[1]), k = integer(parts[3]);
    if (hi < lo) throw fail("hi < lo");
    if (k > 100000) throw fail("too many points");
    const long count = k.get_si();
    if (count == 1) {
      out.insert(lo);
    } else {
      const double llo = log_of(lo), lhi = log_of(hi);
      for (long j = 0; j < count; ++j) {
        if (j == 0) {
          out.insert(lo);
        } else if (j == count - 1) {
          out.insert(hi);
        } else {
          double v = std::exp(llo + (lhi - llo) * static_cast<double>(j) / static_cast<double>(count - 1));
          out.insert(BigInt(static_cast<long>(std::llround(v))));
        }
      }
    }
  } else {
    throw fail("expected lo:hi:step or lo:hi:geometric:k");
  }
  return {out.begin(), out.end()};
}

std::vector<CountRecord> count_grid(const Fan& fan, const RatVec& beta, std::span<const BigInt> grid, bool boundary,
                                    const CountOptions& options) {
  std::vector<CountRecord> out;
  for (const auto& B : grid) {
    BoundSpec spec{B, beta};
    out.push_back(boundary ? count_boundary(fan, spec, options) : count_torus(fan, spec, options));
  }
  return out;
}

}  // namespace toric
