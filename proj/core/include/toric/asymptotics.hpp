#pragma once

// Exponent fits on count grids and the two candidate exponents: sum of beta, and the
// LP value max { sum t_e : t >= 0, t_e <= beta_e, sum_e t_e e = 0 }.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "toric/arith.hpp"
#include "toric/enumerate.hpp"
#include "toric/fan.hpp"

namespace toric {

struct GridPoint {
  BigInt B;
  double count = 0.0;
};

struct FitResult {
  double sigma_hat = 0.0;
  double log_c_hat = 0.0;
  double residual_rms = 0.0;
  std::vector<GridPoint> grid;  // points actually used
};

// OLS of log count on log B over points with B >= min_B. Needs 4 distinct B and positive counts.
FitResult fit_exponent(std::span<const GridPoint> grid, long min_B = 10);

Rational paper_exponent(const RatVec& beta);
Rational lp_exponent(const Fan& fan, const RatVec& beta);

struct TauberianRow {
  BigInt B;
  std::uint64_t count = 0;
  double ratio_sum_beta = 0.0;  // count / B^{sum beta}
  double ratio_lp = 0.0;        // count / B^{lp}
};

struct TauberianTable {
  Rational sum_beta, lp;
  std::vector<TauberianRow> rows;
  // A normalization is stable when its ratios over the last half of the rows
  // have (max - min) / max below 0.1.
  bool sum_beta_stable = false;
  bool lp_stable = false;
};

TauberianTable tauberian_table(const Fan& fan, const RatVec& beta, std::span<const CountRecord> records);

struct ComparatorReport {
  Rational sum_beta, lp_exponent;
  FitResult fit;
  TauberianTable table;
  std::map<std::vector<RayId>, FitResult> stratum_fits;  // only with boundary records
  std::vector<std::string> verdicts;
};

ComparatorReport report(const Fan& fan, const RatVec& beta, std::span<const CountRecord> records,
                        double tolerance = 0.15);

// "lo:hi:step", "lo:hi:geometric:k" or "b1,b2,...", returned sorted without duplicates.
std::vector<BigInt> parse_grid(std::string_view text);

std::vector<CountRecord> count_grid(const Fan& fan, const RatVec& beta, std::span<const BigInt> grid,
                                    bool boundary, const CountOptions& options = {});

}  // namespace toric
