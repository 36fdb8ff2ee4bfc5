#pragma once

// The normalized tangent sum T_m and both sides of every explicit inequality
// on Lehmer counts: the two-sided T_m bound, the M_p / N_p / N_p(e) / G_p
// deviation bounds, the LPR existence criteria, and Robin's bound on omega.
//
// All logarithms are natural. Strict inequalities carry no epsilon; a
// failure by less than kNearMissBand is flagged as a near miss.

#include <cstdint>
#include <optional>
#include <string_view>

#include "lehmer/arith.hpp"

namespace lehmer {

inline constexpr double kNearMissBand = 1e-9;

/// Largest m for which T_m is summed directly; beyond it the upper bound
/// (2/pi)(1 + 1.549/log m) stands in for T_m, and 1/2 for T_m^2.
inline constexpr u64 kTangentSumCap = 2'000'000;

/// Smallest odd m from which T_m^2 < 1/2 is guaranteed.
inline constexpr u64 kTSquaredHalfFrom = 1637;

inline constexpr double kLemma1LowerConstant = 0.548;
inline constexpr double kLemma1UpperConstant = 1.549;

enum class BoundId {
  kLemma1Lower,
  kLemma1Upper,
  kThm1,
  kThm1Simplified,
  kThm2,
  kThm2Simplified,
  kThm4,
  kThm6,
  kThm6Simplified,
  kCorollary1,
  kCorollaryDundee,
  kRobin,
};

std::string_view to_string(BoundId id);

/// One inequality instance: |exact - center| < bound.
struct BoundReport {
  BoundId id = BoundId::kThm1;
  u64 p_or_m = 0;
  double exact = 0.0;
  double center = 0.0;
  double bound = 0.0;
  bool holds = false;  // slack > 0
  double slack = 0.0;  // bound - |exact - center|
  bool near_miss = false;  // |slack| < kNearMissBand
};

BoundReport make_report(BoundId id, u64 p_or_m, double exact, double center, double bound);

struct TangentSumValue {
  u64 m = 0;
  double T = 0.0;
  double sum = 0.0;  // sum_{j=1}^{(m-1)/2} tan(pi j / m)
};

/// T_m = 2 sum_{j<=(m-1)/2} tan(pi j/m) / (m log m), Kahan-summed in
/// ascending j. Requires odd 3 <= m <= kTangentSumCap.
TangentSumValue compute_T(u64 m);

double lemma1_lower(u64 m);
double lemma1_upper(u64 m);

/// T_p^2 for use in bounds: exact up to the cap, otherwise
/// min(lemma1_upper(p)^2, 1/2), with the 1/2 only once p >= 1637.
double t_squared(u64 p, u64 exact_cap = kTangentSumCap);

struct Lemma1Check {
  TangentSumValue t;
  BoundReport lower;  // exact = lower bound, bound = T
  BoundReport upper;  // exact = T, bound = upper bound
  bool t_squared_below_half = false;
};

Lemma1Check lemma1_check(u64 m);

enum class Form { kExact, kSimplified };

/// |M_p - (p-1)/2| < T_p^2 sqrt(p) log^2 p, or (1/2) sqrt(p) log^2 p.
/// The exact form needs p > 3; the simplified form accepts p = 3.
BoundReport thm2_bound(u64 p, u64 M, Form form, std::optional<double> t_sq = {});
BoundReport thm2_bound(const PrimeContext& ctx, Form form);

/// |N_p - phi(p-1)/2| < T_p^2 theta W sqrt(p) log^2 p (T_p^2 -> 1/2 when
/// simplified). p > 3.
BoundReport thm1_bound(const PrimeContext& ctx, u64 N, Form form,
                       std::optional<double> t_sq = {});
BoundReport thm1_bound(const PrimeContext& ctx, Form form);

/// |N(e) - theta_e (p-1)/2| < T_p^2 theta_e W_e sqrt(p) log^2 p, e even
/// divisor of p-1.
BoundReport thm4_bound(const PrimeContext& ctx, u64 e, u64 N_e,
                       std::optional<double> t_sq = {});
BoundReport thm4_bound(const PrimeContext& ctx, u64 e);

/// |G_p - theta^2 (p-2)/4| < (theta^2/4) T_p^2 [W^2(9 log^2 p + 1) - 1] sqrt(p);
/// simplified replaces T_p^2 by 1/2. p > 3.
BoundReport thm6_bound(const PrimeContext& ctx, u64 G, Form form,
                       std::optional<double> t_sq = {});
BoundReport thm6_bound(const PrimeContext& ctx, Form form);

/// sqrt(p) > 2 T_p^2 W log^2 p + p^{-1/2}, reported with exact = right side,
/// bound = sqrt(p). p > 3.
BoundReport corollary1_report(const PrimeContext& ctx, std::optional<double> t_sq = {});
/// sqrt(p) > W log^2 p + p^{-1/2}. p > 7.
BoundReport dundee_report(u64 p, u64 W);

/// Existence criteria with the conservative analytic margin: true only when
/// the left side exceeds the right by more than kNearMissBand.
bool corollary1_condition(const PrimeContext& ctx, std::optional<double> t_sq = {});
bool dundee_condition(const PrimeContext& ctx);

/// 1.4 log n / log log n, n >= 3.
double robin_omega_bound(u64 n);
BoundReport robin_report(u64 n);

}  // namespace lehmer
