#pragma once

// Existence of Lehmer primitive roots: the core/sieving-prime decomposition
// of p-1, the sieve inequalities with exact counts, the sieved existence
// criterion, the per-omega threshold analysis, the 210k+1 enumeration for
// omega(p-1) = 9, and the end-to-end certifier.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/bounds.hpp"

namespace lehmer {

/// Split of the distinct primes of p-1 into a core f (the r smallest, 2
/// included) and sieving primes p_1 < ... < p_s (the rest).
struct SieveParams {
  u64 p = 0;
  u64 f = 0;
  unsigned r = 0;
  std::vector<u64> sieving_primes;
  Rational delta{1};  // 1 - sum 1/p_i, exact
  u64 W_f = 0;        // 2^r

  std::size_t s() const { return sieving_primes.size(); }
  double delta_value() const;
};

SieveParams make_sieve_params(const Factorization& fact_p_minus_1, unsigned r);

/// Supplies exact N(e) for even e dividing p-1.
using EfreeCounter = std::function<u64(u64 e)>;

struct Lemma3Bound {
  Rational first_form;  // sum N(p_i f) - (s-1) N(f)
  Rational refined;     // sum [N(p_i f) - theta_{p_i} N(f)] + delta N(f)
};

Lemma3Bound lemma3_lower_bound(const SieveParams& params, const EfreeCounter& count);
/// Exact counts by enumeration.
Lemma3Bound lemma3_lower_bound(const PrimeContext& ctx, const SieveParams& params);

/// 2 (1 - 1/p_i) W_f T_p^2 sqrt(p) log^2 p.
double lemma4_term_bound(const SieveParams& params, u64 p_i, std::optional<double> t_sq = {});

/// |N(p_i f) - theta_{p_i} N(f)|, exact.
Rational lemma4_exact_difference(const PrimeContext& ctx, const SieveParams& params, u64 p_i);

enum class SieveMode { kGold, kPurple };

std::string_view to_string(SieveMode mode);

/// Right side of the sieved criterion: gold uses 2 T_p^2, purple uses 1.
double theorem5_rhs(const SieveParams& params, SieveMode mode, std::optional<double> t_sq = {});

/// sqrt(p) > rhs with the analytic margin kNearMissBand. Throws
/// std::invalid_argument when delta <= 0, or for purple mode when p < 1637.
bool theorem5_condition(const SieveParams& params, SieveMode mode,
                        std::optional<double> t_sq = {});

/// Smallest X (found on a fine log grid, then bisected) beyond which
/// sqrt(x) > coefficient * log^2 x + x^{-1/2} holds for every x >= X.
double condition_threshold(double coefficient);

/// Crossover beyond which the unsieved criterion holds with W replaced by
/// 2^(1.4 log p / log log p).
double robin_crossover();

/// Product of the first n primes, as a double (exceeds 2^64 for n >= 16).
double primorial(unsigned n);

struct ThresholdRow {
  unsigned omega = 0;
  unsigned s = 0;
  unsigned r = 0;
  std::string method;  // "dundee", "purple" or "dundee+robin"
  Rational worst_delta{1};
  u64 W_f = 0;
  double threshold = 0.0;
  double primorial_floor = 0.0;
  bool closed = false;  // threshold <= floor: no residual primes
};

/// omega(p-1) = 9 with a small prime l not dividing p-1.
struct DivisibilityCase {
  u64 missing_prime = 0;
  double floor = 0.0;      // smallest possible p-1 without l
  double threshold = 0.0;  // purple threshold under the modified worst case
  bool closed = false;
};

struct ThresholdTable {
  std::vector<ThresholdRow> rows;  // omega = 1 .. 15
  double robin_crossover = 0.0;
  double unsieved_cap = 0.0;  // max threshold over the omega <= 6 rows
  std::vector<DivisibilityCase> omega9_cases;
  u64 omega9_k_max = 0;  // floor(omega-9 threshold / 210)
};

ThresholdTable omega_threshold_table();

/// Primes n = 210k + 1, 1 <= k <= k_max, with omega(n-1) = 9, ascending.
std::vector<u64> enumerate_omega9_candidates(u64 k_max, unsigned jobs = 1);

enum class Verdict {
  kExistsAnalyticUnsieved,
  kExistsAnalyticSieved,
  kExistsComputational,
  kNoLPR,
  kUndecided,
};

std::string_view to_string(Verdict v);
bool is_exists(Verdict v);

struct ExistenceCertificate {
  u64 p = 0;
  Verdict verdict = Verdict::kUndecided;
  std::string rule;
  std::optional<SieveParams> params;
  std::optional<SieveMode> mode;
  std::optional<u64> witness;
};

struct CertifyOptions {
  u64 direct_search_cap = 1'000'000'000;
  u64 tangent_cap = kTangentSumCap;
};

/// Decision tree: excluded primes, the unsieved criterion, the sieved
/// criterion over every core size, then a direct search below the cap.
/// Throws std::invalid_argument for composite p.
ExistenceCertificate certify_existence(u64 p, const CertifyOptions& options = {});
ExistenceCertificate certify_existence(const PrimeContext& ctx, const CertifyOptions& options = {});

}  // namespace lehmer
