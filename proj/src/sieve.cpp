#include "lehmer/sieve.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "lehmer/lehmer.hpp"
#include "lehmer/primes.hpp"

namespace lehmer {

namespace {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational reciprocal(u64 q) { return Rational(1, static_cast<std::int64_t>(q)); }

const std::vector<u64>& first_primes() {
  static const std::vector<u64> primes = primes_up_to(100);
  return primes;
}

// Largest zero crossing of h (as a function of log x) on [lo, hi], located on
// a grid and refined by bisection. Returns x = exp(crossing).
template <typename H>
double last_crossing(H&& h, long double lo, long double hi) {
  constexpr long double kStep = 1e-3L;
  long double last_negative = lo;
  bool seen_negative = false;
  for (long double t = lo; t <= hi; t += kStep) {
    if (h(t) <= 0.0L) {
      last_negative = t;
      seen_negative = true;
    }
  }
  if (!seen_negative) return std::exp(static_cast<double>(lo));
  long double a = last_negative;
  long double b = last_negative + kStep;
  for (int i = 0; i < 100; ++i) {
    const long double mid = (a + b) / 2.0L;
    if (h(mid) <= 0.0L) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return static_cast<double>(std::exp(b));
}

ThresholdRow purple_row(unsigned omega, unsigned s) {
  ThresholdRow row;
  row.omega = omega;
  row.s = s;
  row.r = omega - s;
  row.method = "purple";
  const auto& primes = first_primes();
  Rational delta{1};
  for (unsigned i = row.r; i < omega; ++i) delta -= reciprocal(primes[i]);
  row.worst_delta = delta;
  row.W_f = u64{1} << row.r;
  const double coefficient =
      static_cast<double>(row.W_f) * ((static_cast<double>(s) - 1.0) / to_double(delta) + 2.0);
  row.threshold = condition_threshold(coefficient);
  row.primorial_floor = primorial(omega);
  row.closed = row.threshold <= row.primorial_floor;
  return row;
}

ThresholdRow dundee_row(unsigned omega, std::string method) {
  ThresholdRow row;
  row.omega = omega;
  row.s = 0;
  row.r = omega;
  row.method = std::move(method);
  row.W_f = u64{1} << omega;
  row.threshold = condition_threshold(static_cast<double>(row.W_f));
  row.primorial_floor = primorial(omega);
  row.closed = row.threshold <= row.primorial_floor;
  return row;
}

// Sieving choice per omega for the purple criterion; 0 means unsieved.
unsigned sieving_count_for(unsigned omega) {
  switch (omega) {
    case 7: return 5;
    case 8: return 6;
    case 9: return 7;
    case 10: return 6;
    case 11: return 5;
    case 12: return 3;
    default: return 0;
  }
}

void verify_lpr_witness(const PrimeContext& ctx, u64 a) {
  if (!is_primitive_root(a, ctx.p(), ctx.fact_p_minus_1()) || !is_lehmer(a, ctx)) {
    throw std::logic_error("certify_existence: witness failed verification");
  }
}

}  // namespace

double SieveParams::delta_value() const { return to_double(delta); }

SieveParams make_sieve_params(const Factorization& fact_p_minus_1, unsigned r) {
  const auto& factors = fact_p_minus_1.factors;
  if (r < 1 || r > factors.size()) {
    throw std::invalid_argument("make_sieve_params: core size r = " + std::to_string(r) +
                                " outside [1, omega(p-1)]");
  }
  if (factors.front().prime != 2) {
    throw std::invalid_argument("make_sieve_params: core must be even (2 must divide p-1)");
  }
  SieveParams params;
  params.p = fact_p_minus_1.n + 1;
  params.r = r;
  params.f = 1;
  for (unsigned i = 0; i < r; ++i) params.f *= factors[i].prime;
  for (std::size_t i = r; i < factors.size(); ++i) {
    params.sieving_primes.push_back(factors[i].prime);
    params.delta -= reciprocal(factors[i].prime);
  }
  params.W_f = u64{1} << r;
  return params;
}

Lemma3Bound lemma3_lower_bound(const SieveParams& params, const EfreeCounter& count) {
  const auto n_f = static_cast<std::int64_t>(count(params.f));
  Lemma3Bound out{Rational(0), Rational(0)};
  for (u64 q : params.sieving_primes) {
    const auto n_qf = static_cast<std::int64_t>(count(q * params.f));
    out.first_form += n_qf;
    out.refined += Rational(n_qf) - (Rational(1) - reciprocal(q)) * n_f;
  }
  out.first_form -= (static_cast<std::int64_t>(params.s()) - 1) * n_f;
  out.refined += params.delta * n_f;
  return out;
}

Lemma3Bound lemma3_lower_bound(const PrimeContext& ctx, const SieveParams& params) {
  const auto table = ctx.with_inverse_table();
  return lemma3_lower_bound(params, [&](u64 e) { return count_lehmer_efree(table, e); });
}

double lemma4_term_bound(const SieveParams& params, u64 p_i, std::optional<double> t_sq) {
  const double t2 = t_sq ? *t_sq : t_squared(params.p);
  const double lp = std::log(static_cast<double>(params.p));
  return 2.0 * (1.0 - 1.0 / static_cast<double>(p_i)) * static_cast<double>(params.W_f) * t2 *
         std::sqrt(static_cast<double>(params.p)) * lp * lp;
}

Rational lemma4_exact_difference(const PrimeContext& ctx, const SieveParams& params, u64 p_i) {
  const auto table = ctx.with_inverse_table();
  const auto n_f = static_cast<std::int64_t>(count_lehmer_efree(table, params.f));
  const auto n_qf = static_cast<std::int64_t>(count_lehmer_efree(table, p_i * params.f));
  const Rational d = Rational(n_qf) - (Rational(1) - reciprocal(p_i)) * n_f;
  return d < 0 ? -d : d;
}

std::string_view to_string(SieveMode mode) {
  return mode == SieveMode::kGold ? "gold" : "purple";
}

double theorem5_rhs(const SieveParams& params, SieveMode mode, std::optional<double> t_sq) {
  if (params.delta <= 0) {
    throw std::invalid_argument("theorem5: delta must be positive");
  }
  const double p = static_cast<double>(params.p);
  const double factor = mode == SieveMode::kPurple ? 1.0
                                                   : 2.0 * (t_sq ? *t_sq : t_squared(params.p));
  const double lp = std::log(p);
  const double s_term = (static_cast<double>(params.s()) - 1.0) / params.delta_value() + 2.0;
  return factor * static_cast<double>(params.W_f) * s_term * lp * lp + 1.0 / std::sqrt(p);
}

bool theorem5_condition(const SieveParams& params, SieveMode mode, std::optional<double> t_sq) {
  if (mode == SieveMode::kPurple && params.p < kTSquaredHalfFrom) {
    throw std::invalid_argument("theorem5 purple form requires p >= 1637");
  }
  const double rhs = theorem5_rhs(params, mode, t_sq);
  return std::sqrt(static_cast<double>(params.p)) - rhs > kNearMissBand;
}

double condition_threshold(double coefficient) {
  const long double k = coefficient;
  auto h = [k](long double t) {
    const long double root = std::exp(t / 2.0L);
    return root - k * t * t - 1.0L / root;
  };
  return last_crossing(h, 1.0L, 200.0L);
}

double robin_crossover() {
  auto h = [](long double t) {
    const long double root = std::exp(t / 2.0L);
    const long double omega_max = 1.4L * t / std::log(t);
    return root - std::pow(2.0L, omega_max) * t * t - 1.0L / root;
  };
  return last_crossing(h, 3.0L, 200.0L);
}

double primorial(unsigned n) {
  const auto& primes = first_primes();
  if (n > primes.size()) throw std::invalid_argument("primorial: n too large");
  double product = 1.0;
  for (unsigned i = 0; i < n; ++i) product *= static_cast<double>(primes[i]);
  return product;
}

ThresholdTable omega_threshold_table() {
  ThresholdTable table;
  table.robin_crossover = robin_crossover();
  for (unsigned omega = 1; omega <= 15; ++omega) {
    const unsigned s = sieving_count_for(omega);
    if (s > 0) {
      table.rows.push_back(purple_row(omega, s));
    } else if (omega >= 13) {
      auto row = dundee_row(omega, "dundee+robin");
      row.closed = row.closed && table.robin_crossover <= row.primorial_floor;
      table.rows.push_back(row);
    } else {
      table.rows.push_back(dundee_row(omega, "dundee"));
    }
  }
  for (const auto& row : table.rows) {
    if (row.omega <= 6) table.unsieved_cap = std::max(table.unsieved_cap, row.threshold);
  }

  // omega = 9: if 3, 5 or 7 does not divide p-1, either p-1 is already past
  // the threshold or delta improves enough to close the case.
  const ThresholdRow& nine = table.rows[8];
  const auto& primes = first_primes();
  const double tenth_primorial = primorial(10);
  for (u64 missing : {u64{3}, u64{5}, u64{7}}) {
    DivisibilityCase c;
    c.missing_prime = missing;
    c.floor = tenth_primorial / static_cast<double>(missing);
    if (missing == 3) {
      c.threshold = nine.threshold;
    } else {
      // Core {2, 3}; sieving primes: the first ten primes without 2, 3, missing.
      Rational delta{1};
      for (unsigned i = 2; i < 10; ++i) {
        if (primes[i] != missing) delta -= reciprocal(primes[i]);
      }
      c.threshold = condition_threshold(4.0 * (6.0 / to_double(delta) + 2.0));
    }
    c.closed = c.floor > c.threshold;
    table.omega9_cases.push_back(c);
  }
  table.omega9_k_max = static_cast<u64>(nine.threshold / 210.0);
  return table;
}

std::vector<u64> enumerate_omega9_candidates(u64 k_max, unsigned jobs) {
  if (k_max == 0) return {};
  jobs = std::max(1u, jobs);
  constexpr u64 kBlock = 65'536;
  const u64 blocks = (k_max + kBlock - 1) / kBlock;
  std::vector<std::vector<u64>> found(blocks);
  std::atomic<u64> next{0};
  auto worker = [&] {
    for (u64 b = next++; b < blocks; b = next++) {
      const u64 k_lo = b * kBlock + 1;
      const u64 k_hi = std::min(k_max, (b + 1) * kBlock);
      for (u64 k = k_lo; k <= k_hi; ++k) {
        const u64 n = 210 * k + 1;
        if (is_prime(n) && factorize(n - 1).omega() == 9) found[b].push_back(n);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker);
  }
  std::vector<u64> out;
  for (const auto& block : found) out.insert(out.end(), block.begin(), block.end());
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kExistsAnalyticUnsieved: return "ExistsAnalyticUnsieved";
    case Verdict::kExistsAnalyticSieved: return "ExistsAnalyticSieved";
    case Verdict::kExistsComputational: return "ExistsComputational";
    case Verdict::kNoLPR: return "NoLPR";
    case Verdict::kUndecided: return "Undecided";
  }
  return "?";
}

bool is_exists(Verdict v) {
  return v == Verdict::kExistsAnalyticUnsieved || v == Verdict::kExistsAnalyticSieved ||
         v == Verdict::kExistsComputational;
}

ExistenceCertificate certify_existence(u64 p, const CertifyOptions& options) {
  if (!is_prime(p)) {
    throw std::invalid_argument("certify_existence: " + std::to_string(p) + " is not prime");
  }
  if (p == 2) return {p, Verdict::kNoLPR, "p = 2 excluded", {}, {}, {}};
  return certify_existence(PrimeContext(p), options);
}

ExistenceCertificate certify_existence(const PrimeContext& ctx, const CertifyOptions& options) {
  const u64 p = ctx.p();
  ExistenceCertificate cert;
  cert.p = p;
  if (p == 3 || p == 7) {
    cert.verdict = Verdict::kNoLPR;
    cert.rule = "excluded prime";
    return cert;
  }

  const auto& fact = ctx.fact_p_minus_1();
  const unsigned omega = static_cast<unsigned>(fact.omega());
  // Exact T_p costs O(p); it is only worth it where the purple/dundee forms
  // do not apply or no direct search is available.
  const bool use_exact_t = p < kTSquaredHalfFrom || p > options.direct_search_cap;
  std::optional<double> t_sq;
  auto exact_t_sq = [&] {
    if (!t_sq) t_sq = t_squared(p, options.tangent_cap);
    return *t_sq;
  };

  if (p > 7 && dundee_condition(ctx)) {
    cert.verdict = Verdict::kExistsAnalyticUnsieved;
    cert.rule = omega >= 13 ? "dundee (omega>=13, Robin)" : "dundee";
    return cert;
  }
  if (use_exact_t && corollary1_condition(ctx, exact_t_sq())) {
    cert.verdict = Verdict::kExistsAnalyticUnsieved;
    cert.rule = "corollary1";
    return cert;
  }

  for (unsigned r = 1; r <= omega; ++r) {
    auto params = make_sieve_params(fact, r);
    if (params.delta <= 0) continue;
    std::optional<SieveMode> mode;
    if (p >= kTSquaredHalfFrom && theorem5_condition(params, SieveMode::kPurple)) {
      mode = SieveMode::kPurple;
    } else if (use_exact_t && theorem5_condition(params, SieveMode::kGold, exact_t_sq())) {
      mode = SieveMode::kGold;
    }
    if (mode) {
      cert.verdict = Verdict::kExistsAnalyticSieved;
      cert.rule = "theorem5 " + std::string(to_string(*mode)) + " omega=" +
                  std::to_string(omega) + " r=" + std::to_string(r) + " s=" +
                  std::to_string(params.s());
      cert.params = std::move(params);
      cert.mode = mode;
      return cert;
    }
  }

  if (p <= options.direct_search_cap) {
    cert.witness = find_first_lpr(ctx);
    cert.rule = "direct search";
    if (cert.witness) {
      verify_lpr_witness(ctx, *cert.witness);
      cert.verdict = Verdict::kExistsComputational;
    } else {
      cert.verdict = Verdict::kNoLPR;
    }
    return cert;
  }

  cert.verdict = Verdict::kUndecided;
  cert.rule = "beyond direct-search cap";
  return cert;
}

}  // namespace lehmer
