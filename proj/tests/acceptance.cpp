// Acceptance suite: one PASS/FAIL/SKIP line per criterion, followed by
// indented detail lines. Exit status is nonzero if any criterion fails.
//
// AC10 (full scan to 7.1e8) runs only when LEHMER_FULL=1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lehmer/bounds.hpp"
#include "lehmer/charsum_verify.hpp"
#include "lehmer/lehmer.hpp"
#include "lehmer/primes.hpp"
#include "lehmer/scan.hpp"
#include "lehmer/sieve.hpp"

using namespace lehmer;

namespace {

// Tolerances.
constexpr double kTangentTolerance = 1e-8;
constexpr int kConstantDecimals = 5;

// Reference values quoted by the source analysis.
constexpr double kOmega12Threshold = 3.2e12;
constexpr double kOmega12FloorAbove = 7e12;
constexpr double kOmega9Threshold = 1.3e9;
constexpr double kOmega9FloorAbove = 2.2e8;
constexpr double kOmega9WorstDelta = 0.33;
constexpr double kOmega8Cap = 6.3e8;
constexpr double kOmega7Cap = 3.1e8;
constexpr double kUnsievedCap = 7.1e8;
constexpr u64 kOmega9KMax = 6'200'000;
constexpr u64 kOmega9Count = 81;
constexpr u64 kOmega9LargestPMinus1 = 1'295'163'870;
constexpr u64 kOmega9PurpleFailuresQuoted = 39;
constexpr double kFootnoteDelta = 0.39;
constexpr u64 kFullScanHi = 710'000'000;
constexpr u64 kFullScanPrimes = 36'743'905;

struct Outcome {
  enum Status { kPass, kFail, kSkip } status = kPass;
  std::vector<std::string> details;

  void fail(std::string why) {
    status = kFail;
    details.push_back("FAIL: " + std::move(why));
  }
  void info(std::string what) { details.push_back(std::move(what)); }
  void require(bool ok, const std::string& what) {
    if (ok) {
      info("ok: " + what);
    } else {
      fail(what);
    }
  }
};

int failures = 0;

unsigned jobs() {
  if (const char* env = std::getenv("LEHMER_JOBS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <typename F>
void run(const char* id, const char* title, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const char* tag = o.status == Outcome::kPass ? "PASS" : o.status == Outcome::kFail ? "FAIL" : "SKIP";
  if (o.status == Outcome::kFail) ++failures;
  std::printf("%s %s %s (%.1fs)\n", tag, id, title, secs);
  for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Round up to two significant figures: the quoted thresholds are caps.
double ceil_two_sig(double x) {
  const double scale = std::pow(10.0, std::floor(std::log10(x)) - 1.0);
  return std::ceil(x / scale - 1e-9) * scale;
}

bool same_two_sig(double a, double b) { return std::abs(a - b) <= 1e-9 * b; }

void threshold_line(Outcome& o, const char* name, double computed, double quoted) {
  const double rounded = ceil_two_sig(computed);
  const bool ok = same_two_sig(rounded, quoted) && computed <= quoted;
  o.require(ok, std::string(name) + ": computed " + fmt("%.4g", computed) + " -> " +
                    fmt("%.2g", rounded) + " vs quoted " + fmt("%.2g", quoted));
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace

int main() {
  std::printf("acceptance suite, %u worker thread(s)\n", jobs());

  run("AC1", "small-prime ground truth", [](Outcome& o) {
    o.require(count_lehmer(PrimeContext(3)).M == 0, "M_3 = 0");
    const auto seven = count_lehmer(PrimeContext(7));
    o.require(seven.M == 0, "M_7 = 0");
    o.require(seven.N == 0, "N_7 = 0");
    std::vector<u64> absent;
    u64 primes = 0;
    for (u64 p : primes_up_to(1'000'000)) {
      if (p == 2) continue;
      ++primes;
      if (!find_first_lpr(PrimeContext(p))) absent.push_back(p);
    }
    o.require(absent == std::vector<u64>{3, 7},
              "first LPR absent exactly for {3, 7} among " + std::to_string(primes) +
                  " odd primes <= 10^6 (absent count " + std::to_string(absent.size()) + ")");
  });

  run("AC2", "M_p deviation bound, p <= 10^4", [](Outcome& o) {
    u64 exact_fail = 0, simple_fail = 0, checked = 0;
    double min_slack = 1e300;
    for (u64 p : primes_up_to(10'000)) {
      if (p < 3) continue;
      const PrimeContext ctx = PrimeContext(p).with_inverse_table();
      const u64 M = count_lehmer(ctx).M;
      ++checked;
      if (!thm2_bound(p, M, Form::kSimplified).holds) ++simple_fail;
      if (p > 3) {
        const auto r = thm2_bound(p, M, Form::kExact);
        if (!r.holds) ++exact_fail;
        min_slack = std::min(min_slack, r.slack);
      }
    }
    o.require(exact_fail == 0, "exact-T form, 3 < p <= 10^4: " + std::to_string(exact_fail) +
                                   " failures, min slack " + fmt("%.4g", min_slack));
    o.require(simple_fail == 0, "(1/2) form, " + std::to_string(checked) +
                                    " primes including p = 3: " + std::to_string(simple_fail) +
                                    " failures");
  });

  run("AC3", "N_p and N_p(e) deviation bounds", [](Outcome& o) {
    u64 n_fail = 0, e_fail = 0, e_checked = 0;
    for (u64 p : primes_up_to(10'000)) {
      if (p <= 3) continue;
      const PrimeContext ctx = PrimeContext(p).with_inverse_table();
      const double t_sq = t_squared(p);
      if (!thm1_bound(ctx, count_lehmer(ctx).N, Form::kExact, t_sq).holds) ++n_fail;
      if (p > 2'000) continue;
      for (u64 e = 2; e < p; e += 2) {
        if ((p - 1) % e) continue;
        ++e_checked;
        if (!thm4_bound(ctx, e, count_lehmer_efree(ctx, e), t_sq).holds) ++e_fail;
      }
    }
    o.require(n_fail == 0, "N_p bound, 3 < p <= 10^4: " + std::to_string(n_fail) + " failures");
    o.require(e_fail == 0, "N_p(e) bound, 3 < p <= 2000, " + std::to_string(e_checked) +
                               " (p, e) pairs: " + std::to_string(e_fail) + " failures");
  });

  run("AC4", "G_p deviation bound, 3 < p <= 3000", [](Outcome& o) {
    u64 fail = 0;
    double min_slack = 1e300;
    for (u64 p : primes_up_to(3'000)) {
      if (p <= 3) continue;
      const PrimeContext ctx = PrimeContext(p).with_inverse_table();
      const auto r = thm6_bound(ctx, count_golomb_lehmer_pairs(ctx), Form::kExact);
      if (!r.holds) ++fail;
      min_slack = std::min(min_slack, r.slack);
    }
    o.require(fail == 0, std::to_string(fail) + " failures, min slack " + fmt("%.4g", min_slack));
  });

  run("AC5", "two-sided bound on T_m", [](Outcome& o) {
    u64 fail = 0, half_fail = 0, near = 0;
    for (u64 m = 3; m <= 10'000; m += 2) {
      const auto c = lemma1_check(m);
      if (!c.lower.holds || !c.upper.holds) ++fail;
      if (c.lower.near_miss || c.upper.near_miss) ++near;
      if (m >= 1'637 && !c.t_squared_below_half) ++half_fail;
    }
    o.require(fail == 0, "bounds for odd 3 <= m <= 10^4: " + std::to_string(fail) +
                             " failures, " + std::to_string(near) + " within the 1e-9 band");
    o.require(half_fail == 0, "T_m^2 < 1/2 for odd m in [1637, 10^4]: " +
                                  std::to_string(half_fail) + " failures");
    const double constant = 1.0 + std::log(2.0 / std::numbers::pi);
    const double scale = std::pow(10.0, kConstantDecimals);
    // Quoted as a truncated decimal expansion.
    o.require(std::floor(constant * scale) / scale == 0.54841,
              "1 + log(2/pi) = " + fmt("%.8f", constant) + " = 0.54841...");
  });

  run("AC6", "character-sum bounds", [](Outcome& o) {
    const unsigned j = jobs();
    for (const auto& r : {verify_kloosterman(200, j), verify_twisted(100, j),
                          verify_double_twisted(100, j)}) {
      o.require(r.ok(), r.family + " p <= " + std::to_string(r.p_max) + ": " +
                            std::to_string(r.sums_checked) + " sums, " +
                            std::to_string(r.violations) + " violations, max |S|/sqrt(p) " +
                            fmt("%.6f", r.max_ratio) + " (bound " +
                            fmt("%.0f", r.bound_factor) + ")");
    }
    const auto t = verify_tangent_identity(500, kTangentTolerance);
    o.require(t.ok(), "tangent identity p <= 500: " + std::to_string(t.sums_checked) +
                          " sums, max error " + fmt("%.3g", t.max_abs_error));
  });

  run("AC7", "sieve inequalities and certifier soundness", [](Outcome& o) {
    u64 l3_fail = 0, l4_fail = 0, l3_checked = 0, l4_checked = 0;
    for (u64 p : primes_up_to(10'000)) {
      if (p < 5) continue;
      const PrimeContext ctx = PrimeContext(p).with_inverse_table();
      const Rational n(static_cast<std::int64_t>(count_lehmer(ctx).N));
      const double t_sq = t_squared(p);
      for (unsigned r = 1; r <= ctx.fact_p_minus_1().omega(); ++r) {
        const auto sp = make_sieve_params(ctx.fact_p_minus_1(), r);
        const auto b = lemma3_lower_bound(ctx, sp);
        ++l3_checked;
        if (n < b.first_form || n < b.refined) ++l3_fail;
        for (u64 q : sp.sieving_primes) {
          ++l4_checked;
          if (to_double(lemma4_exact_difference(ctx, sp, q)) >= lemma4_term_bound(sp, q, t_sq)) {
            ++l4_fail;
          }
        }
      }
    }
    o.require(l3_fail == 0, "sieve lower bound, " + std::to_string(l3_checked) + " (p, r): " +
                                std::to_string(l3_fail) + " failures");
    o.require(l4_fail == 0, "per-prime term bound, " + std::to_string(l4_checked) +
                                " (p, r, p_i): " + std::to_string(l4_fail) + " failures");

    u64 unsound = 0, analytic = 0, primes = 0;
    for (u64 p : primes_up_to(1'000'000)) {
      ++primes;
      const auto cert = certify_existence(p);
      const bool excluded = p == 2 || p == 3 || p == 7;
      if (excluded != (cert.verdict == Verdict::kNoLPR)) ++unsound;
      if (excluded) continue;
      if (!is_exists(cert.verdict)) ++unsound;
      if (cert.verdict == Verdict::kExistsAnalyticUnsieved ||
          cert.verdict == Verdict::kExistsAnalyticSieved) {
        ++analytic;
        if (!find_first_lpr(PrimeContext(p))) ++unsound;
      }
    }
    o.require(unsound == 0, "certify over " + std::to_string(primes) + " primes <= 10^6 (" +
                                std::to_string(analytic) + " analytic): " +
                                std::to_string(unsound) + " unsound");
  });

  run("AC8", "per-omega threshold reproduction", [](Outcome& o) {
    const auto t = omega_threshold_table();
    const auto& twelve = t.rows[11];
    const Rational delta12 = Rational(1) - Rational(1, 29) - Rational(1, 31) - Rational(1, 37);
    o.require(twelve.s == 3 && twelve.worst_delta == delta12,
              "omega=12 s=3 delta = 1 - 1/29 - 1/31 - 1/37 = " +
                  fmt("%.5f", to_double(twelve.worst_delta)));
    threshold_line(o, "omega=12 threshold", twelve.threshold, kOmega12Threshold);
    o.require(twelve.primorial_floor > kOmega12FloorAbove && twelve.closed,
              "omega=12 primorial floor " + fmt("%.4g", twelve.primorial_floor) + " > 7e12, closed");

    const auto& nine = t.rows[8];
    threshold_line(o, "omega=9 s=7 threshold", nine.threshold, kOmega9Threshold);
    o.require(nine.primorial_floor > kOmega9FloorAbove &&
                  ceil_two_sig(nine.primorial_floor) < 2 * kOmega9FloorAbove,
              "omega=9 primorial floor " + fmt("%.4g", nine.primorial_floor) + " ~ 2.2e8");
    o.require(std::floor(to_double(nine.worst_delta) * 100) / 100 == kOmega9WorstDelta,
              "omega=9 worst-case delta " + fmt("%.5f", to_double(nine.worst_delta)) + " = 0.33...");

    threshold_line(o, "omega=8 s=6 cap", t.rows[7].threshold, kOmega8Cap);
    threshold_line(o, "omega=7 s=5 cap", t.rows[6].threshold, kOmega7Cap);
    threshold_line(o, "unsieved cap (omega <= 6)", t.unsieved_cap, kUnsievedCap);

    // Diagnostic: the omega=7 figure matches when delta is truncated to 0.42.
    const double truncated = condition_threshold(4.0 * (4.0 / 0.42 + 2.0));
    o.info("note: omega=7 with delta truncated to 0.42 gives " + fmt("%.4g", truncated) +
           " (exact worst-case delta " + fmt("%.5f", to_double(t.rows[6].worst_delta)) + ")");
  });

  run("AC9", "210k+1 enumeration for omega(p-1) = 9", [](Outcome& o) {
    const auto list = enumerate_omega9_candidates(kOmega9KMax, jobs());
    o.require(list.size() == kOmega9Count, "k <= 6.2e6: " + std::to_string(list.size()) +
                                               " primes with omega(p-1) = 9");
    if (list.empty()) return;
    o.require(list.back() - 1 == kOmega9LargestPMinus1,
              "largest p - 1 = " + std::to_string(list.back() - 1));
    const auto sp = make_sieve_params(factorize(list.back() - 1), 2);
    o.require(sp.s() == 7 && std::floor(sp.delta_value() * 100) / 100 == kFootnoteDelta,
              "its s=7 delta = " + fmt("%.5f", sp.delta_value()));
    u64 purple_fail = 0;
    for (u64 p : list) {
      const auto params = make_sieve_params(factorize(p - 1), 2);
      if (!(params.delta > 0 && theorem5_condition(params, SieveMode::kPurple))) ++purple_fail;
    }
    o.info("purple (s=7) fails for " + std::to_string(purple_fail) + " of " +
           std::to_string(list.size()) + "; quoted: all but " +
           std::to_string(kOmega9PurpleFailuresQuoted) + " satisfy it");
    o.require(purple_fail == kOmega9PurpleFailuresQuoted, "purple failure count matches");
  });

  run("AC10", "full scan of primes <= 7.1e8", [](Outcome& o) {
    const char* full = std::getenv("LEHMER_FULL");
    if (!full || std::string(full) != "1") {
      o.status = Outcome::kSkip;
      o.info("opt-in: set LEHMER_FULL=1");
      return;
    }
    ScanConfig c;
    c.lo = 2;
    c.hi = kFullScanHi;
    c.checks = kCheckCertify;
    c.jobs = jobs();
    c.stable = true;
    c.format = ScanFormat::kCsv;
    c.out_path = (std::filesystem::temp_directory_path() / "lehmer_acceptance_full.csv").string();
    std::ostringstream unused;
    const auto s = run_scan(c, unused);
    std::filesystem::remove(c.out_path);
    o.require(s.primes == kFullScanPrimes, std::to_string(s.primes) + " primes");
    o.require(s.failures == 0, std::to_string(s.failures) + " primes without an LPR or verdict");
    for (const auto& [verdict, count] : s.verdicts) {
      o.info(verdict + ": " + std::to_string(count));
    }
  });

  run("AC11", "scan determinism across worker counts", [](Outcome& o) {
    ScanConfig c;
    c.lo = 5;
    c.hi = 100'000;
    c.stable = true;
    c.jobs = 1;
    std::ostringstream one;
    const auto s1 = run_scan(c, one);
    c.jobs = 8;
    std::ostringstream eight;
    const auto s8 = run_scan(c, eight);
    o.require(one.str() == eight.str() && s1.to_json() == s8.to_json(),
              "checks " + checks_to_string(c.checks) + ": --jobs 1 and --jobs 8 byte-identical (" +
                  std::to_string(one.str().size()) + " bytes, " + std::to_string(s1.primes) +
                  " primes, " + std::to_string(s1.failures) + " failures)");
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
