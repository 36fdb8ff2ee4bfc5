#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "lehmer/arith.hpp"
#include "lehmer/bounds.hpp"
#include "lehmer/charsum_verify.hpp"
#include "lehmer/lehmer.hpp"
#include "lehmer/scan.hpp"
#include "lehmer/sieve.hpp"

using namespace lehmer;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;
constexpr int kExitVerification = 4;

constexpr u64 kCharsumVerifyMax = 10'000;
constexpr u64 kPaperKMax = 6'200'000;

unsigned default_jobs() {
  if (const char* env = std::getenv("LEHMER_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid LEHMER_JOBS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string fraction(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double decimal(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string factorization_string(const Factorization& f) {
  std::string s;
  for (const auto& pp : f.factors) {
    if (!s.empty()) s += "*";
    s += std::to_string(pp.prime);
    if (pp.exponent > 1) s += "^" + std::to_string(pp.exponent);
  }
  return s.empty() ? "1" : s;
}

void require_prime(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

void print_report(const BoundReport& r) {
  std::printf("%-16s n=%llu exact=%.9g center=%.9g bound=%.9g slack=%.9g %s%s\n",
              std::string(to_string(r.id)).c_str(), static_cast<unsigned long long>(r.p_or_m),
              r.exact, r.center, r.bound, r.slack, r.holds ? "holds" : "FAILS",
              r.near_miss ? " (near miss)" : "");
}

int cmd_count(u64 p, std::optional<u64> e, u64 cap) {
  require_prime(p);
  if (p > cap) throw ResourceError("p exceeds the counting cap " + std::to_string(cap));
  if (p == 2) {
    std::printf("p=2 M=0 N=0 E=1 first_lpr=none G=0\n");
    return kExitOk;
  }
  const PrimeContext ctx = PrimeContext(p).with_inverse_table(cap);
  const auto c = count_lehmer(ctx, cap);
  const u64 G = count_golomb_lehmer_pairs(ctx, cap);
  std::printf("p=%llu M=%llu N=%llu E=%lld first_lpr=%s G=%llu\n",
              static_cast<unsigned long long>(p), static_cast<unsigned long long>(c.M),
              static_cast<unsigned long long>(c.N), static_cast<long long>(c.E),
              c.first_lpr ? std::to_string(*c.first_lpr).c_str() : "none",
              static_cast<unsigned long long>(G));
  if (e) {
    std::printf("N(%llu)=%llu\n", static_cast<unsigned long long>(*e),
                static_cast<unsigned long long>(count_lehmer_efree(ctx, *e, cap)));
  }
  return kExitOk;
}

int cmd_certify(u64 p, u64 direct_cap) {
  require_prime(p);
  CertifyOptions options;
  options.direct_search_cap = direct_cap;
  const auto cert = certify_existence(p, options);
  std::printf("p=%llu verdict=%s rule=\"%s\"\n", static_cast<unsigned long long>(p),
              std::string(to_string(cert.verdict)).c_str(), cert.rule.c_str());
  if (cert.params) {
    const auto& sp = *cert.params;
    std::printf("params f=%llu r=%u s=%zu delta=%s (%.6f) W_f=%llu mode=%s\n",
                static_cast<unsigned long long>(sp.f), sp.r, sp.s(), fraction(sp.delta).c_str(),
                sp.delta_value(), static_cast<unsigned long long>(sp.W_f),
                std::string(to_string(*cert.mode)).c_str());
  }
  if (cert.witness) std::printf("witness=%llu\n", static_cast<unsigned long long>(*cert.witness));
  if (p > 2) {
    const auto fact = factorize(p - 1);
    std::printf("p-1=%s omega=%zu\n", factorization_string(fact).c_str(), fact.omega());
    for (unsigned r = 1; r <= fact.omega(); ++r) {
      const auto sp = make_sieve_params(fact, r);
      std::printf("  core r=%u f=%llu s=%zu delta=%s (%.6f)", r,
                  static_cast<unsigned long long>(sp.f), sp.s(), fraction(sp.delta).c_str(),
                  sp.delta_value());
      if (sp.delta > 0 && p >= kTSquaredHalfFrom) {
        std::printf(" purple=%s", theorem5_condition(sp, SieveMode::kPurple) ? "true" : "false");
      }
      std::printf("\n");
    }
  }
  return kExitOk;
}

int cmd_scan(ScanConfig config) {
  const auto summary = run_scan(config, std::cout);
  std::cerr << summary.to_json() << '\n';
  return summary.failures == 0 ? kExitOk : kExitVerification;
}

int cmd_omega9(u64 k_max, unsigned jobs) {
  const auto table = omega_threshold_table();
  std::printf("omega  s  r  method        worst_delta  W_f   threshold   primorial   closed\n");
  for (const auto& row : table.rows) {
    std::printf("%5u %2u %2u  %-12s  %11.6f %5llu  %10.4g  %10.4g   %s\n", row.omega, row.s, row.r,
                row.method.c_str(), decimal(row.worst_delta),
                static_cast<unsigned long long>(row.W_f), row.threshold, row.primorial_floor,
                row.closed ? "yes" : "no");
  }
  std::printf("robin crossover %.4g; unsieved cap %.4g\n", table.robin_crossover,
              table.unsieved_cap);
  for (const auto& c : table.omega9_cases) {
    std::printf("omega=9, %llu does not divide p-1: floor %.4g, threshold %.4g, %s\n",
                static_cast<unsigned long long>(c.missing_prime), c.floor, c.threshold,
                c.closed ? "closed" : "open");
  }
  std::printf("omega=9 k_max from threshold: %llu\n",
              static_cast<unsigned long long>(table.omega9_k_max));

  const auto list = enumerate_omega9_candidates(k_max, jobs);
  u64 purple_failures = 0;
  for (u64 p : list) {
    const auto fact = factorize(p - 1);
    const auto sp = make_sieve_params(fact, 2);
    const bool purple = sp.delta > 0 && theorem5_condition(sp, SieveMode::kPurple);
    if (!purple) ++purple_failures;
    std::printf("%llu p-1=%s delta=%.6f purple=%s\n", static_cast<unsigned long long>(p),
                factorization_string(fact).c_str(), sp.delta_value(),
                purple ? "true" : "false");
  }
  std::printf("count=%zu\n", list.size());
  if (!list.empty()) {
    std::printf("largest p=%llu p-1=%llu\n", static_cast<unsigned long long>(list.back()),
                static_cast<unsigned long long>(list.back() - 1));
  }
  std::printf("purple (s=7) holds for %llu, fails for %llu\n",
              static_cast<unsigned long long>(list.size() - purple_failures),
              static_cast<unsigned long long>(purple_failures));
  return kExitOk;
}

int cmd_charsum_verify(u64 p_max, unsigned jobs) {
  if (p_max > kCharsumVerifyMax) {
    throw std::invalid_argument("charsum-verify: P_MAX must be <= " +
                                std::to_string(kCharsumVerifyMax));
  }
  bool ok = true;
  for (const auto& r :
       {verify_kloosterman(p_max, jobs), verify_twisted(p_max, jobs),
        verify_double_twisted(p_max, jobs), verify_tangent_identity(p_max),
        verify_orthogonality(p_max)}) {
    ok = ok && r.ok();
    std::printf("%-16s p_max=%llu primes=%llu sums=%llu violations=%llu", r.family.c_str(),
                static_cast<unsigned long long>(r.p_max), static_cast<unsigned long long>(r.primes),
                static_cast<unsigned long long>(r.sums_checked),
                static_cast<unsigned long long>(r.violations));
    if (r.bound_factor > 0) {
      std::printf(" max_ratio=%.9f (bound %.0f) worst_p=%llu\n", r.max_ratio, r.bound_factor,
                  static_cast<unsigned long long>(r.worst_p));
    } else {
      std::printf(" max_abs_error=%.3g worst_p=%llu\n", r.max_abs_error,
                  static_cast<unsigned long long>(r.worst_p));
    }
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_bounds(u64 p, std::optional<u64> e) {
  require_prime(p);
  if (p <= 3) throw std::invalid_argument("bounds: p must be > 3");
  const PrimeContext ctx = PrimeContext(p).with_inverse_table();
  const auto c = count_lehmer(ctx);
  const u64 G = count_golomb_lehmer_pairs(ctx);
  std::vector<BoundReport> reports;
  if (p <= kTangentSumCap) {
    const auto l1 = lemma1_check(p);
    std::printf("T_%llu=%.12f T^2<1/2: %s\n", static_cast<unsigned long long>(p), l1.t.T,
                l1.t_squared_below_half ? "yes" : "no");
    reports.push_back(l1.lower);
    reports.push_back(l1.upper);
  }
  const double t_sq = t_squared(p);
  reports.push_back(thm2_bound(p, c.M, Form::kExact, t_sq));
  reports.push_back(thm2_bound(p, c.M, Form::kSimplified));
  reports.push_back(thm1_bound(ctx, c.N, Form::kExact, t_sq));
  reports.push_back(thm1_bound(ctx, c.N, Form::kSimplified, t_sq));
  if (e) reports.push_back(thm4_bound(ctx, *e, count_lehmer_efree(ctx, *e), t_sq));
  reports.push_back(thm6_bound(ctx, G, Form::kExact, t_sq));
  reports.push_back(thm6_bound(ctx, G, Form::kSimplified, t_sq));
  reports.push_back(corollary1_report(ctx, t_sq));
  if (p > 7) {
    reports.push_back(dundee_report(p, u64{1} << ctx.fact_p_minus_1().omega()));
  }
  reports.push_back(robin_report(p - 1));
  bool ok = true;
  for (const auto& r : reports) {
    print_report(r);
    // The existence criteria are conditions, not invariants; only the
    // deviation bounds count as failures.
    if (r.id != BoundId::kCorollary1 && r.id != BoundId::kCorollaryDundee) ok = ok && r.holds;
  }
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lehmer primitive roots: counts, bounds, character sums and existence"};
  app.require_subcommand(1);
  unsigned jobs = 0;
  u64 counting_cap = kDefaultTableCap;

  auto* count = app.add_subcommand("count", "M_p, N_p, E_p, first LPR and G_p for a prime");
  u64 count_p = 0;
  std::optional<u64> count_e;
  count->add_option("P", count_p, "odd prime")->required();
  count->add_option("E", count_e, "even divisor of P-1 for N(E)");
  count->add_option("--counting-cap", counting_cap, "largest P for exact counting");

  auto* certify = app.add_subcommand("certify", "existence certificate for an LPR modulo P");
  u64 certify_p = 0;
  u64 direct_cap = CertifyOptions{}.direct_search_cap;
  certify->add_option("P", certify_p, "prime")->required();
  certify->add_option("--direct-cap", direct_cap, "largest P for direct search");

  auto* scan = app.add_subcommand("scan", "check every prime in a range");
  ScanConfig config;
  std::string range = "2:100000";
  std::string checks = "counts,bounds";
  std::string format = "json";
  scan->add_option("--range", range, "LO:HI inclusive");
  scan->add_option("--checks", checks, "comma list of counts,bounds,certify,golomb");
  scan->add_option("--jobs", jobs, "worker threads (default: $LEHMER_JOBS or core count)");
  scan->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--out", config.out_path, "output file (default stdout)");
  scan->add_flag("--stable", config.stable, "omit timings for byte-identical reports");
  scan->add_flag("--resume", config.resume, "continue from <out>.ckpt");
  scan->add_option("--counting-cap", config.counting_cap, "largest p for exact counting");
  scan->add_option("--checkpoint-every", config.checkpoint_every, "segments between checkpoints");
  scan->add_option("--max-segments", config.max_segments, "stop after N segments (0: no limit)");

  auto* omega9 = app.add_subcommand("omega9", "threshold table and the 210k+1 enumeration");
  u64 k_max = kPaperKMax;
  omega9->add_option("--kmax", k_max, "largest k")->check(CLI::PositiveNumber);
  omega9->add_option("--jobs", jobs, "worker threads");

  auto* charsum = app.add_subcommand("charsum-verify", "exhaustive character-sum bound checks");
  u64 p_max = 0;
  charsum->add_option("P_MAX", p_max, "largest prime")->required();
  charsum->add_option("--jobs", jobs, "worker threads");

  auto* bounds = app.add_subcommand("bounds", "every inequality for one prime");
  u64 bounds_p = 0;
  std::optional<u64> bounds_e;
  bounds->add_option("P", bounds_p, "prime > 3")->required();
  bounds->add_option("--e", bounds_e, "even divisor of P-1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  if (jobs == 0) jobs = default_jobs();

  try {
    if (*count) return cmd_count(count_p, count_e, counting_cap);
    if (*certify) return cmd_certify(certify_p, direct_cap);
    if (*scan) {
      const auto colon = range.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("--range must be LO:HI");
      config.lo = std::stoull(range.substr(0, colon));
      config.hi = std::stoull(range.substr(colon + 1));
      config.checks = parse_checks(checks);
      config.format = format == "csv" ? ScanFormat::kCsv : ScanFormat::kJson;
      config.jobs = jobs;
      return cmd_scan(config);
    }
    if (*omega9) return cmd_omega9(k_max, jobs);
    if (*charsum) return cmd_charsum_verify(p_max, jobs);
    if (*bounds) return cmd_bounds(bounds_p, bounds_e);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
