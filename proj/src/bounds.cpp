#include "lehmer/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lehmer/lehmer.hpp"

namespace lehmer {

namespace {

void require_prime_above(u64 p, u64 floor, const char* what) {
  if (p <= floor || !is_prime(p)) {
    throw std::invalid_argument(std::string(what) + ": p = " + std::to_string(p) +
                                " must be a prime > " + std::to_string(floor));
  }
}

double log_squared(u64 p) {
  const double l = std::log(static_cast<double>(p));
  return l * l;
}

double theta_value(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// t_squared is O(p); only evaluate it when the caller did not supply T_p^2.
double resolve_t_sq(std::optional<double> t_sq, u64 p) {
  return t_sq ? *t_sq : t_squared(p);
}

}  // namespace

std::string_view to_string(BoundId id) {
  switch (id) {
    case BoundId::kLemma1Lower: return "Lemma1Lower";
    case BoundId::kLemma1Upper: return "Lemma1Upper";
    case BoundId::kThm1: return "Thm1";
    case BoundId::kThm1Simplified: return "Thm1Simplified";
    case BoundId::kThm2: return "Thm2";
    case BoundId::kThm2Simplified: return "Thm2Simplified";
    case BoundId::kThm4: return "Thm4";
    case BoundId::kThm6: return "Thm6";
    case BoundId::kThm6Simplified: return "Thm6Simplified";
    case BoundId::kCorollary1: return "Corollary1";
    case BoundId::kCorollaryDundee: return "CorollaryDundee";
    case BoundId::kRobin: return "Robin";
  }
  return "?";
}

BoundReport make_report(BoundId id, u64 p_or_m, double exact, double center, double bound) {
  BoundReport r;
  r.id = id;
  r.p_or_m = p_or_m;
  r.exact = exact;
  r.center = center;
  r.bound = bound;
  r.slack = bound - std::abs(exact - center);
  r.holds = r.slack > 0.0;
  r.near_miss = std::abs(r.slack) < kNearMissBand;
  return r;
}

TangentSumValue compute_T(u64 m) {
  if (m < 3 || m % 2 == 0) {
    throw std::invalid_argument("compute_T: m = " + std::to_string(m) + " must be odd and >= 3");
  }
  if (m > kTangentSumCap) {
    throw std::invalid_argument("compute_T: m = " + std::to_string(m) + " exceeds the cap");
  }
  // tan(pi j/m) = cot(pi (m - 2j) / (2m)); the small cot argument keeps full
  // relative accuracy for the terms near pi/2, which dominate the sum.
  const long double two_m = 2.0L * static_cast<long double>(m);
  double sum = 0.0;
  double carry = 0.0;
  for (u64 j = 1; j <= (m - 1) / 2; ++j) {
    const long double angle = std::numbers::pi_v<long double> *
                              static_cast<long double>(m - 2 * j) / two_m;
    const double term = static_cast<double>(1.0L / std::tan(angle));
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  TangentSumValue v;
  v.m = m;
  v.sum = sum;
  v.T = 2.0 * sum / (static_cast<double>(m) * std::log(static_cast<double>(m)));
  return v;
}

double lemma1_lower(u64 m) {
  return (2.0 / std::numbers::pi) * (1.0 + kLemma1LowerConstant / std::log(static_cast<double>(m)));
}

double lemma1_upper(u64 m) {
  return (2.0 / std::numbers::pi) * (1.0 + kLemma1UpperConstant / std::log(static_cast<double>(m)));
}

double t_squared(u64 p, u64 exact_cap) {
  if (p <= exact_cap && p <= kTangentSumCap) {
    const double t = compute_T(p).T;
    return t * t;
  }
  const double up = lemma1_upper(p);
  const double sq = up * up;
  return p >= kTSquaredHalfFrom ? std::min(sq, 0.5) : sq;
}

Lemma1Check lemma1_check(u64 m) {
  Lemma1Check c;
  c.t = compute_T(m);
  c.lower = make_report(BoundId::kLemma1Lower, m, lemma1_lower(m), 0.0, c.t.T);
  c.upper = make_report(BoundId::kLemma1Upper, m, c.t.T, 0.0, lemma1_upper(m));
  c.t_squared_below_half = c.t.T * c.t.T < 0.5;
  return c;
}

BoundReport thm2_bound(u64 p, u64 M, Form form, std::optional<double> t_sq) {
  if (form == Form::kExact) {
    require_prime_above(p, 3, "thm2_bound");
  } else {
    require_prime_above(p, 2, "thm2_bound");
  }
  const double factor = form == Form::kExact ? resolve_t_sq(t_sq, p) : 0.5;
  const double bound = factor * std::sqrt(static_cast<double>(p)) * log_squared(p);
  return make_report(form == Form::kExact ? BoundId::kThm2 : BoundId::kThm2Simplified, p,
                     static_cast<double>(M), static_cast<double>(p - 1) / 2.0, bound);
}

BoundReport thm1_bound(const PrimeContext& ctx, u64 N, Form form, std::optional<double> t_sq) {
  const u64 p = ctx.p();
  require_prime_above(p, 3, "thm1_bound");
  const auto stats = multiplicative_stats(ctx.fact_p_minus_1());
  const double factor = form == Form::kExact ? resolve_t_sq(t_sq, p) : 0.5;
  const double bound = factor * theta_value(stats.theta) * static_cast<double>(stats.W) *
                       std::sqrt(static_cast<double>(p)) * log_squared(p);
  return make_report(form == Form::kExact ? BoundId::kThm1 : BoundId::kThm1Simplified, p,
                     static_cast<double>(N), static_cast<double>(stats.phi) / 2.0, bound);
}

BoundReport thm4_bound(const PrimeContext& ctx, u64 e, u64 N_e, std::optional<double> t_sq) {
  const u64 p = ctx.p();
  require_prime_above(p, 3, "thm4_bound");
  const auto primes = e_free_primes(e, ctx);
  Rational theta_e{1};
  for (u64 l : primes) {
    theta_e *= Rational(static_cast<std::int64_t>(l - 1), static_cast<std::int64_t>(l));
  }
  const double theta = theta_value(theta_e);
  const double W_e = static_cast<double>(u64{1} << primes.size());
  const double factor = resolve_t_sq(t_sq, p);
  const double bound =
      factor * theta * W_e * std::sqrt(static_cast<double>(p)) * log_squared(p);
  const double center = theta * static_cast<double>(p - 1) / 2.0;
  return make_report(BoundId::kThm4, p, static_cast<double>(N_e), center, bound);
}

BoundReport thm6_bound(const PrimeContext& ctx, u64 G, Form form, std::optional<double> t_sq) {
  const u64 p = ctx.p();
  require_prime_above(p, 3, "thm6_bound");
  const auto stats = multiplicative_stats(ctx.fact_p_minus_1());
  const double theta = theta_value(stats.theta);
  const double theta_sq = theta * theta;
  const double W = static_cast<double>(stats.W);
  const double bracket = W * W * (9.0 * log_squared(p) + 1.0) - 1.0;
  const double root = std::sqrt(static_cast<double>(p));
  const double bound = form == Form::kExact
                           ? theta_sq / 4.0 * resolve_t_sq(t_sq, p) * bracket * root
                           : theta_sq / 8.0 * bracket * root;
  const double center = theta_sq * static_cast<double>(p - 2) / 4.0;
  return make_report(form == Form::kExact ? BoundId::kThm6 : BoundId::kThm6Simplified, p,
                     static_cast<double>(G), center, bound);
}

BoundReport corollary1_report(const PrimeContext& ctx, std::optional<double> t_sq) {
  const u64 p = ctx.p();
  require_prime_above(p, 3, "corollary1");
  const double W = static_cast<double>(u64{1} << ctx.fact_p_minus_1().omega());
  const double root = std::sqrt(static_cast<double>(p));
  const double rhs = 2.0 * resolve_t_sq(t_sq, p) * W * log_squared(p) + 1.0 / root;
  return make_report(BoundId::kCorollary1, p, rhs, 0.0, root);
}

BoundReport dundee_report(u64 p, u64 W) {
  require_prime_above(p, 7, "dundee");
  const double root = std::sqrt(static_cast<double>(p));
  const double rhs = static_cast<double>(W) * log_squared(p) + 1.0 / root;
  return make_report(BoundId::kCorollaryDundee, p, rhs, 0.0, root);
}

bool corollary1_condition(const PrimeContext& ctx, std::optional<double> t_sq) {
  return corollary1_report(ctx, t_sq).slack > kNearMissBand;
}

bool dundee_condition(const PrimeContext& ctx) {
  const u64 W = u64{1} << ctx.fact_p_minus_1().omega();
  return dundee_report(ctx.p(), W).slack > kNearMissBand;
}

double robin_omega_bound(u64 n) {
  if (n < 3) throw std::invalid_argument("robin_omega_bound: n must be >= 3");
  const double l = std::log(static_cast<double>(n));
  return 1.4 * l / std::log(l);
}

BoundReport robin_report(u64 n) {
  const double bound = robin_omega_bound(n);
  const double omega = static_cast<double>(factorize(n).omega());
  return make_report(BoundId::kRobin, n, omega, 0.0, bound);
}

BoundReport thm2_bound(const PrimeContext& ctx, Form form) {
  return thm2_bound(ctx.p(), count_lehmer(ctx).M, form);
}

BoundReport thm1_bound(const PrimeContext& ctx, Form form) {
  return thm1_bound(ctx, count_lehmer_efree(ctx, ctx.p() - 1), form);
}

BoundReport thm4_bound(const PrimeContext& ctx, u64 e) {
  return thm4_bound(ctx, e, count_lehmer_efree(ctx, e));
}

BoundReport thm6_bound(const PrimeContext& ctx, Form form) {
  return thm6_bound(ctx, count_golomb_lehmer_pairs(ctx), form);
}

}  // namespace lehmer
