#include "lehmer/arith.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "lehmer/primes.hpp"

namespace lehmer {

namespace {

using u128 = unsigned __int128;

// Trial division handles primes below this bound; the cofactor goes to
// Miller-Rabin and Pollard-Brent.
constexpr u64 kTrialBound = 1024;

const std::vector<u64>& trial_primes() {
  static const std::vector<u64> primes = primes_up_to(kTrialBound);
  return primes;
}

u64 abs_diff(u64 a, u64 b) { return a > b ? a - b : b - a; }

// Brent's variant of Pollard rho. n is odd, composite and not a prime power
// of a trial prime. Polynomial constants are tried in order c = 1, 2, ...
u64 pollard_brent(u64 n) {
  constexpr u64 kBatch = 128;
  for (u64 c = 1;; ++c) {
    auto step = [n, c](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    u64 y = 2;
    u64 x = y;
    u64 ys = y;
    u64 g = 1;
    u64 q = 1;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 limit = std::min(kBatch, r - k);
        for (u64 i = 0; i < limit; ++i) {
          y = step(y);
          q = mul_mod(q, abs_diff(x, y), n);
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs_diff(x, ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_cofactor(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  split_cofactor(d, out);
  split_cofactor(n / d, out);
}

}  // namespace

std::vector<u64> Factorization::primes() const {
  std::vector<u64> out;
  out.reserve(factors.size());
  for (const auto& pp : factors) out.push_back(pp.prime);
  return out;
}

u64 Factorization::radical() const {
  u64 r = 1;
  for (const auto& pp : factors) r *= pp.prime;
  return r;
}

bool Factorization::has_prime(u64 q) const {
  return std::any_of(factors.begin(), factors.end(),
                     [q](const PrimePower& pp) { return pp.prime == q; });
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> kSmall{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kSmall) {
    if (n % q == 0) return n == q;
  }
  if (n < 37 * 37) return true;

  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Base set verified complete for all n < 2^64.
  constexpr std::array<u64, 7> kBases{2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 base : kBases) {
    const u64 a = base % n;
    if (a == 0) continue;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization result;
  result.n = n;
  u64 rest = n;
  for (u64 q : trial_primes()) {
    if (q * q > rest) break;
    if (rest % q != 0) continue;
    unsigned e = 0;
    do {
      rest /= q;
      ++e;
    } while (rest % q == 0);
    result.factors.push_back({q, e});
  }
  if (rest == 1) return result;

  std::vector<u64> large;
  split_cofactor(rest, large);
  std::sort(large.begin(), large.end());
  for (u64 q : large) {
    if (!result.factors.empty() && result.factors.back().prime == q) {
      ++result.factors.back().exponent;
    } else {
      result.factors.push_back({q, 1});
    }
  }
  return result;
}

MultiplicativeStats multiplicative_stats(const Factorization& f) {
  MultiplicativeStats s;
  s.phi = 1;
  s.mu = 1;
  for (const auto& [q, e] : f.factors) {
    u64 qpow = 1;
    for (unsigned i = 1; i < e; ++i) qpow *= q;
    s.phi *= qpow * (q - 1);
    s.mu = e > 1 ? 0 : -s.mu;
  }
  s.omega = static_cast<unsigned>(f.factors.size());
  s.W = u64{1} << s.omega;
  s.theta = Rational(static_cast<std::int64_t>(s.phi), static_cast<std::int64_t>(f.n));
  return s;
}

bool is_valid_factorization(const Factorization& f) {
  if (f.n == 0) return false;
  u128 product = 1;
  u64 previous = 0;
  for (const auto& [q, e] : f.factors) {
    if (q <= previous || e == 0 || !is_prime(q)) return false;
    previous = q;
    for (unsigned i = 0; i < e; ++i) {
      product *= q;
      if (product > f.n) return false;
    }
  }
  return product == f.n;
}

u64 mod_inverse(u64 a, u64 p) {
  if (p < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  a %= p;
  if (a == 0) throw std::invalid_argument("mod_inverse: a is divisible by p");
  __int128 old_r = static_cast<__int128>(a);
  __int128 r = static_cast<__int128>(p);
  __int128 old_s = 1;
  __int128 s = 0;
  while (r != 0) {
    const __int128 quotient = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quotient * r};
    std::tie(old_s, s) = std::pair{s, old_s - quotient * s};
  }
  if (old_r != 1) throw std::invalid_argument("mod_inverse: a is not invertible");
  __int128 inv = old_s % static_cast<__int128>(p);
  if (inv < 0) inv += static_cast<__int128>(p);
  return static_cast<u64>(inv);
}

std::vector<std::uint32_t> build_inverse_table(u64 p, u64 cap) {
  if (p > cap || p > std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("inverse table for p = " + std::to_string(p) +
                        " exceeds cap " + std::to_string(cap));
  }
  if (p < 3 || !is_prime(p)) {
    throw std::invalid_argument("build_inverse_table: p must be an odd prime");
  }
  std::vector<std::uint32_t> inv(p, 0);
  inv[1] = 1;
  for (u64 a = 2; a < p; ++a) {
    inv[a] = static_cast<std::uint32_t>((p - (p / a) * inv[p % a] % p) % p);
  }
  return inv;
}

bool is_primitive_root(u64 a, u64 p, const Factorization& fact_p_minus_1) {
  if (a % p == 0) return false;
  for (const auto& pp : fact_p_minus_1.factors) {
    if (pow_mod(a, (p - 1) / pp.prime, p) == 1) return false;
  }
  return true;
}

u64 smallest_primitive_root(u64 p, const Factorization& fact_p_minus_1) {
  if (p < 3 || p % 2 == 0) {
    throw std::invalid_argument("smallest_primitive_root: p must be an odd prime");
  }
  for (u64 g = 2; g < p; ++g) {
    if (is_primitive_root(g, p, fact_p_minus_1)) return g;
  }
  throw std::invalid_argument("smallest_primitive_root: p is not prime");
}

u64 smallest_primitive_root(u64 p) {
  if (p < 3) throw std::invalid_argument("smallest_primitive_root: p must be an odd prime");
  return smallest_primitive_root(p, factorize(p - 1));
}

PrimeContext::PrimeContext(u64 p, Inverses inverses, u64 table_cap)
    : PrimeContext(p,
                   (p >= 3 && p <= kMaxSupported) ? factorize(p - 1) : Factorization{},
                   inverses, table_cap) {}

PrimeContext::PrimeContext(u64 p, Factorization fact_p_minus_1, Inverses inverses,
                           u64 table_cap)
    : p_(p), fact_(std::move(fact_p_minus_1)), g_(0) {
  if (p < 3 || p % 2 == 0 || p > kMaxSupported || !is_prime(p)) {
    throw std::invalid_argument("PrimeContext: p = " + std::to_string(p) +
                                " is not an odd prime in the supported range");
  }
  if (fact_.n != p - 1) {
    throw std::invalid_argument("PrimeContext: factorization does not describe p - 1");
  }
  g_ = smallest_primitive_root(p, fact_);
  if (inverses == Inverses::kTable) {
    inverses_ = std::make_shared<const std::vector<std::uint32_t>>(
        build_inverse_table(p, table_cap));
  }
}

std::span<const std::uint32_t> PrimeContext::inverse_table() const {
  if (!inverses_) return {};
  return {inverses_->data(), inverses_->size()};
}

u64 PrimeContext::inverse(u64 a) const {
  if (inverses_ && a > 0 && a < p_) return (*inverses_)[a];
  return mod_inverse(a, p_);
}

PrimeContext PrimeContext::with_inverse_table(u64 table_cap) const {
  if (inverses_) return *this;
  PrimeContext copy = *this;
  copy.inverses_ = std::make_shared<const std::vector<std::uint32_t>>(
      build_inverse_table(p_, table_cap));
  return copy;
}

std::vector<u64> e_free_primes(u64 e, const PrimeContext& ctx) {
  const u64 order = ctx.p() - 1;
  if (e == 0 || e % 2 != 0 || order % e != 0) {
    throw std::invalid_argument("e = " + std::to_string(e) +
                                " is not an even divisor of p - 1 = " +
                                std::to_string(order));
  }
  std::vector<u64> out;
  for (const auto& pp : ctx.fact_p_minus_1().factors) {
    if (e % pp.prime == 0) out.push_back(pp.prime);
  }
  return out;
}

bool is_e_free(u64 a, u64 e, const PrimeContext& ctx) {
  const u64 p = ctx.p();
  const auto primes = e_free_primes(e, ctx);
  if (a % p == 0) throw std::invalid_argument("is_e_free: a is divisible by p");
  return std::all_of(primes.begin(), primes.end(), [&](u64 l) {
    return pow_mod(a, (p - 1) / l, p) != 1;
  });
}

}  // namespace lehmer
