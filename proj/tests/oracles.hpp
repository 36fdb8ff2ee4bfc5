#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library: no inverse tables, no discrete logs, no Miller-Rabin.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline u64 phi(u64 n) {
  u64 count = 0;
  for (u64 a = 1; a <= n; ++a) {
    u64 x = a, y = n;
    while (y) {
      const u64 t = x % y;
      x = y;
      y = t;
    }
    if (x == 1) ++count;
  }
  return count;
}

inline u64 inverse(u64 a, u64 p) {
  for (u64 b = 1; b < p; ++b) {
    if (a * b % p == 1) return b;
  }
  return 0;
}

// Inverse of every residue by pairing: O(p^2) but table-free.
inline std::vector<u64> inverses(u64 p) {
  std::vector<u64> inv(p, 0);
  for (u64 a = 1; a < p; ++a) {
    if (inv[a]) continue;
    const u64 b = inverse(a, p);
    inv[a] = b;
    inv[b] = a;
  }
  return inv;
}

inline u64 order(u64 a, u64 p) {
  u64 x = a % p;
  for (u64 k = 1; k < p; ++k) {
    if (x == 1) return k;
    x = x * a % p;
  }
  return 0;
}

inline bool is_primitive_root(u64 a, u64 p) { return order(a, p) == p - 1; }

struct Counts {
  u64 M = 0;
  u64 N = 0;
  std::int64_t E = 0;
  u64 G = 0;
  u64 first_lpr = 0;  // 0: none
};

inline Counts lehmer_counts(u64 p) {
  const auto inv = inverses(p);
  std::vector<bool> lpr(p + 1, false);
  Counts c;
  for (u64 a = 1; a < p; ++a) {
    const bool lehmer = (a + inv[a]) % 2 == 1;
    c.E += lehmer ? -1 : 1;
    if (!lehmer) continue;
    ++c.M;
    if (is_primitive_root(a, p)) {
      lpr[a] = true;
      ++c.N;
      if (!c.first_lpr) c.first_lpr = a;
    }
  }
  for (u64 a = 2; a < p; ++a) {
    if (lpr[a] && lpr[p + 1 - a]) ++c.G;
  }
  return c;
}

// Lehmer numbers that are not l-th powers for any prime l | e.
inline u64 efree_lehmer_count(u64 p, u64 e) {
  const auto inv = inverses(p);
  std::vector<std::set<u64>> powers;
  for (const auto& [l, exp] : factorize(e)) {
    std::set<u64> s;
    for (u64 x = 1; x < p; ++x) {
      u64 y = 1;
      for (u64 i = 0; i < l; ++i) y = y * x % p;
      s.insert(y);
    }
    powers.push_back(std::move(s));
  }
  u64 count = 0;
  for (u64 a = 1; a < p; ++a) {
    if ((a + inv[a]) % 2 == 0) continue;
    bool free = true;
    for (const auto& s : powers) free = free && !s.count(a);
    if (free) ++count;
  }
  return count;
}

inline std::complex<long double> psi(u64 x, u64 p) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>(x % p) / static_cast<long double>(p);
  return {std::cos(angle), std::sin(angle)};
}

inline std::complex<long double> kloosterman(u64 p, u64 j, u64 k) {
  std::complex<long double> s = 0;
  for (u64 a = 1; a < p; ++a) s += psi(j * a + k * inverse(a, p), p);
  return s;
}

inline long double T(u64 m) {
  long double s = 0;
  for (u64 j = 1; j <= (m - 1) / 2; ++j) {
    s += std::tan(std::numbers::pi_v<long double> * static_cast<long double>(j) /
                  static_cast<long double>(m));
  }
  return 2.0L * s / (static_cast<long double>(m) * std::log(static_cast<long double>(m)));
}

}  // namespace oracle
