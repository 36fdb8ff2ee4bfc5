#include "lehmer/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lehmer {

namespace {

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

SegmentedSieve::SegmentedSieve(u64 lo, u64 hi, u64 segment_size)
    : lo_(lo), hi_(hi), segment_size_(segment_size), cursor_(lo) {
  if (segment_size == 0) throw std::invalid_argument("segment size must be positive");
  if (hi > kMaxSupported) throw std::invalid_argument("range exceeds supported width");
  if (lo > hi) {
    exhausted_ = true;
    return;
  }
  base_primes_ = primes_up_to(isqrt(hi));
}

void SegmentedSieve::seek(u64 start) {
  if (start < lo_) throw std::invalid_argument("seek before start of range");
  cursor_ = start;
  exhausted_ = cursor_ > hi_;
}

bool SegmentedSieve::next(std::vector<u64>& out, u64& segment_lo, u64& segment_hi) {
  out.clear();
  if (exhausted_ || cursor_ > hi_) {
    exhausted_ = true;
    return false;
  }
  const u64 s = cursor_;
  const u64 e = std::min(hi_, s + segment_size_ - 1);
  composite_.assign(e - s + 1, 0);
  for (u64 q : base_primes_) {
    if (q * q > e) break;
    u64 start = std::max(q * q, (s + q - 1) / q * q);
    for (u64 m = start; m <= e; m += q) composite_[m - s] = 1;
  }
  for (u64 n = std::max<u64>(s, 2); n <= e; ++n) {
    if (!composite_[n - s]) out.push_back(n);
  }
  segment_lo = s;
  segment_hi = e;
  if (e == hi_) {
    exhausted_ = true;
  } else {
    cursor_ = e + 1;
  }
  return true;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> all;
  std::vector<u64> chunk;
  SegmentedSieve sieve(lo, hi);
  u64 a = 0;
  u64 b = 0;
  while (sieve.next(chunk, a, b)) all.insert(all.end(), chunk.begin(), chunk.end());
  return all;
}

u64 prime_count(u64 n) {
  if (n < 2) return 0;
  u64 count = 0;
  std::vector<u64> chunk;
  SegmentedSieve sieve(2, n);
  u64 a = 0;
  u64 b = 0;
  while (sieve.next(chunk, a, b)) count += chunk.size();
  return count;
}

}  // namespace lehmer
