#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lehmer/primes.hpp"
#include "oracles.hpp"

using namespace lehmer;

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(2) == std::vector<u64>{2});
  CHECK(primes_up_to(30) == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_up_to(1'000'000).size() == 78'498);
}

TEST_CASE("prime_count known values") {
  CHECK(prime_count(0) == 0);
  CHECK(prime_count(10) == 4);
  CHECK(prime_count(10'000) == 1'229);
  CHECK(prime_count(1'000'000) == 78'498);
  CHECK(prime_count(10'000'000) == 664'579);
}

TEST_CASE("segmented sieve matches trial division on odd-sized segments") {
  for (u64 segment : {1u, 7u, 64u, 1000u}) {
    const u64 lo = 900;
    const u64 hi = 5'321;
    std::vector<u64> got;
    std::vector<u64> chunk;
    SegmentedSieve sieve(lo, hi, segment);
    u64 a = 0;
    u64 b = 0;
    u64 expected_lo = lo;
    while (sieve.next(chunk, a, b)) {
      CHECK(a == expected_lo);
      CHECK(b - a + 1 <= segment);
      expected_lo = b + 1;
      got.insert(got.end(), chunk.begin(), chunk.end());
    }
    CHECK(expected_lo == hi + 1);
    std::vector<u64> ref;
    for (u64 n = lo; n <= hi; ++n) {
      if (oracle::is_prime(n)) ref.push_back(n);
    }
    CHECK(got == ref);
  }
}

TEST_CASE("segmented sieve away from the origin") {
  const u64 lo = 1'000'000'000'000;
  const auto got = primes_in_range(lo, lo + 2'000);
  std::vector<u64> ref;
  for (u64 n = lo; n <= lo + 2'000; ++n) {
    if (is_prime(n)) ref.push_back(n);
  }
  CHECK(got == ref);
}

TEST_CASE("seek resumes at a segment boundary") {
  std::vector<u64> chunk;
  u64 a = 0;
  u64 b = 0;
  SegmentedSieve full(2, 10'000, 1'000);
  std::vector<u64> all;
  while (full.next(chunk, a, b)) all.insert(all.end(), chunk.begin(), chunk.end());

  SegmentedSieve resumed(2, 10'000, 1'000);
  resumed.seek(5'002);
  std::vector<u64> tail;
  while (resumed.next(chunk, a, b)) tail.insert(tail.end(), chunk.begin(), chunk.end());
  std::vector<u64> expected;
  for (u64 p : all) {
    if (p >= 5'002) expected.push_back(p);
  }
  CHECK(tail == expected);
  CHECK_THROWS_AS(resumed.seek(1), std::invalid_argument);
}

TEST_CASE("degenerate ranges") {
  CHECK(primes_in_range(5, 4).empty());
  CHECK(primes_in_range(0, 1).empty());
  CHECK(primes_in_range(2, 2) == std::vector<u64>{2});
  CHECK_THROWS_AS(SegmentedSieve(1, 10, 0), std::invalid_argument);
}
