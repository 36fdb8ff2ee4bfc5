#include "lehmer/charsum_verify.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include "lehmer/primes.hpp"

namespace lehmer {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Backward (positive exponent) complex DFT of fixed length. The FFTW
// planner is not thread-safe, so construction and destruction serialize.
class BackwardDft {
 public:
  explicit BackwardDft(u64 n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    in_ = fftw_alloc_complex(n);
    out_ = fftw_alloc_complex(n);
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~BackwardDft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  BackwardDft(const BackwardDft&) = delete;
  BackwardDft& operator=(const BackwardDft&) = delete;

  std::span<Complex> input() { return {reinterpret_cast<Complex*>(in_), n_}; }
  std::span<const Complex> output() const { return {reinterpret_cast<const Complex*>(out_), n_}; }
  void execute() { fftw_execute(plan_); }

 private:
  u64 n_;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

// Powers of the primitive root: powers[m] = g^m mod p.
std::vector<u64> powers_of_root(const CharacterSums& sums) {
  const u64 p = sums.p();
  std::vector<u64> powers(p - 1);
  u64 a = 1;
  for (u64 m = 0; m + 1 < p; ++m) {
    powers[m] = a;
    a = a * sums.context().g() % p;
  }
  return powers;
}

struct Accumulator {
  u64 sums_checked = 0;
  u64 violations = 0;
  double max_ratio = 0.0;
  u64 worst_p = 0;

  void observe(double modulus, u64 p, double factor) {
    ++sums_checked;
    const double root = std::sqrt(static_cast<double>(p));
    const double ratio = modulus / root;
    if (ratio > max_ratio || (ratio == max_ratio && p < worst_p)) {
      max_ratio = ratio;
      worst_p = p;
    }
    if (modulus > factor * root + kCharsumBoundTolerance) ++violations;
  }

  void merge(const Accumulator& other) {
    sums_checked += other.sums_checked;
    violations += other.violations;
    if (other.max_ratio > max_ratio || (other.max_ratio == max_ratio && other.worst_p < worst_p)) {
      max_ratio = other.max_ratio;
      worst_p = other.worst_p;
    }
  }
};

// Runs work(item, accumulator) for item in [0, count) over `jobs` threads
// and reduces the per-thread accumulators. The reduction is order-free.
Accumulator parallel_reduce(u64 count, unsigned jobs,
                            const std::function<void(u64, Accumulator&)>& work) {
  jobs = std::max(1u, jobs);
  std::vector<Accumulator> partial(jobs);
  std::atomic<u64> next{0};
  auto worker = [&](unsigned w) {
    for (u64 i = next++; i < count; i = next++) work(i, partial[w]);
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
  }
  Accumulator total;
  for (const auto& a : partial) total.merge(a);
  return total;
}

struct PrimeTables {
  CharacterSums sums;
  std::vector<u64> powers;
};

std::vector<PrimeTables> tables_up_to(u64 p_max) {
  std::vector<PrimeTables> out;
  for (u64 p : primes_up_to(p_max)) {
    if (p < 3) continue;
    CharacterSums sums{PrimeContext(p)};
    auto powers = powers_of_root(sums);
    out.push_back({std::move(sums), std::move(powers)});
  }
  return out;
}

FamilyResult finish(std::string family, u64 p_max, std::size_t primes, double factor,
                    const Accumulator& acc) {
  FamilyResult r;
  r.family = std::move(family);
  r.p_max = p_max;
  r.primes = primes;
  r.bound_factor = factor;
  r.sums_checked = acc.sums_checked;
  r.violations = acc.violations;
  r.max_ratio = acc.max_ratio;
  r.worst_p = acc.worst_p;
  return r;
}

void fill_twisted_input(const PrimeTables& t, u64 j, u64 k, std::span<Complex> in) {
  const auto& sums = t.sums;
  for (std::size_t m = 0; m < t.powers.size(); ++m) {
    const u64 a = t.powers[m];
    in[m] = sums.psi(j * a + k * sums.inverse(a));
  }
}

void fill_double_input(const PrimeTables& t, const MultiplicativeCharacter& chi2, u64 j, u64 k,
                       std::span<Complex> in) {
  const auto& sums = t.sums;
  const u64 p = sums.p();
  for (std::size_t m = 0; m < t.powers.size(); ++m) {
    const u64 a = t.powers[m];
    in[m] = sums.character(chi2, p + 1 - a) * sums.psi(j * a + k * sums.inverse(a));
  }
}

std::vector<Complex> run_dft(u64 n, const std::function<void(std::span<Complex>)>& fill) {
  BackwardDft dft(n);
  fill(dft.input());
  dft.execute();
  return {dft.output().begin(), dft.output().end()};
}

}  // namespace

std::vector<Complex> twisted_sums_all_characters(const CharacterSums& sums, u64 j, u64 k) {
  const u64 p = sums.p();
  if (j % p == 0 || k % p == 0) throw std::invalid_argument("j and k must be nonzero mod p");
  const PrimeTables t{sums, powers_of_root(sums)};
  return run_dft(p - 1, [&](std::span<Complex> in) { fill_twisted_input(t, j % p, k % p, in); });
}

std::vector<Complex> double_twisted_sums_all_chi1(const CharacterSums& sums,
                                                  const MultiplicativeCharacter& chi2,
                                                  u64 j, u64 k) {
  const u64 p = sums.p();
  if (j % p == 0 || k % p == 0) throw std::invalid_argument("j and k must be nonzero mod p");
  if (chi2.p != p || chi2.index >= p - 1) throw std::invalid_argument("foreign character");
  const PrimeTables t{sums, powers_of_root(sums)};
  return run_dft(p - 1,
                 [&](std::span<Complex> in) { fill_double_input(t, chi2, j % p, k % p, in); });
}

FamilyResult verify_kloosterman(u64 p_max, unsigned jobs) {
  const auto tables = tables_up_to(p_max);
  // One work item per (prime, j).
  std::vector<std::pair<std::size_t, u64>> items;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (u64 j = 1; j < tables[i].sums.p(); ++j) items.emplace_back(i, j);
  }
  const auto acc = parallel_reduce(items.size(), jobs, [&](u64 item, Accumulator& a) {
    const auto [i, j] = items[item];
    const auto& sums = tables[i].sums;
    for (u64 k = 1; k < sums.p(); ++k) a.observe(std::abs(sums.kloosterman(j, k)), sums.p(), 2.0);
  });
  return finish("kloosterman", p_max, tables.size(), 2.0, acc);
}

FamilyResult verify_twisted(u64 p_max, unsigned jobs) {
  const auto tables = tables_up_to(p_max);
  std::vector<std::pair<std::size_t, u64>> items;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (u64 j = 1; j < tables[i].sums.p(); ++j) items.emplace_back(i, j);
  }
  const auto acc = parallel_reduce(items.size(), jobs, [&](u64 item, Accumulator& a) {
    const auto [i, j] = items[item];
    const auto& t = tables[i];
    const u64 p = t.sums.p();
    BackwardDft dft(p - 1);
    for (u64 k = 1; k < p; ++k) {
      fill_twisted_input(t, j, k, dft.input());
      dft.execute();
      for (const Complex& v : dft.output()) a.observe(std::abs(v), p, 2.0);
    }
  });
  return finish("twisted", p_max, tables.size(), 2.0, acc);
}

FamilyResult verify_double_twisted(u64 p_max, unsigned jobs) {
  const auto tables = tables_up_to(p_max);
  // One work item per (prime, chi2).
  std::vector<std::pair<std::size_t, u64>> items;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (u64 t = 0; t + 1 < tables[i].sums.p(); ++t) items.emplace_back(i, t);
  }
  const auto acc = parallel_reduce(items.size(), jobs, [&](u64 item, Accumulator& a) {
    const auto [i, index] = items[item];
    const auto& t = tables[i];
    const u64 p = t.sums.p();
    const MultiplicativeCharacter chi2{p, (p - 1) / gcd(index, p - 1), index, t.sums.context().g()};
    BackwardDft dft(p - 1);
    for (u64 j = 1; j < p; ++j) {
      for (u64 k = 1; k < p; ++k) {
        fill_double_input(t, chi2, j, k, dft.input());
        dft.execute();
        for (const Complex& v : dft.output()) a.observe(std::abs(v), p, 3.0);
      }
    }
  });
  return finish("double-twisted", p_max, tables.size(), 3.0, acc);
}

FamilyResult verify_tangent_identity(u64 p_max, double tolerance) {
  FamilyResult r;
  r.family = "tangent-identity";
  r.p_max = p_max;
  for (u64 p : primes_up_to(p_max)) {
    if (p < 3) continue;
    ++r.primes;
    for (u64 j = 1; j < p; ++j) {
      const double modulus = std::abs(alternating_additive_sum(p, j));
      const double expected =
          std::abs(std::tan(std::numbers::pi * static_cast<double>(j) / static_cast<double>(p)));
      const double err = std::abs(modulus - expected);
      ++r.sums_checked;
      if (err > r.max_abs_error) {
        r.max_abs_error = err;
        r.worst_p = p;
      }
      if (err > tolerance) ++r.violations;
    }
  }
  return r;
}

FamilyResult verify_orthogonality(u64 p_max, double tolerance) {
  FamilyResult r;
  r.family = "orthogonality";
  r.p_max = p_max;
  for (u64 p : primes_up_to(p_max)) {
    if (p < 3) continue;
    ++r.primes;
    const CharacterSums sums{PrimeContext(p)};
    for (const auto& chi : all_characters(sums.context())) {
      if (chi.is_principal()) continue;
      Complex total{0.0, 0.0};
      for (u64 a = 1; a < p; ++a) total += sums.character(chi, a);
      const double err = std::abs(total);
      ++r.sums_checked;
      if (err > r.max_abs_error) {
        r.max_abs_error = err;
        r.worst_p = p;
      }
      if (err > tolerance) ++r.violations;
    }
  }
  return r;
}

}  // namespace lehmer
