#include "lehmer/charsum.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lehmer {

namespace {

// Imaginary residue tolerated on a Kloosterman sum before it is treated as
// an implementation fault.
constexpr double kKloostermanImagTolerance = 1e-8;

std::vector<Complex> roots_of_unity(u64 n) {
  std::vector<Complex> out(n);
  for (u64 m = 0; m < n; ++m) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    out[m] = {std::cos(angle), std::sin(angle)};
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> discrete_log_table(const PrimeContext& ctx, u64 cap) {
  const u64 p = ctx.p();
  if (p > cap) {
    throw ResourceError("discrete-log table for p = " + std::to_string(p) +
                        " exceeds cap " + std::to_string(cap));
  }
  std::vector<std::uint32_t> table(p, 0);
  u64 a = 1;
  for (u64 k = 0; k + 1 < p; ++k) {
    table[a] = static_cast<std::uint32_t>(k);
    a = a * ctx.g() % p;
  }
  return table;
}

std::vector<MultiplicativeCharacter> enumerate_characters(const PrimeContext& ctx, u64 d) {
  const u64 order = ctx.p() - 1;
  if (d == 0 || order % d != 0) {
    throw std::invalid_argument("character order " + std::to_string(d) +
                                " does not divide p - 1 = " + std::to_string(order));
  }
  std::vector<MultiplicativeCharacter> out;
  const u64 step = order / d;
  for (u64 u = 0; u < d; ++u) {
    if (gcd(u, d) != 1) continue;
    out.push_back({ctx.p(), d, u * step, ctx.g()});
  }
  return out;
}

std::vector<MultiplicativeCharacter> all_characters(const PrimeContext& ctx) {
  const u64 order = ctx.p() - 1;
  std::vector<MultiplicativeCharacter> out;
  out.reserve(order);
  for (u64 t = 0; t < order; ++t) {
    out.push_back({ctx.p(), order / gcd(t, order), t, ctx.g()});
  }
  return out;
}

CharacterSums::CharacterSums(const PrimeContext& ctx, u64 cap)
    : ctx_(ctx),
      dlog_(discrete_log_table(ctx, cap)),
      inverses_(build_inverse_table(ctx.p(), cap)),
      additive_(roots_of_unity(ctx.p())),
      multiplicative_(roots_of_unity(ctx.p() - 1)) {
  if (ctx.p() >= (u64{1} << 31)) {
    throw ResourceError("character sums are limited to p < 2^31");
  }
}

void CharacterSums::check_jk(u64 j, u64 k) const {
  const u64 p = ctx_.p();
  if (j % p == 0 || k % p == 0) {
    throw std::invalid_argument("character sum: j and k must be nonzero mod p");
  }
}

void CharacterSums::check_character(const MultiplicativeCharacter& chi) const {
  if (chi.p != ctx_.p() || chi.g != ctx_.g() || chi.index >= ctx_.p() - 1) {
    throw std::invalid_argument("character does not belong to this prime context");
  }
}

Complex CharacterSums::character(const MultiplicativeCharacter& chi, u64 a) const {
  const u64 p = ctx_.p();
  a %= p;
  if (a == 0) return {0.0, 0.0};
  const u64 exponent = mul_mod(chi.index, dlog_[a], p - 1);
  return multiplicative_[exponent];
}

double CharacterSums::kloosterman(u64 j, u64 k) const {
  check_jk(j, k);
  const u64 p = ctx_.p();
  j %= p;
  k %= p;
  Complex sum{0.0, 0.0};
  for (u64 a = 1; a < p; ++a) {
    sum += additive_[(j * a + k * inverses_[a]) % p];
  }
  if (std::abs(sum.imag()) >= kKloostermanImagTolerance) {
    throw std::logic_error("Kloosterman sum has non-vanishing imaginary part");
  }
  return sum.real();
}

Complex CharacterSums::twisted(const MultiplicativeCharacter& chi, u64 j, u64 k) const {
  check_jk(j, k);
  check_character(chi);
  const u64 p = ctx_.p();
  j %= p;
  k %= p;
  Complex sum{0.0, 0.0};
  for (u64 a = 1; a < p; ++a) {
    sum += character(chi, a) * additive_[(j * a + k * inverses_[a]) % p];
  }
  return sum;
}

Complex CharacterSums::double_twisted(const MultiplicativeCharacter& chi1,
                                      const MultiplicativeCharacter& chi2, u64 j,
                                      u64 k) const {
  check_jk(j, k);
  check_character(chi1);
  check_character(chi2);
  const u64 p = ctx_.p();
  j %= p;
  k %= p;
  Complex sum{0.0, 0.0};
  for (u64 a = 2; a < p; ++a) {
    sum += character(chi1, a) * character(chi2, p + 1 - a) *
           additive_[(j * a + k * inverses_[a]) % p];
  }
  return sum;
}

double kloosterman_sum(const PrimeContext& ctx, u64 j, u64 k) {
  return CharacterSums(ctx).kloosterman(j, k);
}

Complex twisted_sum(const PrimeContext& ctx, const MultiplicativeCharacter& chi, u64 j, u64 k) {
  return CharacterSums(ctx).twisted(chi, j, k);
}

Complex double_twisted_sum(const PrimeContext& ctx, const MultiplicativeCharacter& chi1,
                           const MultiplicativeCharacter& chi2, u64 j, u64 k) {
  return CharacterSums(ctx).double_twisted(chi1, chi2, j, k);
}

Complex alternating_additive_sum(u64 p, u64 j) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("alternating sum: p must be an odd prime");
  if (j == 0 || j >= p) throw std::invalid_argument("alternating sum: j outside [1, p-1]");
  Complex sum{0.0, 0.0};
  for (u64 r = 1; r < p; ++r) {
    // psi(-j r) = exp(2 pi i (p - j r mod p) / p)
    const u64 x = (p - mul_mod(j, r, p)) % p;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(x) / static_cast<double>(p);
    const Complex term{std::cos(angle), std::sin(angle)};
    sum += (r & 1) ? -term : term;
  }
  return sum;
}

}  // namespace lehmer
