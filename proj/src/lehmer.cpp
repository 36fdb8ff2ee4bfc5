#include "lehmer/lehmer.hpp"

#include <memory>

namespace lehmer {

namespace {

// Inverse table view; borrows the context's table or owns a fresh one.
class Inverses {
 public:
  Inverses(const PrimeContext& ctx, u64 cap) {
    if (ctx.has_inverse_table()) {
      view_ = ctx.inverse_table();
    } else {
      owned_ = build_inverse_table(ctx.p(), cap);
      view_ = owned_;
    }
  }
  u64 operator[](u64 a) const { return view_[a]; }

 private:
  std::vector<std::uint32_t> owned_;
  std::span<const std::uint32_t> view_;
};

// Walks a = g^k for k = 0 .. p-2 and calls visit(a, residues) where
// residues[i] = k mod primes[i].
template <typename Visit>
void walk_powers(const PrimeContext& ctx, const std::vector<u64>& primes, Visit&& visit) {
  const u64 p = ctx.p();
  const u64 g = ctx.g();
  std::vector<u64> residues(primes.size(), 0);
  u64 a = 1;
  for (u64 k = 0; k + 1 < p; ++k) {
    visit(a, residues);
    a = mul_mod(a, g, p);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (++residues[i] == primes[i]) residues[i] = 0;
    }
  }
}

bool coprime_residues(const std::vector<u64>& residues) {
  for (u64 r : residues) {
    if (r == 0) return false;
  }
  return true;
}

}  // namespace

bool is_lehmer(u64 a, const PrimeContext& ctx) {
  if (a == 0 || a >= ctx.p()) throw std::invalid_argument("is_lehmer: a outside [1, p-1]");
  return ((a + ctx.inverse(a)) & 1) == 1;
}

LehmerCounts count_lehmer(const PrimeContext& ctx, u64 table_cap) {
  const u64 p = ctx.p();
  const Inverses inv(ctx, table_cap);
  LehmerCounts counts;
  counts.p = p;
  for (u64 a = 1; a < p; ++a) {
    if (((a + inv[a]) & 1) == 1) {
      ++counts.M;
      --counts.E;
    } else {
      ++counts.E;
    }
  }
  const auto primes = ctx.fact_p_minus_1().primes();
  walk_powers(ctx, primes, [&](u64 a, const std::vector<u64>& residues) {
    if (coprime_residues(residues) && ((a + inv[a]) & 1) == 1) ++counts.N;
  });
  counts.first_lpr = find_first_lpr(ctx);
  return counts;
}

u64 count_lehmer_efree(const PrimeContext& ctx, u64 e, u64 table_cap) {
  const auto primes = e_free_primes(e, ctx);
  const Inverses inv(ctx, table_cap);
  u64 count = 0;
  walk_powers(ctx, primes, [&](u64 a, const std::vector<u64>& residues) {
    if (coprime_residues(residues) && ((a + inv[a]) & 1) == 1) ++count;
  });
  return count;
}

std::optional<u64> find_first_lpr(const PrimeContext& ctx) {
  const u64 p = ctx.p();
  const auto& fact = ctx.fact_p_minus_1();
  for (u64 a = ctx.g(); a < p; ++a) {
    if (!is_primitive_root(a, p, fact)) continue;
    if (((a + ctx.inverse(a)) & 1) == 1) return a;
  }
  return std::nullopt;
}

std::vector<bool> lpr_bitmap(const PrimeContext& ctx, u64 table_cap) {
  const Inverses inv(ctx, table_cap);
  std::vector<bool> lpr(ctx.p(), false);
  walk_powers(ctx, ctx.fact_p_minus_1().primes(),
              [&](u64 a, const std::vector<u64>& residues) {
                if (coprime_residues(residues) && ((a + inv[a]) & 1) == 1) lpr[a] = true;
              });
  return lpr;
}

u64 count_golomb_lehmer_pairs(const PrimeContext& ctx, u64 table_cap) {
  const u64 p = ctx.p();
  const auto lpr = lpr_bitmap(ctx, table_cap);
  u64 count = 0;
  for (u64 a = 2; a < p; ++a) {
    if (lpr[a] && lpr[p + 1 - a]) ++count;
  }
  return count;
}

}  // namespace lehmer
