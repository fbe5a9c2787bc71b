#pragma once
// Two enumeration engines: an exact backtracking oracle over all
// factorizations of Z_N (complete for small N) and the constructive
// pipeline assembling canons from the block theorems. Both deduplicate by
// prime form and report per-decomposition counts.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <future>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vuza/constructions.hpp"
#include "vuza/orders.hpp"
#include "vuza/zn.hpp"

namespace vuza {

struct SearchBudget {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
  std::size_t max_records = std::numeric_limits<std::size_t>::max();
};

class BudgetClock {
 public:
  explicit BudgetClock(const SearchBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  // Charges one search node; false once any limit is exhausted.
  bool charge() {
    if (exceeded_) return false;
    if (++nodes_ > budget_.max_nodes) return exceeded_ = true, false;
    if ((nodes_ & 0x3FF) == 0 && elapsed() > budget_.max_seconds)
      return exceeded_ = true, false;
    return true;
  }

  bool record_ok(std::size_t have) {
    if (have >= budget_.max_records) exceeded_ = true;
    return !exceeded_;
  }

  bool exceeded() const noexcept { return exceeded_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
};

namespace detail {

// Backtracking enumeration of all factorizations Z_N = S (+) R with
// |S| = a, |R| = b, 0 in both factors, and S extending a given seed set.
// The least uncovered residue e is branched on: its (unique) future
// representation e = s + r either reuses an existing s, an existing r, or
// introduces both. Since 0 lies in both factors, any element that is not
// yet a member is itself an uncovered cell, so new members are always >= e;
// this keeps every factorization on exactly one search path.
template <class Emit>
class FactorSearch {
 public:
  FactorSearch(int n, std::vector<int> seed_s, int a, int b,
               BudgetClock& clock, Emit& emit, unsigned shuffle_seed)
      : n_(n),
        a_(a),
        b_(b),
        clock_(clock),
        emit_(emit),
        in_s_(static_cast<std::size_t>(n), 0),
        in_r_(static_cast<std::size_t>(n), 0),
        covered_(static_cast<std::size_t>(n), 0) {
    s_ = std::move(seed_s);
    std::sort(s_.begin(), s_.end());
    for (int e : s_) {
      in_s_[static_cast<std::size_t>(e)] = 1;
      covered_[static_cast<std::size_t>(e)] = 1;
    }
    r_.push_back(0);
    in_r_[0] = 1;
    branch_s_ = s_;
    if (shuffle_seed != 0) {
      std::mt19937 rng(shuffle_seed);
      std::shuffle(branch_s_.begin(), branch_s_.end(), rng);
    }
    shuffled_ = shuffle_seed != 0;
  }

  void run() { rec(0); }

 private:
  int wrap(int x) const { return x >= n_ ? x - n_ : x; }

  bool add_r(int r) {
    for (int s : s_)
      if (covered_[static_cast<std::size_t>(wrap(s + r))]) return false;
    for (int s : s_) covered_[static_cast<std::size_t>(wrap(s + r))] = 1;
    r_.push_back(r);
    in_r_[static_cast<std::size_t>(r)] = 1;
    return true;
  }

  void remove_r(int r) {
    r_.pop_back();
    in_r_[static_cast<std::size_t>(r)] = 0;
    for (int s : s_) covered_[static_cast<std::size_t>(wrap(s + r))] = 0;
  }

  bool add_s(int s) {
    for (int r : r_)
      if (covered_[static_cast<std::size_t>(wrap(s + r))]) return false;
    for (int r : r_) covered_[static_cast<std::size_t>(wrap(s + r))] = 1;
    s_.push_back(s);
    in_s_[static_cast<std::size_t>(s)] = 1;
    return true;
  }

  void remove_s(int s) {
    s_.pop_back();
    in_s_[static_cast<std::size_t>(s)] = 0;
    for (int r : r_) covered_[static_cast<std::size_t>(wrap(s + r))] = 0;
  }

  bool add_both(int s, int r) {
    scratch_.clear();
    bool ok = true;
    auto mark = [&](int cell) {
      if (covered_[static_cast<std::size_t>(cell)]) return false;
      covered_[static_cast<std::size_t>(cell)] = 1;
      scratch_.push_back(cell);
      return true;
    };
    for (int ri : r_)
      if (!mark(wrap(s + ri))) {
        ok = false;
        break;
      }
    if (ok)
      for (int sj : s_)
        if (!mark(wrap(sj + r))) {
          ok = false;
          break;
        }
    if (ok) ok = mark(wrap(s + r));
    if (!ok) {
      for (int c : scratch_) covered_[static_cast<std::size_t>(c)] = 0;
      return false;
    }
    s_.push_back(s);
    in_s_[static_cast<std::size_t>(s)] = 1;
    r_.push_back(r);
    in_r_[static_cast<std::size_t>(r)] = 1;
    return true;
  }

  void remove_both(int s, int r) {
    s_.pop_back();
    in_s_[static_cast<std::size_t>(s)] = 0;
    r_.pop_back();
    in_r_[static_cast<std::size_t>(r)] = 0;
    for (int ri : r_) covered_[static_cast<std::size_t>(wrap(s + ri))] = 0;
    for (int sj : s_) covered_[static_cast<std::size_t>(wrap(sj + r))] = 0;
    covered_[static_cast<std::size_t>(wrap(s + r))] = 0;
  }

  void rec(int low) {
    if (stop_ || !clock_.charge()) return;
    if (s_.size() * r_.size() == static_cast<std::size_t>(n_)) {
      if constexpr (std::is_void_v<decltype(emit_(s_, r_))>) {
        emit_(s_, r_);
      } else {
        if (!emit_(s_, r_)) stop_ = true;
      }
      return;
    }
    while (covered_[static_cast<std::size_t>(low)]) ++low;
    const int e = low;
    const std::size_t sz_s = s_.size(), sz_r = r_.size();

    if (sz_r < static_cast<std::size_t>(b_)) {
      const auto& order = shuffled_ ? branch_s_ : s_;
      for (std::size_t i = 0; i < sz_s; ++i) {
        int s = order[i];
        int r = e - s;
        if (r < 0) r += n_;
        if (r < e) continue;  // cell r would already be covered
        if (add_r(r)) {
          rec(e);
          remove_r(r);
          if (stop_) return;
        }
      }
    }
    if (sz_s < static_cast<std::size_t>(a_)) {
      for (std::size_t i = 0; i < sz_r; ++i) {
        int r = r_[i];
        int s = e - r;
        if (s < 0) s += n_;
        if (s < e) continue;
        if (in_s_[static_cast<std::size_t>(s)]) continue;
        if (add_s(s)) {
          rec(e);
          remove_s(s);
          if (stop_) return;
        }
      }
    }
    if (sz_s < static_cast<std::size_t>(a_) &&
        sz_r < static_cast<std::size_t>(b_)) {
      for (int s = e + 1; s < n_; ++s) {
        if (in_s_[static_cast<std::size_t>(s)]) continue;
        int r = e + n_ - s;
        if (in_r_[static_cast<std::size_t>(r)]) continue;
        if (add_both(s, r)) {
          rec(e);
          remove_both(s, r);
          if (stop_) return;
        }
      }
    }
  }

  int n_, a_, b_;
  BudgetClock& clock_;
  Emit& emit_;
  std::vector<int> s_, r_, branch_s_, scratch_;
  std::vector<char> in_s_, in_r_, covered_;
  bool shuffled_ = false;
  bool stop_ = false;
};

template <class Emit>
void for_each_factorization(int n, const std::vector<int>& seed_s, int a,
                            int b, BudgetClock& clock, Emit&& emit,
                            unsigned shuffle_seed = 0) {
  if (n < 1 || a < 1 || b < 1 || 1LL * a * b != n)
    throw std::invalid_argument("factor sizes must multiply to N");
  FactorSearch<Emit> search(n, seed_s, a, b, clock, emit, shuffle_seed);
  search.run();
}

}  // namespace detail

struct ComplementsResult {
  std::vector<ResidueSet> complements;  // prime forms, sorted
  bool partial = false;
};

// All normalized R with S (+) R = Z_N, deduplicated by prime form.
inline ComplementsResult complements_brute(const ResidueSet& s,
                                           const SearchBudget& budget = {},
                                           bool nonperiodic_only = false,
                                           unsigned shuffle_seed = 0) {
  require_nonempty(s, "complements_brute");
  if (!s.contains(0))
    throw std::invalid_argument("complements_brute requires 0 in S");
  const int n = s.modulus();
  if (n % static_cast<int>(s.size()) != 0)
    throw std::invalid_argument("|S| must divide N");
  const int b = n / static_cast<int>(s.size());

  BudgetClock clock(budget);
  std::set<ResidueSet> forms;
  auto emit = [&](const std::vector<int>&, const std::vector<int>& r) {
    if (!clock.record_ok(forms.size())) return;
    ResidueSet rs = ResidueSet::reduce(n, r);
    if (nonperiodic_only && find_period(rs)) return;
    forms.insert(prime_form(rs));
  };
  detail::for_each_factorization(n, s.elements(), static_cast<int>(s.size()),
                                 b, clock, emit, shuffle_seed);
  return ComplementsResult{{forms.begin(), forms.end()}, clock.exceeded()};
}

struct TilesResult {
  std::vector<ResidueSet> tiles;  // prime forms, sorted
  bool partial = false;
};

namespace detail {

// Can `count` pairwise-disjoint translates of s (one at shift 0) be placed
// in Z_N? False only when provably impossible; an inconclusive capped
// search answers true, so this is safe as a pruning test.
inline bool packing_feasible(const std::vector<int>& s, int n, int count,
                             int node_cap) {
  std::vector<char> occ(static_cast<std::size_t>(n), 0);
  for (int e : s) occ[static_cast<std::size_t>(e)] = 1;
  int nodes = 0;
  auto rec = [&](auto&& self, int from, int placed) -> bool {
    if (placed == count) return true;
    if (++nodes > node_cap) return true;  // inconclusive
    for (int r = from; r <= n - (count - placed); ++r) {
      bool ok = true;
      for (int e : s) {
        int c = e + r;
        if (c >= n) c -= n;
        if (occ[static_cast<std::size_t>(c)]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (int e : s) {
        int c = e + r;
        if (c >= n) c -= n;
        occ[static_cast<std::size_t>(c)] = 1;
      }
      bool done = self(self, r + 1, placed + 1);
      for (int e : s) {
        int c = e + r;
        if (c >= n) c -= n;
        occ[static_cast<std::size_t>(c)] = 0;
      }
      if (done) return true;
    }
    return false;
  };
  return rec(rec, 1, 1);
}

// A fiber of modulus m at position i adds one to every slot j = i (mod m).
// Tests whether the running counts cnt (indexed mod d = cnt.size()) can be
// dominated by a sum of na fibers of modulus ma plus nb fibers of modulus
// mb.  The mb side is enumerated exactly; per choice, the least number of
// ma-fibers needed is the sum over positions of the worst residual deficit.
inline bool fiber_cover_feasible(const std::vector<int>& cnt, int ma, int na,
                                 int mb, int nb) {
  const int d = static_cast<int>(cnt.size());
  std::vector<int> y(static_cast<std::size_t>(mb), 0);
  auto fits = [&]() {
    int tot = 0;
    for (int i = 0; i < ma; ++i) {
      int mx = 0;
      for (int j = i; j < d; j += ma)
        mx = std::max(mx, cnt[static_cast<std::size_t>(j)] -
                              y[static_cast<std::size_t>(j % mb)]);
      tot += mx;
      if (tot > na) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int pos, int left) -> bool {
    if (pos == mb || left == 0) return fits();
    bool ok = false;
    for (int t = left; t >= 0 && !ok; --t) {
      y[static_cast<std::size_t>(pos)] = t;
      ok = self(self, pos + 1, left - t);
    }
    y[static_cast<std::size_t>(pos)] = 0;
    return ok;
  };
  return rec(rec, 0, nb);
}

// Exact division of integer polynomials (ascending coefficients, monic
// divisor); the quotient is assumed exact.
inline std::vector<long long> poly_div_exact(std::vector<long long> num,
                                             const std::vector<long long>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  std::vector<long long> quot(static_cast<std::size_t>(dn - dd + 1), 0);
  for (int i = dn; i >= dd; --i) {
    long long f = num[static_cast<std::size_t>(i)];
    if (f == 0) continue;
    quot[static_cast<std::size_t>(i - dd)] = f;
    for (int j = 0; j <= dd; ++j)
      num[static_cast<std::size_t>(i - dd + j)] -=
          f * den[static_cast<std::size_t>(j)];
  }
  return quot;
}

// m-th cyclotomic polynomial with integer coefficients, ascending order.
inline std::vector<long long> cyclotomic_poly(int m) {
  std::vector<long long> poly(static_cast<std::size_t>(m) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(m)] = 1;  // x^m - 1
  for (int d = 1; d < m; ++d)
    if (m % d == 0) poly = poly_div_exact(std::move(poly), cyclotomic_poly(d));
  return poly;
}

// Does the given (monic, integer) cyclotomic polynomial of order m divide
// the mask polynomial of s?
inline bool mask_divisible(const std::vector<int>& s, int m,
                           const std::vector<long long>& phi) {
  std::vector<long long> c(static_cast<std::size_t>(m), 0);
  for (int e : s) ++c[static_cast<std::size_t>(e % m)];
  const int dd = static_cast<int>(phi.size()) - 1;
  for (int i = static_cast<int>(c.size()) - 1; i >= dd; --i) {
    long long f = c[static_cast<std::size_t>(i)];
    if (f == 0) continue;
    for (int j = 0; j <= dd; ++j)
      c[static_cast<std::size_t>(i - dd + j)] -=
          f * phi[static_cast<std::size_t>(j)];
  }
  for (long long v : c)
    if (v != 0) return false;
  return true;
}

// Mask polynomial divisibility by the p^k-th cyclotomic polynomial:
// holds iff the residue counts mod p^k repeat with period p^{k-1}.
inline bool cyclotomic_divides(const std::vector<int>& s, int p, int pk) {
  const int stride = pk / p;
  std::vector<int> cnt(static_cast<std::size_t>(pk), 0);
  for (int e : s) ++cnt[static_cast<std::size_t>(e % pk)];
  for (int j = 0; j < stride; ++j)
    for (int i = 1; i < p; ++i)
      if (cnt[static_cast<std::size_t>(j + i * stride)] !=
          cnt[static_cast<std::size_t>(j)])
        return false;
  return true;
}

// Necessary condition for tiling: over the prime powers q | n whose
// cyclotomic polynomials divide the mask polynomial of s, the primes
// multiply up to exactly |s|.
inline bool tile_size_condition(const std::vector<int>& s, int n) {
  long long prod = 1;
  for (int p : prime_divisors(n)) {
    for (int pk = p; n % pk == 0; pk *= p) {
      if (cyclotomic_divides(s, p, pk)) prod *= p;
      if (pk > n / p) break;
    }
  }
  return prod == static_cast<long long>(s.size());
}

enum class ComplementProbe { none, found, inconclusive };

// Does s admit a complement (optionally a non-periodic one)? Stops at the
// first hit; a tripped budget yields `inconclusive`. For moduli up to 256
// the search works on bitmask translates of s, always branching on the
// translate that covers the least uncovered residue; a complement may be
// translated to contain 0, so the shift-0 translate is fixed up front.
inline ComplementProbe probe_complement(const std::vector<int>& s, int n,
                                        BudgetClock& clock,
                                        bool nonperiodic_only) {
  if (n > 256) {
    bool found = false;
    auto emit = [&](const std::vector<int>&, const std::vector<int>& rv) {
      if (nonperiodic_only && find_period(ResidueSet::reduce(n, rv)))
        return true;  // keep searching
      found = true;
      return false;
    };
    for_each_factorization(n, s, static_cast<int>(s.size()),
                           n / static_cast<int>(s.size()), clock, emit);
    if (found) return ComplementProbe::found;
    return clock.exceeded() ? ComplementProbe::inconclusive
                            : ComplementProbe::none;
  }

  const int b = n / static_cast<int>(s.size());

  // Any complement r must absorb the prime-power cyclotomic factors that s
  // lacks, so the counts of r modulo each such prime power are uniform at
  // the usual stride. Track those counts and cut branches whose remaining
  // placements cannot level the strided groups any more. If exactly the
  // forced powers can divide r and b has at most two prime factors, the
  // mixed products are forced as well and completed covers are screened
  // against them.
  struct ForcedPower {
    int p, pk;
    std::vector<int> cnt;  // counts of chosen shifts mod pk
  };
  std::vector<ForcedPower> forced;
  bool exact_powers = true;
  for (int p : prime_divisors(n)) {
    int nf = 0;
    for (int pk = p; n % pk == 0; pk *= p) {
      if (!cyclotomic_divides(s, p, pk)) {
        forced.push_back(
            {p, pk, std::vector<int>(static_cast<std::size_t>(pk), 0)});
        ++nf;
      }
      if (pk > n / p) break;
    }
    int vp = 0;
    for (int q = b; q % p == 0; q /= p) ++vp;
    if (nf > vp) return ComplementProbe::none;  // r cannot absorb them all
    if (nf < vp) exact_powers = false;
  }
  std::vector<std::vector<long long>> cross_polys;
  std::vector<int> cross_mods;
  if (exact_powers && prime_divisors(b).size() <= 2) {
    for (const auto& f : forced)
      for (const auto& g : forced)
        if (f.p < g.p) {
          cross_mods.push_back(f.pk * g.pk);
          cross_polys.push_back(cyclotomic_poly(f.pk * g.pk));
        }
  }
  auto deficit_ok = [&](int rem) {
    for (const auto& f : forced) {
      const int stride = f.pk / f.p;
      int need = 0;
      for (int j = 0; j < stride; ++j) {
        int mx = 0;
        for (int i = 0; i < f.p; ++i)
          mx = std::max(mx, f.cnt[static_cast<std::size_t>(j + i * stride)]);
        for (int i = 0; i < f.p; ++i)
          need += mx - f.cnt[static_cast<std::size_t>(j + i * stride)];
      }
      if (need > rem) return false;
    }
    return true;
  };

  const int words = (n + 63) / 64;
  using Mask = std::array<std::uint64_t, 4>;
  std::vector<Mask> masks(static_cast<std::size_t>(n), Mask{});
  for (int r = 0; r < n; ++r)
    for (int e : s) {
      const int i = (e + r) % n;
      masks[static_cast<std::size_t>(r)][static_cast<std::size_t>(i >> 6)] |=
          std::uint64_t{1} << (i & 63);
    }
  Mask full{};
  for (int i = 0; i < n; ++i)
    full[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);

  Mask covered = masks[0];
  std::vector<int> rs{0};
  for (auto& f : forced) ++f.cnt[0];
  bool found = false;
  auto rec = [&](auto&& self) -> bool {  // true = stop searching
    if (!clock.charge()) return true;
    int e = -1;
    for (int w = 0; w < words; ++w) {
      const std::uint64_t holes = full[static_cast<std::size_t>(w)] &
                                  ~covered[static_cast<std::size_t>(w)];
      if (holes) {
        e = w * 64 + std::countr_zero(holes);
        break;
      }
    }
    if (e < 0) {
      for (std::size_t i = 0; i < cross_mods.size(); ++i)
        if (!mask_divisible(rs, cross_mods[i], cross_polys[i]))
          return false;  // no valid complement down this cover
      if (nonperiodic_only && find_period(ResidueSet::reduce(n, rs)))
        return false;  // periodic complement: keep searching
      found = true;
      return true;
    }
    for (int sv : s) {
      const int r = (e - sv % n + n) % n;
      const Mask& m = masks[static_cast<std::size_t>(r)];
      bool clash = false;
      for (int w = 0; w < words; ++w)
        if (m[static_cast<std::size_t>(w)] &
            covered[static_cast<std::size_t>(w)]) {
          clash = true;
          break;
        }
      if (clash) continue;
      for (auto& f : forced) ++f.cnt[static_cast<std::size_t>(r % f.pk)];
      rs.push_back(r);
      bool stop = false;
      if (deficit_ok(b - static_cast<int>(rs.size()))) {
        for (int w = 0; w < words; ++w)
          covered[static_cast<std::size_t>(w)] ^=
              m[static_cast<std::size_t>(w)];
        stop = self(self);
        for (int w = 0; w < words; ++w)
          covered[static_cast<std::size_t>(w)] ^=
              m[static_cast<std::size_t>(w)];
      }
      rs.pop_back();
      for (auto& f : forced) --f.cnt[static_cast<std::size_t>(r % f.pk)];
      if (stop) return true;
    }
    return false;
  };
  rec(rec);
  if (found) return ComplementProbe::found;
  return clock.exceeded() ? ComplementProbe::inconclusive
                          : ComplementProbe::none;
}

}  // namespace detail

// All normalized S of the given cardinality that tile Z_N, deduplicated by
// prime form. With vuza_only, keeps only non-periodic S admitting at least
// one non-periodic complement. Candidates are grown in increasing order
// with the first gap minimal over the rotation orbit; branches are cut by
// forced cyclotomic residue quotas and partial-complement (packing)
// feasibility, and surviving candidates are confirmed by an actual
// complement search.
inline TilesResult all_tiles_brute(int n, int size,
                                   const SearchBudget& budget = {},
                                   bool vuza_only = false) {
  if (n < 1 || size < 1 || n % size != 0)
    throw std::invalid_argument("tile size must divide N");
  BudgetClock clock(budget);
  std::set<ResidueSet> tiles;
  bool partial = false;
  if (size == 1) {
    // S = {0} tiles with R = Z_N (periodic unless N = 1).
    if (!vuza_only || n == 1) tiles.insert(ResidueSet(n, {0}));
    return TilesResult{{tiles.begin(), tiles.end()}, false};
  }
  const int b = n / size;

  // A cyclotomic signature of the candidate mask polynomial: in any tile,
  // the prime powers whose cyclotomic polynomials divide S(x) multiply up
  // to exactly |S|, and when |S| has at most two prime factors every mixed
  // product of selected powers also divides S(x). Each admissible
  // selection of prime powers is handled separately: the residue counts of
  // S modulo M (the product of the largest selected powers) then decompose
  // into non-negative fiber sums, so the admissible count profiles can be
  // enumerated outright and cells distributed per class afterwards. A tile
  // matches exactly one signature, so no work is repeated.
  const std::vector<int> size_primes = detail::prime_divisors(size);
  bool structured = !size_primes.empty() && size_primes.size() <= 2;
  for (int p : size_primes)
    if (n % p != 0) structured = false;

  // A non-periodic complement can only exist when the divisors d | N with
  // Φ_d | S(x) have lcm exactly N: otherwise, with m that lcm, every
  // complement is divisible by (x^N - 1)/(x^m - 1) and is therefore a
  // union of full <m>-cosets, hence m-periodic. The prime powers dividing
  // S(x) are pinned by the signature, so in vuza mode each signature is
  // further refined by minimal sets of composite divisors that push the
  // lcm up to N; those extra divisors become additional constraints on the
  // search below.
  struct WorkItem {
    int m;                     // profile modulus
    std::vector<int> profile;  // counts of S per class mod m
    std::vector<int> extras;   // extra divisors d with Φ_d | S required
  };
  std::vector<WorkItem> work;

  if (structured) {
    // Per prime: all ways to pick e_p of the prime powers dividing n.
    std::vector<std::vector<int>> all_powers;
    std::vector<std::vector<std::vector<int>>> choices;
    for (int p : size_primes) {
      std::vector<int> powers;
      for (long long pk = p; n % pk == 0; pk *= p) {
        powers.push_back(static_cast<int>(pk));
        if (pk > n / p) break;
      }
      int e = 0;
      for (int s = size; s % p == 0; s /= p) ++e;
      std::vector<std::vector<int>> opts;
      std::vector<int> pick;
      auto gen = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == e) {
          opts.push_back(pick);
          return;
        }
        for (std::size_t i = from; i < powers.size(); ++i) {
          pick.push_back(powers[i]);
          self(self, i + 1);
          pick.pop_back();
        }
      };
      gen(gen, 0);
      if (opts.empty()) return TilesResult{{}, false};  // no admissible tiles
      all_powers.push_back(std::move(powers));
      choices.push_back(std::move(opts));
    }

    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::vector<std::vector<int>> sel;
      for (std::size_t c = 0; c < choices.size(); ++c)
        sel.push_back(choices[c][idx[c]]);

      const int P = sel[0].back();
      const int Q = sel.size() == 2 ? sel[1].back() : 1;
      const int M = P * Q;

      // Divisibility that must hold / must fail for classes mod M.
      std::vector<int> required, excluded;
      for (std::size_t c = 0; c < sel.size(); ++c) {
        const int top = c == 0 ? P : Q;
        for (int pk : all_powers[c]) {
          if (top % pk != 0) continue;  // beyond M: leaf check handles it
          if (std::find(sel[c].begin(), sel[c].end(), pk) != sel[c].end())
            required.push_back(pk);
          else
            excluded.push_back(pk);
        }
      }
      if (sel.size() == 2)
        for (int pk : sel[0])
          for (int qk : sel[1]) required.push_back(pk * qk);
      std::vector<std::vector<long long>> req_polys, exc_polys;
      for (int d : required) req_polys.push_back(detail::cyclotomic_poly(d));
      for (int d : excluded) exc_polys.push_back(detail::cyclotomic_poly(d));

      auto counts_divisible = [&](const std::vector<int>& cnt, int d,
                                  const std::vector<long long>& phi) {
        std::vector<long long> c(static_cast<std::size_t>(d), 0);
        for (int t = 0; t < M; ++t)
          c[static_cast<std::size_t>(t % d)] += cnt[static_cast<std::size_t>(t)];
        const int dd = static_cast<int>(phi.size()) - 1;
        for (int i = d - 1; i >= dd; --i) {
          long long f = c[static_cast<std::size_t>(i)];
          if (f == 0) continue;
          for (int j = 0; j <= dd; ++j)
            c[static_cast<std::size_t>(i - dd + j)] -=
                f * phi[static_cast<std::size_t>(j)];
        }
        for (long long v : c)
          if (v != 0) return false;
        return true;
      };

      // Count profiles: c = A + B with A constant on classes mod M/p and B
      // constant on classes mod M/q (single-prime: B absent), matching the
      // non-negative fiber decomposition of vanishing sums.
      std::set<std::vector<int>> profiles;
      const int p0 = size_primes[0];
      const int ma = M / p0;
      const int p1 = sel.size() == 2 ? size_primes[1] : 0;
      const int mb = p1 ? M / p1 : 0;

      std::vector<int> avec(static_cast<std::size_t>(ma), 0);
      std::vector<int> bvec(static_cast<std::size_t>(std::max(mb, 1)), 0);
      auto emit_profile = [&]() {
        std::vector<int> prof(static_cast<std::size_t>(M), 0);
        for (int t = 0; t < M; ++t) {
          prof[static_cast<std::size_t>(t)] =
              avec[static_cast<std::size_t>(t % ma)] +
              (p1 ? bvec[static_cast<std::size_t>(t % mb)] : 0);
        }
        if (prof[0] == 0) return;  // 0 must be an element
        for (std::size_t i = 0; i < required.size(); ++i)
          if (!counts_divisible(prof, required[i], req_polys[i])) return;
        for (std::size_t i = 0; i < excluded.size(); ++i)
          if (counts_divisible(prof, excluded[i], exc_polys[i])) return;
        profiles.insert(std::move(prof));
      };
      auto fill_b = [&](auto&& self, int pos, int left) -> void {
        if (pos == mb - 1 || mb == 0) {
          if (mb > 0) bvec[static_cast<std::size_t>(pos)] = left;
          emit_profile();
          return;
        }
        for (int x = 0; x <= left; ++x) {
          bvec[static_cast<std::size_t>(pos)] = x;
          self(self, pos + 1, left - x);
        }
      };
      auto fill_a = [&](auto&& self, int pos, int left, int sb) -> void {
        if (pos == ma - 1) {
          avec[static_cast<std::size_t>(pos)] = left;
          if (p1)
            fill_b(fill_b, 0, sb);
          else
            emit_profile();
          return;
        }
        for (int x = 0; x <= left; ++x) {
          avec[static_cast<std::size_t>(pos)] = x;
          self(self, pos + 1, left - x, sb);
        }
      };
      for (int sa = 0; sa * p0 <= size; ++sa) {
        const int rest = size - sa * p0;
        if (p1) {
          if (rest % p1 != 0) continue;
          fill_a(fill_a, 0, sa, rest / p1);
        } else {
          if (rest != 0) continue;
          fill_a(fill_a, 0, sa, 0);
        }
      }
      std::vector<std::vector<int>> extra_sets;
      if (!vuza_only || M == n) {
        extra_sets.emplace_back();
      } else {
        // Prime powers not selected here divide the complement instead, and
        // when the complement size has at most two prime factors the cross
        // conditions hold for it, so a two-prime divisor whose prime-power
        // parts are both on the complement side divides the complement too
        // and can never divide a tile from this signature.
        std::set<int> selected_powers;
        for (const auto& s : sel) selected_powers.insert(s.begin(), s.end());
        const bool cross_r =
            detail::prime_divisors(b).size() <= 2;
        auto complement_forced = [&](int d) {
          if (!cross_r) return false;
          const std::vector<int> dp = detail::prime_divisors(d);
          if (dp.size() != 2) return false;
          for (int p : dp) {
            int part = 1;
            for (int x = d; x % p == 0; x /= p) part *= p;
            if (selected_powers.count(part)) return false;
          }
          return true;
        };
        std::vector<int> cand;
        for (int d = 2; d <= n; ++d)
          if (n % d == 0 && M % d != 0 &&
              detail::prime_divisors(d).size() >= 2 && !complement_forced(d))
            cand.push_back(d);
        std::vector<int> chosen;
        auto gather = [&](auto&& self, std::size_t from, long long l) -> void {
          if (l == n) {
            extra_sets.push_back(chosen);
            return;
          }
          for (std::size_t i = from; i < cand.size(); ++i)
            if (l % cand[i] != 0) {
              chosen.push_back(cand[i]);
              self(self, i + 1, std::lcm(l, static_cast<long long>(cand[i])));
              chosen.pop_back();
            }
        };
        gather(gather, 0, M);
        std::vector<std::vector<int>> minimal;  // drop dominated supersets
        for (const auto& a : extra_sets) {
          bool redundant = false;
          for (const auto& c : extra_sets)
            if (c.size() < a.size() &&
                std::includes(a.begin(), a.end(), c.begin(), c.end()))
              redundant = true;
          if (!redundant) minimal.push_back(a);
        }
        extra_sets = std::move(minimal);
      }
      for (const auto& prof : profiles)
        for (const auto& ex : extra_sets) work.push_back({M, prof, ex});

      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == choices[pos].size())
        idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  } else {
    work.push_back({1, std::vector<int>{size}, {}});
  }

  // Cyclotomic polynomials of every divisor, for the extra-divisor checks
  // and the generic lcm screen on the unstructured path.
  std::map<int, std::vector<long long>> div_phi;
  for (int d = 2; d <= n; ++d)
    if (n % d == 0) div_phi.emplace(d, detail::cyclotomic_poly(d));

  // Distribute cells class by class, in increasing element order with the
  // first gap minimal over the rotation orbit, pruning on class quotas,
  // per-class remaining supply, and partial-complement packing feasibility.
  // Rotations of one candidate can reach several leaves, so probe results
  // are cached by prime form.
  std::map<ResidueSet, bool> probed;
  for (const auto& item : work) {
    const int M = item.m;
    const std::vector<int>& profile = item.profile;
#ifdef VUZA_DEBUG_TILES
    auto dbg_t0 = std::chrono::steady_clock::now();
    auto dbg_n0 = clock.nodes();
    std::fprintf(stderr, "start M=%d prof=", M);
    for (int c : profile) std::fprintf(stderr, "%d,", c);
    std::fprintf(stderr, " extras=");
    for (int d : item.extras) std::fprintf(stderr, "%d,", d);
    std::fprintf(stderr, "\n");
#endif

    // Per extra divisor d: exact divisibility data plus two sound pruning
    // devices. First, when d has at most two prime factors, non-negative
    // vectors with vanishing d-th root sums are exactly the sums of full
    // p-fibers and q-fibers, so the running counts mod d must stay
    // dominated by some admissible fiber combination. Second, the partial
    // mask polynomial evaluated at a primitive d-th root must stay within
    // the number of elements still to be placed.
    struct RootTrack {
      std::vector<double> ure, uim;  // e^(2*pi*i*j*v/d) per residue v
      std::vector<double> sre, sim;  // partial sums per depth
    };
    struct ExtraData {
      int d = 0;
      std::vector<long long> phi;
      std::vector<std::array<int, 4>> splits;  // {ma, na, mb, nb}
      bool coarse = false;  // three or more primes: fibers do not apply
      std::vector<int> cnt;
      std::vector<RootTrack> roots;  // a few primitive d-th roots
    };
    std::vector<ExtraData> extras;
    bool item_ok = true;
    for (int d : item.extras) {
      ExtraData e;
      e.d = d;
      e.phi = div_phi.at(d);
      const std::vector<int> dp = detail::prime_divisors(d);
      if (dp.size() == 1) {
        if (size % dp[0] != 0) item_ok = false;
        e.splits.push_back({d / dp[0], size / std::max(dp[0], 1), 1, 0});
      } else if (dp.size() == 2) {
        const int p = dp[0], q = dp[1];
        for (int sa = 0; sa * p <= size; ++sa) {
          const int rest = size - sa * p;
          if (rest % q != 0) continue;
          const int sb = rest / q;
          // enumerate the smaller fiber multiset side
          if (sb <= sa)
            e.splits.push_back({d / p, sa, d / q, sb});
          else
            e.splits.push_back({d / q, sb, d / p, sa});
        }
        if (e.splits.empty()) item_ok = false;
      } else {
        // sums of vanishing d-th root sums lie in the numerical semigroup
        // generated by the primes dividing d
        std::vector<char> reach(static_cast<std::size_t>(size) + 1, 0);
        reach[0] = 1;
        for (int p : dp)
          for (int v = p; v <= size; ++v)
            if (reach[static_cast<std::size_t>(v - p)])
              reach[static_cast<std::size_t>(v)] = 1;
        if (!reach[static_cast<std::size_t>(size)]) item_ok = false;
        e.coarse = true;
      }
      e.cnt.assign(static_cast<std::size_t>(d), 0);
      // one tracker per conjugacy-distinct primitive root
      for (int j = 1; 2 * j < d && e.roots.size() < 16; ++j) {
        if (std::gcd(j, d) != 1) continue;
        RootTrack rt;
        rt.ure.resize(static_cast<std::size_t>(d));
        rt.uim.resize(static_cast<std::size_t>(d));
        for (int v = 0; v < d; ++v) {
          const double a = 2.0 * 3.14159265358979323846 * j * v / d;
          rt.ure[static_cast<std::size_t>(v)] = std::cos(a);
          rt.uim[static_cast<std::size_t>(v)] = std::sin(a);
        }
        rt.sre.assign(static_cast<std::size_t>(size) + 1, 0.0);
        rt.sim.assign(static_cast<std::size_t>(size) + 1, 0.0);
        e.roots.push_back(std::move(rt));
      }
      extras.push_back(std::move(e));
    }
    if (!item_ok) continue;
    auto extras_admit = [&](int v, int k) {
      // counts already bumped for v; partial sums filled through depth k
      const double rem = size - k + 1e-6;
      for (const auto& e : extras) {
        for (const auto& rt : e.roots)
          if (rt.sre[static_cast<std::size_t>(k)] *
                      rt.sre[static_cast<std::size_t>(k)] +
                  rt.sim[static_cast<std::size_t>(k)] *
                      rt.sim[static_cast<std::size_t>(k)] >
              rem * rem)
            return false;
        if (e.coarse) continue;
        bool any = false;
        for (const auto& sp : e.splits)
          if (detail::fiber_cover_feasible(e.cnt, sp[0], sp[1], sp[2], sp[3])) {
            any = true;
            break;
          }
        if (!any) return false;
      }
      (void)v;
      return true;
    };

    std::vector<int> elems{0};
    std::vector<int> cnt(static_cast<std::size_t>(M), 0);
    cnt[0] = 1;
    for (auto& e : extras) {
      ++e.cnt[0];
      for (auto& rt : e.roots) {
        rt.sre[1] = 1.0;  // the fixed element 0 contributes 1
        rt.sim[1] = 0.0;
      }
    }

    // residues t with quota, for the supply prune
    std::vector<int> active;
    for (int t = 0; t < M; ++t)
      if (profile[static_cast<std::size_t>(t)] > 0) active.push_back(t);
    auto supply = [&](int t, int v) {
      // #cells x in [v, n) with x = t mod M
      if (v >= n) return 0;
      int first = v + ((t - v) % M + M) % M;
      return first >= n ? 0 : (n - 1 - first) / M + 1;
    };

    auto rec = [&](auto&& self) -> void {
      if (!clock.charge()) return;
      const int k = static_cast<int>(elems.size());
      if (k == size) {
        if (n - elems.back() < elems[1]) return;  // wrap gap below minimum
        if (vuza_only && find_period(ResidueSet(n, elems))) return;
        if (!detail::tile_size_condition(elems, n)) return;
        for (const auto& e : extras)
          if (!detail::mask_divisible(elems, e.d, e.phi)) return;
        if (vuza_only && extras.empty()) {
          // unrefined path: apply the lcm screen directly
          long long l = 1;
          for (const auto& [d, phi] : div_phi)
            if (detail::mask_divisible(elems, d, phi)) l = std::lcm(l, (long long)d);
          if (l != n) return;  // complements are all (lcm)-periodic
        }
        if (!clock.record_ok(tiles.size())) return;
        ResidueSet pf = prime_form(ResidueSet(n, elems));
        if (auto it = probed.find(pf); it != probed.end()) {
          if (it->second) tiles.insert(std::move(pf));
          return;
        }
#ifdef VUZA_DEBUG_TILES
        extern long long vuza_dbg_probes;
        extern double vuza_dbg_probe_secs;
        ++vuza_dbg_probes;
        auto dbg_p0 = std::chrono::steady_clock::now();
#endif
        auto probe = detail::probe_complement(elems, n, clock, vuza_only);
#ifdef VUZA_DEBUG_TILES
        {
          extern std::vector<double> vuza_dbg_each;
          double dbg_dt = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - dbg_p0)
                              .count();
          vuza_dbg_probe_secs += dbg_dt;
          vuza_dbg_each.push_back(dbg_dt);
        }
#endif
        if (probe == detail::ComplementProbe::inconclusive) {
          partial = true;
        } else {
          const bool hit = probe == detail::ComplementProbe::found;
          probed.emplace(pf, hit);
          if (hit) tiles.insert(std::move(pf));
        }
        return;
      }
      const int min_gap = k >= 2 ? elems[1] : 1;
      const int hi = n - (size - k) * min_gap;
      for (int v = elems.back() + min_gap; v <= hi; ++v) {
        if (k == 1 && v > n / size) break;  // first gap is the smallest
        const int t = v % M;
        if (cnt[static_cast<std::size_t>(t)] >=
            profile[static_cast<std::size_t>(t)])
          continue;
        bool ok = true;
        for (int u : active)
          if (profile[static_cast<std::size_t>(u)] -
                  cnt[static_cast<std::size_t>(u)] - (u == t ? 1 : 0) >
              supply(u, v + 1)) {
            ok = false;
            break;
          }
        if (ok && !extras.empty()) {
          for (auto& e : extras) {
            const auto r = static_cast<std::size_t>(v % e.d);
            ++e.cnt[r];
            for (auto& rt : e.roots) {
              rt.sre[static_cast<std::size_t>(k + 1)] =
                  rt.sre[static_cast<std::size_t>(k)] + rt.ure[r];
              rt.sim[static_cast<std::size_t>(k + 1)] =
                  rt.sim[static_cast<std::size_t>(k)] + rt.uim[r];
            }
          }
          ok = extras_admit(v, k + 1);
          if (!ok)
            for (auto& e : extras) --e.cnt[static_cast<std::size_t>(v % e.d)];
        }
        if (ok && 2 * (k + 1) >= size) {
          elems.push_back(v);
          ok = detail::packing_feasible(elems, n, b, 10 * size);
          elems.pop_back();
          if (!ok && !extras.empty())
            for (auto& e : extras) --e.cnt[static_cast<std::size_t>(v % e.d)];
        }
        if (ok) {
          ++cnt[static_cast<std::size_t>(t)];
          elems.push_back(v);
          self(self);
          elems.pop_back();
          --cnt[static_cast<std::size_t>(t)];
          for (auto& e : extras) --e.cnt[static_cast<std::size_t>(v % e.d)];
        }
      }
    };
    rec(rec);
#ifdef VUZA_DEBUG_TILES
    {
      double dt = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - dbg_t0)
                      .count();
      if (dt > 0.05) {
        std::fprintf(stderr, "M=%d dt=%.2f dn=%llu prof=", M, dt,
                     (unsigned long long)(clock.nodes() - dbg_n0));
        for (int c : profile) std::fprintf(stderr, "%d,", c);
        std::fprintf(stderr, "\n");
      }
    }
#endif
  }
  return TilesResult{{tiles.begin(), tiles.end()},
                     partial || clock.exceeded()};
}

enum class Provenance {
  oracle,
  base,
  variant_p1,
  variant_p2,
  perturbed,
  split_K,
  multi_R,
  lifted,
  restricted
};

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::oracle: return "oracle";
    case Provenance::base: return "base";
    case Provenance::variant_p1: return "variant_p1";
    case Provenance::variant_p2: return "variant_p2";
    case Provenance::perturbed: return "perturbed";
    case Provenance::split_K: return "split_K";
    case Provenance::multi_R: return "multi_R";
    case Provenance::lifted: return "lifted";
    case Provenance::restricted: return "restricted";
  }
  return "?";
}

inline std::optional<Provenance> provenance_from_name(const std::string& s) {
  for (Provenance p :
       {Provenance::oracle, Provenance::base, Provenance::variant_p1,
        Provenance::variant_p2, Provenance::perturbed, Provenance::split_K,
        Provenance::multi_R, Provenance::lifted, Provenance::restricted})
    if (s == provenance_name(p)) return p;
  return std::nullopt;
}

struct CanonRecord {
  int modulus = 0;
  std::optional<VuzaParams> params;
  ResidueSet s_prime, r_prime;  // prime forms
  Provenance provenance = Provenance::oracle;
};

struct ReportRow {
  VuzaParams params;
  int size_s = 0, size_r = 0;
  long long count_s = 0, count_r = 0;
  bool exact = false;
};

struct EnumerationReport {
  int modulus = 0;
  std::string engine;
  std::vector<ReportRow> rows;
  long long global_count_s = 0;  // deduplicated across rows
  long long global_count_r = 0;
  bool budget_exhausted = false;
  double seconds = 0.0;
  std::uint64_t nodes = 0;
};

struct EnumerationResult {
  EnumerationReport report;
  std::vector<CanonRecord> records;
};

namespace detail {

inline void finalize_report(EnumerationResult& result) {
  std::set<ResidueSet> gs, gr;
  for (const auto& rec : result.records) {
    gs.insert(rec.s_prime);
    gr.insert(rec.r_prime);
  }
  result.report.global_count_s = static_cast<long long>(gs.size());
  result.report.global_count_r = static_cast<long long>(gr.size());
  std::sort(result.records.begin(), result.records.end(),
            [](const CanonRecord& a, const CanonRecord& b) {
              return std::tie(a.modulus, a.s_prime, a.r_prime) <
                     std::tie(b.modulus, b.s_prime, b.r_prime);
            });
}

}  // namespace detail

// Exact classification: for each admissible size class, enumerate all
// non-periodic tiles with the oracle and then all non-periodic complements
// of each tile. Deterministic regardless of the worker count.
inline EnumerationResult enumerate_vuza_brute(int n,
                                              const SearchBudget& budget = {},
                                              int jobs = 1) {
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  auto decomps = vuza_decompositions(n);
  if (decomps.empty())
    throw std::invalid_argument(std::to_string(n) + " is not a Vuza order");

  EnumerationResult result;
  result.report.modulus = n;
  result.report.engine = "brute";
  BudgetClock wall(budget);

  std::map<std::pair<int, int>, VuzaParams> classes;
  for (const auto& q : decomps)
    classes.try_emplace({q.n1 * q.n2, q.n3 * q.p1 * q.p2}, q);

  for (const auto& [cls, rep] : classes) {
    bool partial = false;
    TilesResult tiles = all_tiles_brute(n, cls.first, budget, true);
    partial |= tiles.partial;

    std::vector<ComplementsResult> per_tile(tiles.tiles.size());
    auto work = [&](std::size_t i) {
      per_tile[i] = complements_brute(tiles.tiles[i], budget, true);
    };
    if (jobs <= 1 || tiles.tiles.size() <= 1) {
      for (std::size_t i = 0; i < tiles.tiles.size(); ++i) work(i);
    } else {
      std::vector<std::future<void>> futs;
      for (std::size_t i = 0; i < tiles.tiles.size(); ++i)
        futs.push_back(std::async(std::launch::async, work, i));
      for (auto& f : futs) f.get();
    }

    std::set<ResidueSet> r_forms;
    for (std::size_t i = 0; i < tiles.tiles.size(); ++i) {
      partial |= per_tile[i].partial;
      for (const auto& r : per_tile[i].complements) {
        r_forms.insert(r);
        result.records.push_back(CanonRecord{
            n, rep, tiles.tiles[i], r, Provenance::oracle});
      }
    }

    ReportRow row;
    row.params = rep;
    row.size_s = cls.first;
    row.size_r = cls.second;
    row.count_s = static_cast<long long>(tiles.tiles.size());
    row.count_r = static_cast<long long>(r_forms.size());
    row.exact = !partial;
    result.report.rows.push_back(row);
    result.report.budget_exhausted |= partial;
  }

  result.report.seconds = wall.elapsed();
  detail::finalize_report(result);
  return result;
}

namespace detail {

// Every variant of `base` obtained by adding a non-zero offset (or none)
// to each non-zero element, keeping only cardinality-preserving results.
inline std::vector<ResidueSet> substitution_family(const ResidueSet& base,
                                                   const ResidueSet& offsets,
                                                   BudgetClock& clock) {
  std::vector<int> movable, offs;
  for (int e : base.elements())
    if (e != 0) movable.push_back(e);
  for (int o : offsets.elements())
    if (o != 0) offs.push_back(o);

  std::set<ResidueSet> out;
  std::vector<int> digit(movable.size(), 0);
  const int radix = static_cast<int>(offs.size()) + 1;
  while (true) {
    if (!clock.charge()) break;
    std::vector<int> v{0};
    for (std::size_t i = 0; i < movable.size(); ++i) {
      int x = movable[i];
      if (digit[i] > 0) x += offs[static_cast<std::size_t>(digit[i] - 1)];
      v.push_back(x % base.modulus());
    }
    ResidueSet cand = ResidueSet::reduce(base.modulus(), v);
    if (cand.size() == base.size()) out.insert(cand);

    std::size_t pos = 0;
    while (pos < digit.size() && digit[pos] == radix - 1) digit[pos++] = 0;
    if (pos == digit.size()) break;
    ++digit[pos];
  }
  return {out.begin(), out.end()};
}

struct Kernel {
  ResidueSet set;
  bool perturbed = false;
};

// R candidates: assign one kernel to each coset representative, per the
// union remark; de-duplicated, verified against S before acceptance.
template <class Accept>
void assign_kernels(const std::vector<Kernel>& kernels, const ResidueSet& k,
                    int expected_size, const ResidueSet& s, BudgetClock& clock,
                    Accept&& accept) {
  if (kernels.empty() || k.empty()) return;
  const int n = k.modulus();
  const std::size_t parts = k.size();
  std::vector<std::size_t> digit(parts, 0);
  while (true) {
    if (!clock.charge()) break;
    std::vector<int> rv;
    std::set<std::size_t> used;
    for (std::size_t j = 0; j < parts; ++j) {
      used.insert(digit[j]);
      int shift = k.elements()[j];
      for (int e : kernels[digit[j]].set.elements()) rv.push_back(e + shift);
    }
    ResidueSet r = ResidueSet::reduce(n, rv);
    if (static_cast<int>(r.size()) == expected_size && !find_period(r) &&
        check_direct_sum(s, r).verdict) {
      bool perturbed = false;
      for (std::size_t j : used) perturbed |= kernels[j].perturbed;
      Provenance prov = used.size() > 2 ? Provenance::multi_R
                        : perturbed     ? Provenance::perturbed
                                        : Provenance::base;
      accept(std::move(r), prov);
    }
    std::size_t pos = 0;
    while (pos < parts && digit[pos] == kernels.size() - 1) digit[pos++] = 0;
    if (pos == parts) break;
    ++digit[pos];
  }
}

}  // namespace detail

// The constructive pipeline: per decomposition, (1) build the block
// subgroup H (standard plus both H-variants when their hypotheses hold),
// (2) close A and B under the S-perturbation theorem, (3) split the
// transversal where Z_{n3} factorizes, (4) span R over all dilation and
// substitution kernels assigned across the transversal. Lower bounds only.
inline EnumerationResult enumerate_vuza_constructive(
    int n, const SearchBudget& budget = {}) {
  auto decomps = vuza_decompositions(n);
  if (decomps.empty())
    throw std::invalid_argument(std::to_string(n) + " is not a Vuza order");

  EnumerationResult result;
  result.report.modulus = n;
  result.report.engine = "constructive";
  BudgetClock clock(budget);

  std::set<std::pair<ResidueSet, ResidueSet>> seen;
  auto add_record = [&](const VuzaParams& q, const ResidueSet& s,
                        const ResidueSet& r, Provenance prov,
                        std::set<ResidueSet>& row_s, std::set<ResidueSet>& row_r) {
    ResidueSet spf = prime_form(s), rpf = prime_form(r);
    row_s.insert(spf);
    row_r.insert(rpf);
    if (seen.insert({spf, rpf}).second && clock.record_ok(seen.size()))
      result.records.push_back(CanonRecord{n, q, spf, rpf, prov});
  };

  for (const auto& q : decomps) {
    std::set<ResidueSet> row_s, row_r;
    const int size_r = q.n3 * q.p1 * q.p2;

    BuildingBlocks blocks = base_blocks(q);
    ResidueSet s0 = detail::sum_direct(blocks.A, blocks.B, "S = A+B");

    // Kernel families over the standard H.
    std::vector<detail::Kernel> kernels;
    {
      std::set<ResidueSet> base_kernels;
      for (int alpha : std::set<int>{1, q.n1, q.p1})
        base_kernels.insert(sumset(
            detail::dilated_interval(1LL * alpha * q.n2 * q.n3, q.p2, n),
            blocks.V));
      for (int beta : std::set<int>{1, q.n2, q.p2})
        base_kernels.insert(sumset(
            blocks.U,
            detail::dilated_interval(1LL * beta * q.n1 * q.n3, q.p1, n)));

      std::set<ResidueSet> perturbed_kernels;
      for (const auto& up :
           detail::substitution_family(blocks.U, blocks.B, clock))
        perturbed_kernels.insert(sumset(up, blocks.V));
      for (const auto& vp :
           detail::substitution_family(blocks.V, blocks.A, clock))
        perturbed_kernels.insert(sumset(blocks.U, vp));

      for (const auto& kset : base_kernels)
        kernels.push_back({kset, false});
      for (const auto& kset : perturbed_kernels)
        if (!base_kernels.count(kset)) kernels.push_back({kset, true});
    }

    std::optional<ResidueSet> r0;
    detail::assign_kernels(kernels, blocks.K, size_r, s0, clock,
                           [&](ResidueSet r, Provenance prov) {
                             if (!r0) r0 = r;
                             add_record(q, s0, r, prov, row_s, row_r);
                           });

    // S-family: perturbation closure of A and B, paired with a known R.
    if (r0) {
      auto a_family = detail::substitution_family(blocks.A, blocks.U, clock);
      auto b_family = detail::substitution_family(blocks.B, blocks.V, clock);
      for (const auto& ap : a_family) {
        if (find_period(ap)) continue;
        for (const auto& bp : b_family) {
          if (!clock.charge()) break;
          if (find_period(bp)) continue;
          ResidueSet sp = sumset(ap, bp);
          if (sp.size() != ap.size() * bp.size()) continue;
          if (find_period(sp)) continue;
          if (!check_direct_sum(sp, *r0).verdict) continue;
          Provenance prov = sp == s0 ? Provenance::base : Provenance::perturbed;
          add_record(q, sp, *r0, prov, row_s, row_r);
        }
      }
    }

    // H-variants where their coprimality hypotheses hold.
    for (Variant var : {Variant::p1, Variant::p2}) {
      BuildingBlocks vb;
      try {
        ResidueSet k = default_transversal(q, var);
        std::vector<int> rest(k.elements().begin() + 1, k.elements().end());
        vb = make_blocks(q, var, 1, 1, ResidueSet(n, {0}),
                         ResidueSet(n, std::move(rest)));
      } catch (const std::invalid_argument&) {
        continue;  // hypothesis gate
      }
      ResidueSet sv = sumset(vb.A, vb.B);
      if (sv.size() != vb.A.size() * vb.B.size() || find_period(sv)) continue;
      std::vector<detail::Kernel> vkernels{{sumset(vb.U, vb.Vprime), false},
                                           {sumset(vb.Uprime, vb.V), false}};
      if (vkernels[0].set == vkernels[1].set) vkernels.pop_back();
      Provenance vprov = var == Variant::p1 ? Provenance::variant_p1
                                            : Provenance::variant_p2;
      detail::assign_kernels(vkernels, vb.K, size_r, sv, clock,
                             [&](ResidueSet r, Provenance) {
                               add_record(q, sv, r, vprov, row_s, row_r);
                             });
    }

    // Transversal splits Z_{n3} = L (+) M when n3 is composite.
    if (!detail::is_prime(q.n3) && q.n3 > 3) {
      const int n3 = q.n3;
      for (unsigned lm = 1; lm < (1u << n3); ++lm) {
        if (!(lm & 1u)) continue;  // normalized L
        std::vector<int> lv;
        for (int i = 0; i < n3; ++i)
          if (lm & (1u << i)) lv.push_back(i);
        if (lv.size() < 2 || lv.size() >= static_cast<std::size_t>(n3))
          continue;
        ResidueSet l(n3, lv);
        for (unsigned mm = 1; mm < (1u << n3); ++mm) {
          if (!(mm & 1u) || (mm & lm) != 1u) continue;
          std::vector<int> mv;
          for (int i = 0; i < n3; ++i)
            if (mm & (1u << i)) mv.push_back(i);
          if (lv.size() * mv.size() != static_cast<std::size_t>(n3)) continue;
          ResidueSet m(n3, mv);
          if (!check_direct_sum(l, m).verdict) continue;
          // all 2-colorings of M
          for (unsigned color = 0; color < (1u << m.size()); ++color) {
            if (!clock.charge()) break;
            std::vector<int> m1, m2;
            for (std::size_t i = 0; i < m.size(); ++i)
              (color & (1u << i) ? m1 : m2).push_back(m.elements()[i]);
            try {
              RhythmicCanon rc = split_K_canon(blocks, l, ResidueSet(n3, m1),
                                               ResidueSet(n3, m2));
              if (rc.vuza)
                add_record(q, rc.S, rc.R, Provenance::split_K, row_s, row_r);
            } catch (const std::exception&) {
              // infeasible split or periodic output
            }
          }
        }
      }
    }

    ReportRow row;
    row.params = q;
    row.size_s = q.n1 * q.n2;
    row.size_r = size_r;
    row.count_s = static_cast<long long>(row_s.size());
    row.count_r = static_cast<long long>(row_r.size());
    row.exact = false;
    result.report.rows.push_back(row);
  }

  result.report.budget_exhausted = clock.exceeded();
  result.report.seconds = clock.elapsed();
  result.report.nodes = clock.nodes();
  detail::finalize_report(result);
  return result;
}

// Unique by basic-form key, sorted by (cardinality, basic form).
inline std::vector<ResidueSet> dedup_prime_forms(
    const std::vector<ResidueSet>& sets) {
  std::map<std::pair<std::size_t, BasicForm>, ResidueSet> keyed;
  for (const auto& s : sets) keyed.try_emplace({s.size(), basic_form(s)}, prime_form(s));
  std::vector<ResidueSet> out;
  out.reserve(keyed.size());
  for (auto& [k, v] : keyed) out.push_back(v);
  return out;
}

}  // namespace vuza
