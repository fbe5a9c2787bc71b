#pragma once
// Exact arithmetic on subsets of Z_N: sumsets, direct-sum certificates,
// periodicity, canonical forms under rotation, and the affine symmetries.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vuza {

// Thrown when a canon-level operation receives an empty set.
class EmptySetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a construction requires a non-periodic set but the computed
// set turned out periodic. Carries the offending period.
class NonPeriodicityError : public std::runtime_error {
 public:
  NonPeriodicityError(const std::string& msg, int period)
      : std::runtime_error(msg), period_(period) {}
  int period() const noexcept { return period_; }

 private:
  int period_ = 0;
};

// A finite subset of Z_N together with its modulus. Elements are kept
// strictly increasing; a dense membership mask backs O(1) lookups.
class ResidueSet {
 public:
  ResidueSet() = default;

  ResidueSet(int modulus, std::vector<int> elements)
      : mod_(modulus), elems_(std::move(elements)) {
    if (mod_ <= 0) throw std::invalid_argument("modulus must be positive");
    std::sort(elems_.begin(), elems_.end());
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (elems_[i] < 0 || elems_[i] >= mod_)
        throw std::invalid_argument("residue out of range [0, N)");
      if (i > 0 && elems_[i] == elems_[i - 1])
        throw std::invalid_argument("duplicate residue");
    }
    rebuild_mask();
  }

  // Reduces arbitrary integers mod N and collapses duplicates.
  static ResidueSet reduce(int modulus, const std::vector<int>& values) {
    if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
    std::vector<int> v;
    v.reserve(values.size());
    for (long long x : values) {
      long long r = x % modulus;
      if (r < 0) r += modulus;
      v.push_back(static_cast<int>(r));
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return ResidueSet(modulus, std::move(v));
  }

  int modulus() const noexcept { return mod_; }
  const std::vector<int>& elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  bool contains(int r) const { return r >= 0 && r < mod_ && mask_[r] != 0; }

  bool operator==(const ResidueSet& o) const {
    return mod_ == o.mod_ && elems_ == o.elems_;
  }
  auto operator<=>(const ResidueSet& o) const {
    if (auto c = mod_ <=> o.mod_; c != 0) return c;
    return elems_ <=> o.elems_;
  }

 private:
  void rebuild_mask() {
    mask_.assign(static_cast<std::size_t>(mod_), 0);
    for (int e : elems_) mask_[static_cast<std::size_t>(e)] = 1;
  }

  int mod_ = 0;
  std::vector<int> elems_;
  std::vector<char> mask_;
};

// The circular interval vector of a set, in its canonical rotation.
struct BasicForm {
  std::vector<int> intervals;

  bool operator==(const BasicForm&) const = default;
  auto operator<=>(const BasicForm&) const = default;

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      if (i) os << ',';
      os << intervals[i];
    }
    os << ')';
    return os.str();
  }
};

struct DirectSumCertificate {
  bool verdict = false;
  // Witness for failure: either an element with no representation ...
  std::optional<int> uncovered;
  // ... or one with two: (g, s, r, s2, r2) with g = s+r = s2+r2.
  std::optional<std::array<int, 5>> doubled;
};

inline void require_nonempty(const ResidueSet& s, const char* what) {
  if (s.empty()) throw EmptySetError(std::string(what) + ": empty set");
}

inline void require_same_modulus(const ResidueSet& a, const ResidueSet& b) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument("modulus mismatch");
}

// I_a = {0, 1, ..., a-1} as a subset of Z_N.
inline ResidueSet interval_set(int a, int modulus) {
  if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
  if (a < 1 || a > modulus)
    throw std::invalid_argument("interval length must be in [1, N]");
  std::vector<int> v(static_cast<std::size_t>(a));
  std::iota(v.begin(), v.end(), 0);
  return ResidueSet(modulus, std::move(v));
}

// k*S mod N. Duplicates collapse when gcd(k, N) > 1.
inline ResidueSet scale_set(int k, const ResidueSet& s) {
  require_nonempty(s, "scale_set");
  if (k < 1) throw std::invalid_argument("scale factor must be positive");
  std::vector<int> v;
  v.reserve(s.size());
  for (int e : s.elements())
    v.push_back(static_cast<int>((static_cast<long long>(k) * e) % s.modulus()));
  return ResidueSet::reduce(s.modulus(), v);
}

inline ResidueSet sumset(const ResidueSet& s, const ResidueSet& t) {
  require_same_modulus(s, t);
  const int n = s.modulus();
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int a : s.elements())
    for (int b : t.elements()) {
      int g = a + b;
      if (g >= n) g -= n;
      hit[static_cast<std::size_t>(g)] = 1;
    }
  std::vector<int> v;
  for (int g = 0; g < n; ++g)
    if (hit[static_cast<std::size_t>(g)]) v.push_back(g);
  return ResidueSet(n, std::move(v));
}

inline ResidueSet translate(const ResidueSet& s, int t) {
  require_nonempty(s, "translate");
  const int n = s.modulus();
  t %= n;
  if (t < 0) t += n;
  std::vector<int> v;
  v.reserve(s.size());
  for (int e : s.elements()) {
    int g = e + t;
    if (g >= n) g -= n;
    v.push_back(g);
  }
  std::sort(v.begin(), v.end());
  return ResidueSet(n, std::move(v));
}

// x -> a*x + b with gcd(a, N) = 1; cardinality preserved.
inline ResidueSet affine(int a, int b, const ResidueSet& s) {
  require_nonempty(s, "affine");
  const int n = s.modulus();
  if (std::gcd(((a % n) + n) % n, n) != 1)
    throw std::invalid_argument("affine multiplier must be coprime with N");
  std::vector<int> v;
  v.reserve(s.size());
  for (int e : s.elements()) {
    long long g = (static_cast<long long>(a) * e + b) % n;
    if (g < 0) g += n;
    v.push_back(static_cast<int>(g));
  }
  std::sort(v.begin(), v.end());
  return ResidueSet(n, std::move(v));
}

namespace detail {

inline bool fixed_by_shift(const ResidueSet& s, int g) {
  const int n = s.modulus();
  for (int e : s.elements()) {
    int x = e + g;
    if (x >= n) x -= n;
    if (!s.contains(x)) return false;
  }
  return true;
}

inline std::vector<int> sorted_divisors(int n) {
  std::vector<int> d;
  for (int i = 1; static_cast<long long>(i) * i <= n; ++i)
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  std::sort(d.begin(), d.end());
  return d;
}

inline std::vector<int> prime_divisors(int n) {
  std::vector<int> ps;
  for (int p = 2; static_cast<long long>(p) * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace detail

// Least g != 0 with S + g = S, or nullopt when S is non-periodic.
// Any nonzero period exists iff some maximal-subgroup shift N/p fixes S,
// so the yes/no answer needs only the prime divisors of N.
inline std::optional<int> find_period(const ResidueSet& s) {
  require_nonempty(s, "find_period");
  const int n = s.modulus();
  bool periodic = false;
  for (int p : detail::prime_divisors(n))
    if (detail::fixed_by_shift(s, n / p)) {
      periodic = true;
      break;
    }
  if (!periodic) return std::nullopt;
  for (int d : detail::sorted_divisors(n)) {
    if (d == n) break;
    if (d > 0 && detail::fixed_by_shift(s, d)) return d;
  }
  return n;  // unreachable for n > 1; singleton Z_1 case
}

// Theorem-6 test: S + R = Z_N and |S||R| = N. A concrete witness is
// produced on failure by exhaustive representation counting.
inline DirectSumCertificate check_direct_sum(const ResidueSet& s,
                                             const ResidueSet& r) {
  require_same_modulus(s, r);
  require_nonempty(s, "check_direct_sum");
  require_nonempty(r, "check_direct_sum");
  const int n = s.modulus();
  DirectSumCertificate cert;

  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  std::size_t covered = 0;
  for (int a : s.elements())
    for (int b : r.elements()) {
      int g = a + b;
      if (g >= n) g -= n;
      if (!hit[static_cast<std::size_t>(g)]) {
        hit[static_cast<std::size_t>(g)] = 1;
        ++covered;
      }
    }
  if (covered == static_cast<std::size_t>(n) &&
      s.size() * r.size() == static_cast<std::size_t>(n)) {
    cert.verdict = true;
    return cert;
  }

  if (covered < static_cast<std::size_t>(n)) {
    for (int g = 0; g < n; ++g)
      if (!hit[static_cast<std::size_t>(g)]) {
        cert.uncovered = g;
        return cert;
      }
  }
  // Covered but |S||R| != N: some element has two representations.
  std::vector<std::array<int, 2>> first(static_cast<std::size_t>(n),
                                        {-1, -1});
  for (int a : s.elements())
    for (int b : r.elements()) {
      int g = a + b;
      if (g >= n) g -= n;
      auto& f = first[static_cast<std::size_t>(g)];
      if (f[0] < 0) {
        f = {a, b};
      } else if (f[0] != a || f[1] != b) {
        cert.doubled = std::array<int, 5>{g, f[0], f[1], a, b};
        return cert;
      }
    }
  return cert;
}

// Canonical rotation of the circular interval vector: the rotation that
// places a maximal interval last, lexicographically least among those.
// Matches the worked identification {0,2,10,18,56,64} -> (8,8,2,8,8,38).
inline BasicForm basic_form(const ResidueSet& s) {
  require_nonempty(s, "basic_form");
  const auto& e = s.elements();
  const int n = static_cast<int>(e.size());
  std::vector<int> d(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) d[static_cast<std::size_t>(i)] = e[i + 1] - e[i];
  d[static_cast<std::size_t>(n - 1)] = e[0] + s.modulus() - e[n - 1];

  const int maxd = *std::max_element(d.begin(), d.end());
  std::vector<int> best;
  std::vector<int> rot(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (d[static_cast<std::size_t>(i)] != maxd) continue;
    // rotation ending at index i
    for (int j = 0; j < n; ++j)
      rot[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>((i + 1 + j) % n)];
    if (best.empty() || rot < best) best = rot;
  }
  return BasicForm{std::move(best)};
}

// The translate of S containing 0 whose interval reading from 0 is the
// basic form. Idempotent and constant on translation orbits.
inline ResidueSet prime_form(const ResidueSet& s) {
  BasicForm bf = basic_form(s);
  std::vector<int> v;
  v.reserve(bf.intervals.size());
  int acc = 0;
  for (std::size_t i = 0; i + 1 < bf.intervals.size(); ++i) {
    v.push_back(acc += bf.intervals[i]);
  }
  v.insert(v.begin(), 0);
  return ResidueSet(s.modulus(), std::move(v));
}

// ⟨S⟩ for normalized S: the subgroup g·I_{N/g}, g = gcd of S and N.
inline ResidueSet subgroup_generated(const ResidueSet& s) {
  require_nonempty(s, "subgroup_generated");
  if (!s.contains(0))
    throw std::invalid_argument("subgroup_generated requires 0 in S");
  int g = s.modulus();
  for (int e : s.elements()) g = std::gcd(g, e);
  return scale_set(g, interval_set(s.modulus() / g, s.modulus()));
}

struct VuzaCheck {
  enum class Fail { none, not_direct, s_periodic, r_periodic };
  bool ok = false;
  Fail reason = Fail::none;
  DirectSumCertificate cert;
  std::optional<int> s_period;
  std::optional<int> r_period;

  std::string describe() const {
    switch (reason) {
      case Fail::none:
        return "Vuza canon";
      case Fail::not_direct:
        if (cert.uncovered)
          return "not a direct sum: uncovered residue " +
                 std::to_string(*cert.uncovered);
        if (cert.doubled) {
          const auto& w = *cert.doubled;
          return "not a direct sum: " + std::to_string(w[0]) + " = " +
                 std::to_string(w[1]) + "+" + std::to_string(w[2]) + " = " +
                 std::to_string(w[3]) + "+" + std::to_string(w[4]);
        }
        return "not a direct sum";
      case Fail::s_periodic:
        return "S periodic, period=" + std::to_string(*s_period);
      case Fail::r_periodic:
        return "R periodic, period=" + std::to_string(*r_period);
    }
    return "";
  }
};

inline VuzaCheck is_vuza_canon(const ResidueSet& s, const ResidueSet& r) {
  require_same_modulus(s, r);
  require_nonempty(s, "is_vuza_canon");
  require_nonempty(r, "is_vuza_canon");
  VuzaCheck chk;
  chk.cert = check_direct_sum(s, r);
  if (!chk.cert.verdict) {
    chk.reason = VuzaCheck::Fail::not_direct;
    return chk;
  }
  if (auto p = find_period(s)) {
    chk.reason = VuzaCheck::Fail::s_periodic;
    chk.s_period = p;
    return chk;
  }
  if (auto p = find_period(r)) {
    chk.reason = VuzaCheck::Fail::r_periodic;
    chk.r_period = p;
    return chk;
  }
  chk.ok = true;
  return chk;
}

// Set literal: "<N>:<r1>,<r2>,..." with strictly increasing residues.
inline ResidueSet parse_set(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("set literal needs a '<N>:' prefix");
  std::size_t pos = 0;
  int modulus = 0;
  try {
    modulus = std::stoi(text.substr(0, colon), &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad modulus in set literal");
  }
  if (pos != colon) throw std::invalid_argument("bad modulus in set literal");
  if (modulus <= 0) throw std::invalid_argument("modulus must be positive");

  std::vector<int> elems;
  std::string body = text.substr(colon + 1);
  std::istringstream in(body);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad residue '" + tok + "'");
    }
    if (used != tok.size())
      throw std::invalid_argument("bad residue '" + tok + "'");
    if (v < 0 || v >= modulus)
      throw std::invalid_argument("residue " + tok + " out of range");
    if (!elems.empty() && v <= elems.back())
      throw std::invalid_argument("residues must be strictly increasing");
    elems.push_back(v);
  }
  if (elems.empty()) throw std::invalid_argument("set literal has no residues");
  return ResidueSet(modulus, std::move(elems));
}

inline std::string to_string(const ResidueSet& s) {
  std::ostringstream os;
  os << s.modulus() << ':';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s.elements()[i];
  }
  return os.str();
}

}  // namespace vuza
