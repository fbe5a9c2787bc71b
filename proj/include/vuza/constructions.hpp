#pragma once
// Canon-producing constructions: the base block theorem, its H-variants,
// the perturbation/extension mechanisms, concatenation, lifting and
// subgroup restriction. Every constructor re-verifies its output with the
// direct-sum and periodicity oracles before returning it.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vuza/orders.hpp"
#include "vuza/zn.hpp"

namespace vuza {

enum class Variant { standard, p1, p2 };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::standard: return "standard";
    case Variant::p1: return "variant_p1";
    case Variant::p2: return "variant_p2";
  }
  return "?";
}

// The construction kit for one canon family. All invariants (X, Y, H
// direct, K a transversal of H) are certified at construction.
struct BuildingBlocks {
  VuzaParams params;
  Variant variant = Variant::standard;
  int alpha = 1, beta = 1;
  ResidueSet A, B, U, V, Uprime, Vprime, X, Y, H, K, K1, K2;
};

struct CanonPair {
  ResidueSet S, R;
  std::string provenance;
};

struct RhythmicCanon {
  ResidueSet S, R;
  bool vuza = false;  // rhythmic-only results keep this false
  std::string provenance;
};

inline CanonPair verified_canon(ResidueSet s, ResidueSet r,
                                std::string provenance) {
  auto chk = is_vuza_canon(s, r);
  if (chk.ok) return CanonPair{std::move(s), std::move(r), std::move(provenance)};
  if (chk.reason == VuzaCheck::Fail::s_periodic)
    throw NonPeriodicityError("S periodic: " + chk.describe(), *chk.s_period);
  if (chk.reason == VuzaCheck::Fail::r_periodic)
    throw NonPeriodicityError("R periodic: " + chk.describe(), *chk.r_period);
  throw std::logic_error("direct-sum invariant violated: " + chk.describe());
}

namespace detail {

inline ResidueSet dilated_interval(long long k, int len, int modulus) {
  return scale_set(static_cast<int>(k % modulus == 0 ? modulus : k % modulus),
                   interval_set(len, modulus));
}

inline ResidueSet union_disjoint(const ResidueSet& a, const ResidueSet& b) {
  std::vector<int> v = a.elements();
  for (int e : b.elements()) {
    if (a.contains(e))
      throw std::invalid_argument("sets are not disjoint at " +
                                  std::to_string(e));
    v.push_back(e);
  }
  return ResidueSet(a.modulus(), std::move(v));
}

inline ResidueSet sum_direct(const ResidueSet& a, const ResidueSet& b,
                             const char* what) {
  ResidueSet s = sumset(a, b);
  if (s.size() != a.size() * b.size())
    throw std::invalid_argument(std::string(what) + ": sum is not direct");
  return s;
}

}  // namespace detail

// Default transversal of H for a given variant: {0, 1, ..., |K|-1}.
inline ResidueSet default_transversal(const VuzaParams& q, Variant var) {
  int count = var == Variant::standard ? q.n3 : (var == Variant::p1 ? q.p1 : q.p2);
  return interval_set(count, static_cast<int>(q.order()));
}

// Shared block-table engine: each theorem contributes its table of dilated
// intervals, its subgroup H and its hypothesis gate.
inline BuildingBlocks make_blocks(const VuzaParams& q, Variant var, int alpha,
                                  int beta, ResidueSet k1, ResidueSet k2) {
  validate(q);
  const int n = static_cast<int>(q.order());
  const long long n1 = q.n1, p1 = q.p1, n2 = q.n2, p2 = q.p2, n3 = q.n3;

  BuildingBlocks b;
  b.params = q;
  b.variant = var;
  b.alpha = alpha;
  b.beta = beta;

  auto iv = [&](long long k, long long len) {
    return detail::dilated_interval(k, static_cast<int>(len), n);
  };

  switch (var) {
    case Variant::standard:
      if (alpha != 1 && alpha != q.n1 && alpha != q.p1)
        throw std::invalid_argument("alpha must be 1, n1 or p1");
      if (beta != 1 && beta != q.n2 && beta != q.p2)
        throw std::invalid_argument("beta must be 1, n2 or p2");
      b.A = iv(n1 * p1 * n3, n2);
      b.B = iv(n2 * p2 * n3, n1);
      b.U = iv(n1 * n2 * n3 * p1, p2);
      b.V = iv(n1 * n2 * n3 * p2, p1);
      b.Uprime = iv(static_cast<long long>(alpha) * n2 * n3, p2);
      b.Vprime = iv(static_cast<long long>(beta) * n1 * n3, p1);
      break;
    case Variant::p1:
      if (std::gcd(q.n1 * q.n3, q.n2 * q.p2) != 1)
        throw std::invalid_argument("variant p1 needs gcd(n1*n3, n2*p2) = 1");
      b.A = iv(n1 * p1 * n3, n2);
      b.B = iv(n2 * p2 * p1, n1);
      b.U = iv(n1 * n2 * n3 * p1, p2);
      b.V = iv(n1 * p1, n3);
      b.Uprime = iv(n2 * p1, p2);
      b.Vprime = iv(n1 * p1 * n2 * p2, n3);
      break;
    case Variant::p2:
      if (std::gcd(q.n1 * q.p1, q.n2 * q.n3) != 1)
        throw std::invalid_argument("variant p2 needs gcd(n1*p1, n2*n3) = 1");
      b.A = iv(n1 * p1 * p2, n2);
      b.B = iv(n2 * n3 * p2, n1);
      b.U = iv(n1 * n2 * p1 * p2, n3);
      b.V = iv(n1 * n2 * n3 * p2, p1);
      b.Uprime = iv(n2 * p2, n3);
      b.Vprime = iv(n1 * p2, p1);
      break;
  }

  b.X = detail::sum_direct(b.A, b.U, "X = A+U");
  b.Y = detail::sum_direct(b.B, b.V, "Y = B+V");
  b.H = detail::sum_direct(b.X, b.Y, "H = X+Y");

  ResidueSet expected_h =
      var == Variant::standard ? iv(n3, n1 * p1 * n2 * p2)
      : var == Variant::p1     ? iv(p1, n1 * n2 * n3 * p2)
                               : iv(p2, n1 * n2 * n3 * p1);
  if (!(b.H == expected_h))
    throw std::logic_error("H does not match its theorem table");

  if (k1.modulus() != n || k2.modulus() != n)
    throw std::invalid_argument("K1/K2 modulus mismatch");
  b.K1 = std::move(k1);
  b.K2 = std::move(k2);
  b.K = detail::union_disjoint(b.K1, b.K2);
  if (b.K.empty()) throw std::invalid_argument("K must be non-empty");
  if (b.K.size() * b.H.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("K1 u K2 has wrong size for a transversal");
  if (!check_direct_sum(b.H, b.K).verdict)
    throw std::invalid_argument("K1 u K2 is not a transversal of H");
  return b;
}

inline BuildingBlocks base_blocks(const VuzaParams& q, int alpha, int beta,
                                  ResidueSet k1, ResidueSet k2) {
  return make_blocks(q, Variant::standard, alpha, beta, std::move(k1),
                     std::move(k2));
}

// Default split K1 = {0}, K2 = {1, ..., |K|-1}.
inline BuildingBlocks base_blocks(const VuzaParams& q, int alpha = 1,
                                  int beta = 1) {
  const int n = static_cast<int>(q.order());
  ResidueSet k = default_transversal(q, Variant::standard);
  std::vector<int> rest(k.elements().begin() + 1, k.elements().end());
  return base_blocks(q, alpha, beta, ResidueSet(n, {0}),
                     ResidueSet(n, std::move(rest)));
}

// S = A+B, R = (U+V'+K1) u (U'+V+K2). S's non-periodicity is an invariant
// of the block tables; R's is a theorem hypothesis checked here.
inline CanonPair construct_canon(const BuildingBlocks& b,
                                 std::string provenance = "base") {
  ResidueSet s = detail::sum_direct(b.A, b.B, "S = A+B");
  const int n = s.modulus();
  std::vector<int> rv;
  auto add_part = [&](const ResidueSet& kernel, const ResidueSet& part) {
    for (int k : part.elements())
      for (int e : kernel.elements()) {
        int g = e + k;
        if (g >= n) g -= n;
        rv.push_back(g);
      }
  };
  if (!b.K1.empty()) add_part(sumset(b.U, b.Vprime), b.K1);
  if (!b.K2.empty()) add_part(sumset(b.Uprime, b.V), b.K2);
  ResidueSet r = ResidueSet::reduce(n, rv);

  if (auto p = find_period(s))
    throw std::logic_error("block invariant violated: S periodic with period " +
                           std::to_string(*p));
  if (auto p = find_period(r))
    throw NonPeriodicityError("R periodic, period=" + std::to_string(*p), *p);
  return verified_canon(std::move(s), std::move(r), std::move(provenance));
}

inline CanonPair variant_p1_canon(const VuzaParams& q, ResidueSet k1,
                                  ResidueSet k2) {
  return construct_canon(
      make_blocks(q, Variant::p1, 1, 1, std::move(k1), std::move(k2)),
      "variant_p1");
}

inline CanonPair variant_p2_canon(const VuzaParams& q, ResidueSet k1,
                                  ResidueSet k2) {
  return construct_canon(
      make_blocks(q, Variant::p2, 1, 1, std::move(k1), std::move(k2)),
      "variant_p2");
}

using Substitution = std::pair<int, int>;  // (replaced element, added offset)

namespace detail {

// (base \ {e_j}) u {e_j + o_j} with o_j drawn from `offsets` \ {0}.
// Cardinality-changing substitution sets are rejected: every theorem
// preserves |U'| = |U| through the direct-sum cardinality count.
inline ResidueSet substitute(const ResidueSet& base, const ResidueSet& offsets,
                             const std::vector<Substitution>& subs,
                             const char* what) {
  const int n = base.modulus();
  std::vector<int> removed, added;
  for (const auto& [elem, off] : subs) {
    if (elem == 0 || !base.contains(elem))
      throw std::invalid_argument(std::string(what) +
                                  ": substituted element must be a non-zero member");
    if (off == 0 || !offsets.contains(off))
      throw std::invalid_argument(std::string(what) +
                                  ": offset must be a non-zero member of its set");
    removed.push_back(elem);
    added.push_back((elem + off) % n);
  }
  std::vector<int> v;
  for (int e : base.elements())
    if (std::find(removed.begin(), removed.end(), e) == removed.end())
      v.push_back(e);
  for (int e : added) v.push_back(e);
  std::sort(v.begin(), v.end());
  std::vector<int> uniq = v;
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (uniq.size() != base.size())
    throw std::invalid_argument(std::string(what) +
                                ": substitution changes cardinality");
  return ResidueSet(n, std::move(uniq));
}

}  // namespace detail

// U' = (U \ {u_j}) u {u_j + b_j}, V' = (V \ {v_i}) u {v_i + a_i}.
// The absorption identities V+U'+B = V+U+B and U+V'+A = U+V+A are asserted.
inline BuildingBlocks perturb_R(const BuildingBlocks& b,
                                const std::vector<Substitution>& u_subs,
                                const std::vector<Substitution>& v_subs) {
  BuildingBlocks out = b;
  out.Uprime = detail::substitute(b.U, b.B, u_subs, "perturb_R(U)");
  out.Vprime = detail::substitute(b.V, b.A, v_subs, "perturb_R(V)");
  if (!(sumset(sumset(b.V, out.Uprime), b.B) == sumset(sumset(b.V, b.U), b.B)))
    throw std::logic_error("perturb_R: V+U'+B != V+U+B");
  if (!(sumset(sumset(b.U, out.Vprime), b.A) == sumset(sumset(b.U, b.V), b.A)))
    throw std::logic_error("perturb_R: U+V'+A != U+V+A");
  return out;
}

// S' = A'+B' with A' = (A \ {a_j}) u {a_j + u_j}, B' likewise over V.
// A' and B' must themselves be non-periodic (theorem hypothesis).
inline ResidueSet perturb_S(const BuildingBlocks& b,
                            const std::vector<Substitution>& a_subs,
                            const std::vector<Substitution>& b_subs) {
  ResidueSet aprime = detail::substitute(b.A, b.U, a_subs, "perturb_S(A)");
  ResidueSet bprime = detail::substitute(b.B, b.V, b_subs, "perturb_S(B)");
  if (auto p = find_period(aprime))
    throw NonPeriodicityError("A' periodic, period=" + std::to_string(*p), *p);
  if (auto p = find_period(bprime))
    throw NonPeriodicityError("B' periodic, period=" + std::to_string(*p), *p);
  if (!(sumset(aprime, b.U) == sumset(b.A, b.U)))
    throw std::logic_error("perturb_S: A'+U != A+U");
  if (!(sumset(bprime, b.V) == sumset(b.B, b.V)))
    throw std::logic_error("perturb_S: B'+V != B+V");
  return detail::sum_direct(aprime, bprime, "S' = A'+B'");
}

// Szabo criterion: for normalized non-periodic A, B with A + <B> direct and
// proper, A+B is certified non-periodic. When A + <B> is all of Z_N the
// criterion is vacuous and we fall back to the exhaustive test.
inline bool szabo_nonperiodic(const ResidueSet& a, const ResidueSet& bset) {
  require_same_modulus(a, bset);
  if (!a.contains(0) || !bset.contains(0))
    throw std::invalid_argument("szabo_nonperiodic requires normalized sets");
  if (find_period(a) || find_period(bset))
    throw std::invalid_argument("szabo_nonperiodic requires non-periodic inputs");
  ResidueSet span = subgroup_generated(bset);
  ResidueSet s = sumset(a, span);
  bool direct = s.size() == a.size() * span.size();
  if (direct && s.size() < static_cast<std::size_t>(a.modulus())) return true;
  return !find_period(sumset(a, bset)).has_value();
}

// Z_{n3} = L + M direct, M = M1 u M2:
// S' = A+B+L, R' = (U+V'+M1) u (U'+V+M2) is a rhythmic canon. Vuza status
// needs the explicit periodicity checks and is reported in the flag.
inline RhythmicCanon split_K_canon(const BuildingBlocks& b, const ResidueSet& l,
                                   const ResidueSet& m1, const ResidueSet& m2) {
  const int n3 = b.params.n3;
  const int n = static_cast<int>(b.params.order());
  if (l.modulus() != n3 || m1.modulus() != n3 || m2.modulus() != n3)
    throw std::invalid_argument("L, M1, M2 must live in Z_{n3}");
  if (!(b.K == interval_set(n3, n)))
    throw std::invalid_argument("split_K_canon needs the default transversal");
  ResidueSet m = detail::union_disjoint(m1, m2);
  auto cert = check_direct_sum(l, m);
  if (!cert.verdict)
    throw std::invalid_argument("L + M is not a direct sum of Z_{n3}");

  auto lift = [&](const ResidueSet& t) {
    return t.empty() ? ResidueSet(n, {}) : ResidueSet(n, t.elements());
  };
  ResidueSet s = sumset(detail::sum_direct(b.A, b.B, "A+B"), lift(l));
  std::vector<int> rv;
  auto add_part = [&](const ResidueSet& kernel, const ResidueSet& part) {
    for (int k : part.elements())
      for (int e : kernel.elements()) rv.push_back(e + k);
  };
  if (!m1.empty()) add_part(sumset(b.U, b.Vprime), lift(m1));
  if (!m2.empty()) add_part(sumset(b.Uprime, b.V), lift(m2));
  ResidueSet r = ResidueSet::reduce(n, rv);

  auto pair_cert = check_direct_sum(s, r);
  if (!pair_cert.verdict)
    throw std::logic_error("split_K_canon: emitted pair is not a factorization");
  bool vuza = !find_period(s) && !find_period(r);
  return RhythmicCanon{std::move(s), std::move(r), vuza, "split_K"};
}

// R = union over j of (R_j + K_j) for distinct kernels R_j and a partition
// (K_j) of the transversal K; paired with S = A+B and verified.
inline CanonPair multi_R_union(const BuildingBlocks& b,
                               const std::vector<ResidueSet>& kernels,
                               const std::vector<ResidueSet>& parts) {
  if (kernels.size() != parts.size())
    throw std::invalid_argument("need one kernel per part of K");
  for (std::size_t i = 0; i < kernels.size(); ++i)
    for (std::size_t j = i + 1; j < kernels.size(); ++j)
      if (kernels[i] == kernels[j])
        throw std::invalid_argument("fewer distinct kernels than parts");

  const int n = static_cast<int>(b.params.order());
  ResidueSet seen(n, {});
  std::vector<int> rv;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].modulus() != n || kernels[j].modulus() != n)
      throw std::invalid_argument("modulus mismatch in kernels/parts");
    seen = detail::union_disjoint(seen, parts[j]);
    for (int k : parts[j].elements())
      for (int e : kernels[j].elements()) rv.push_back(e + k);
  }
  if (!(seen == b.K))
    throw std::invalid_argument("parts must partition the transversal K");

  ResidueSet s = detail::sum_direct(b.A, b.B, "S = A+B");
  ResidueSet r = ResidueSet::reduce(n, rv);
  auto cert = check_direct_sum(s, r);
  if (!cert.verdict)
    throw std::invalid_argument("kernel assignment does not factorize Z_N");
  if (auto p = find_period(r))
    throw NonPeriodicityError("R periodic, period=" + std::to_string(*p), *p);
  return verified_canon(std::move(s), std::move(r), "multi_R");
}

// (S + N*I_k, R) over Z_{kN}: always a rhythmic canon, never Vuza.
inline RhythmicCanon concatenate(const ResidueSet& s, const ResidueSet& r,
                                 int k) {
  require_same_modulus(s, r);
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!check_direct_sum(s, r).verdict)
    throw std::invalid_argument("(S, R) is not a rhythmic canon");
  const int n = s.modulus();
  const int kn = n * k;
  std::vector<int> sv;
  for (int j = 0; j < k; ++j)
    for (int e : s.elements()) sv.push_back(e + j * n);
  ResidueSet s2(kn, std::move(sv));
  ResidueSet r2(kn, r.elements());
  if (!check_direct_sum(s2, r2).verdict)
    throw std::logic_error("concatenate: output is not a factorization");
  return RhythmicCanon{std::move(s2), std::move(r2), false, "concatenated"};
}

// S' = kS + I_k, R' = kR over Z_{kN}; kN must itself be a Vuza order.
inline CanonPair lift_canon(const ResidueSet& s, const ResidueSet& r, int k) {
  require_same_modulus(s, r);
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!is_vuza_canon(s, r).ok)
    throw std::invalid_argument("(S, R) is not a Vuza canon");
  const int n = s.modulus();
  if (!is_vuza_order(k * n))
    throw std::invalid_argument("kN is not a Vuza order");
  const int kn = n * k;
  std::vector<int> sv, rv;
  for (int e : s.elements())
    for (int i = 0; i < k; ++i) sv.push_back(k * e + i);
  for (int e : r.elements()) rv.push_back(k * e);
  return verified_canon(ResidueSet(kn, std::move(sv)),
                        ResidueSet(kn, std::move(rv)), "lifted");
}

// (S, R n H) seen through the quotient by k, where H = k*I_{N/k}:
// S' = S/k, R' = (R n H)/k as a Vuza canon of Z_{N/k}.
inline CanonPair restrict_canon(const ResidueSet& s, const ResidueSet& r,
                                int k) {
  require_same_modulus(s, r);
  const int n = s.modulus();
  if (k < 1 || n % k != 0) throw std::invalid_argument("k must divide N");
  for (int e : s.elements())
    if (e % k != 0)
      throw std::invalid_argument("S is not a subset of the subgroup k*I_{N/k}");
  const int m = n / k;
  std::vector<int> sv, rv;
  for (int e : s.elements()) sv.push_back(e / k);
  for (int e : r.elements())
    if (e % k == 0) rv.push_back(e / k);
  if (rv.empty()) throw std::invalid_argument("R meets the subgroup nowhere");
  return verified_canon(ResidueSet(m, std::move(sv)),
                        ResidueSet(m, std::move(rv)), "restricted");
}

inline CanonPair restrict_canon(const ResidueSet& s, const ResidueSet& r,
                                const ResidueSet& h) {
  require_same_modulus(s, h);
  if (h.empty() || !h.contains(0) || !(subgroup_generated(h) == h))
    throw std::invalid_argument("H must be a subgroup of Z_N");
  return restrict_canon(s, r, h.modulus() / static_cast<int>(h.size()));
}

}  // namespace vuza
