#pragma once
// Classification of orders N as good/bad and enumeration of the
// parameter decompositions N = n1*n2*n3*p1*p2.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "vuza/zn.hpp"

namespace vuza {

struct VuzaParams {
  int n1 = 0, p1 = 0, n2 = 0, p2 = 0, n3 = 0;

  long long order() const {
    return 1LL * n1 * n2 * n3 * p1 * p2;
  }

  bool operator==(const VuzaParams&) const = default;
  auto operator<=>(const VuzaParams&) const = default;
};

namespace detail {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; 1LL * d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Exponents of the prime factorization, unordered.
inline std::vector<int> prime_exponents(int n) {
  std::vector<int> exps;
  for (int p = 2; 1LL * p * p <= n; ++p)
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      exps.push_back(e);
    }
  if (n > 1) exps.push_back(1);
  return exps;
}

}  // namespace detail

inline void validate(const VuzaParams& q) {
  if (q.n1 < 2 || q.n2 < 2 || q.n3 < 2)
    throw std::invalid_argument("n1, n2, n3 must all be >= 2");
  if (!detail::is_prime(q.p1) || !detail::is_prime(q.p2) || q.p1 == q.p2)
    throw std::invalid_argument("p1, p2 must be distinct primes");
  if (std::gcd(q.n1 * q.p1, q.n2 * q.p2) != 1)
    throw std::invalid_argument("n1*p1 and n2*p2 must be coprime");
}

// Theorem 1(i): N is good exactly when its exponent multiset matches
// p^a, p^a q, p^2 q^2, p^a q r (a = 1, 2) or p q r s.
inline bool is_vuza_order(int n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  auto exps = detail::prime_exponents(n);
  std::sort(exps.begin(), exps.end(), std::greater<int>());
  switch (exps.size()) {
    case 0:
    case 1:
      return false;  // 1 and p^a
    case 2:
      if (exps[1] == 1) return false;                 // p^a q
      if (exps[0] == 2 && exps[1] == 2) return false;  // p^2 q^2
      return true;
    case 3:
      return !(exps[0] <= 2 && exps[1] == 1 && exps[2] == 1);  // p^a q r
    case 4:
      return !(exps[0] == 1);  // pqrs
    default:
      return true;
  }
}

// All (n1, p1, n2, p2, n3) with N = n1 n2 n3 p1 p2, p1 != p2 prime,
// gcd(n1 p1, n2 p2) = 1 and n1, n2, n3 >= 2.
inline std::vector<VuzaParams> vuza_decompositions(int n) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  std::vector<VuzaParams> out;
  auto primes = detail::prime_divisors(n);
  for (int p1 : primes)
    for (int p2 : primes) {
      if (p1 == p2) continue;
      if (n % (p1 * p2) != 0) continue;
      int m = n / (p1 * p2);
      for (int a1 = 2; a1 <= m; ++a1) {
        if (m % a1 != 0) continue;
        int m2 = m / a1;
        for (int a2 = 2; a2 <= m2; ++a2) {
          if (m2 % a2 != 0) continue;
          int a3 = m2 / a2;
          if (a3 < 2) continue;
          if (std::gcd(a1 * p1, a2 * p2) != 1) continue;
          out.push_back(VuzaParams{a1, p1, a2, p2, a3});
        }
      }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<int> list_vuza_orders(int limit) {
  if (limit < 1) throw std::invalid_argument("limit must be positive");
  std::vector<int> out;
  for (int n = 1; n <= limit; ++n)
    if (is_vuza_order(n)) out.push_back(n);
  return out;
}

}  // namespace vuza
