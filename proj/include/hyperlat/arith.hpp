#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlat {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when an enumeration or search exceeds its configured budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }
inline Int rat_ceil(const Rat& r) { return ceil_div(r.get_num(), r.get_den()); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// mpq_class does not canonicalize two-argument constructions; this does.
inline Rat frac(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Largest integer s with s*s <= n; requires n >= 0.
inline Int isqrt(const Int& n) {
  Int s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

inline bool is_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  Int s = isqrt(n);
  if (root) *root = s;
  return s * s == n;
}

inline long to_long(const Int& n) {
  if (!n.fits_slong_p()) throw DomainError("integer too large for long");
  return n.get_si();
}

using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;

}  // namespace hyperlat
