#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orderlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Integer vectors over Z^d; coordinates stay small (desk-scale instances)
/// but intermediate multiples are guarded by 64-bit range checks on parse.
using VecZ = std::vector<long long>;

inline VecZ vec_add(const VecZ& a, const VecZ& b) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline VecZ vec_sub(const VecZ& a, const VecZ& b) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline VecZ vec_scale(long long k, const VecZ& a) {
  VecZ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

inline bool vec_is_zero(const VecZ& a) {
  for (long long c : a)
    if (c != 0) return false;
  return true;
}

inline long long vec_dot(const VecZ& a, const VecZ& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Parses decimal-free rational literals "p/q" or "p" (q > 0 after
/// normalization). Throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

inline int rat_sign(const Rat& r) { return r.sign(); }

/// Elements of Z[sqrt 2] with rational coefficients: a + b*sqrt(2).
/// Comparison is exact: the sign of a + b*sqrt(2) is decided by comparing
/// a^2 with 2 b^2 when the coefficient signs disagree.
struct Quad {
  Rat a;
  Rat b;

  Quad() = default;
  Quad(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}
  static Quad of_int(long long n) { return Quad(Rat(n), Rat(0)); }

  Quad operator+(const Quad& o) const { return Quad(a + o.a, b + o.b); }
  Quad operator-(const Quad& o) const { return Quad(a - o.a, b - o.b); }
  Quad scaled(const Rat& k) const { return Quad(a * k, b * k); }

  /// sign of a + b*sqrt(2); exact.
  int sign() const {
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare |a| against |b|*sqrt(2), i.e. a^2 against 2 b^2
    Rat a2 = a * a, b22 = 2 * b * b;
    if (a2 == b22)
      throw std::logic_error("a^2 == 2 b^2 with nonzero coefficients: sqrt(2) rational?");
    return (a2 > b22) ? sa : sb;
  }

  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const Quad& o) const { return a == o.a && b == o.b; }
  bool operator<(const Quad& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const Quad& o) const { return (*this - o).sign() <= 0; }

  std::string str() const;
};

}  // namespace orderlab
