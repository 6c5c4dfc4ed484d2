#pragma once

#include "numeric.hpp"

namespace orderlab {

/// An element of Z = N_0 ⊔ (0,∞]: either a compact natural number or a
/// "soft" value in (0,∞]. The order and arithmetic are the unique positively
/// ordered structure in which the soft unit 1' sits strictly below the
/// compact 1 (1' ≤ 1, 1 ≰ 1') while 2 ≰ 1'+1.
struct CuzVal {
  bool soft = false;
  long long n = 0;  // compact value, n >= 0
  Rat r;            // soft value, r > 0 (ignored when inf)
  bool inf = false; // soft infinity

  static CuzVal compact(long long k) {
    CuzVal v;
    v.soft = false;
    v.n = k;
    return v;
  }
  static CuzVal soft_of(Rat x) {
    CuzVal v;
    v.soft = true;
    v.r = std::move(x);
    return v;
  }
  static CuzVal soft_inf() {
    CuzVal v;
    v.soft = true;
    v.inf = true;
    return v;
  }
  static CuzVal zero() { return compact(0); }

  bool is_zero() const { return !soft && n == 0; }

  /// the real value carried (∞ excluded by caller where it matters)
  Rat value() const { return soft ? r : Rat(n); }

  bool operator==(const CuzVal& o) const {
    if (soft != o.soft) return false;
    if (!soft) return n == o.n;
    if (inf != o.inf) return false;
    return inf || r == o.r;
  }

  std::string str() const;
};

CuzVal cuz_add(const CuzVal& a, const CuzVal& b);
CuzVal cuz_scale(long long k, const CuzVal& a);
bool cuz_leq(const CuzVal& a, const CuzVal& b);
bool cuz_way_below(const CuzVal& a, const CuzVal& b);

/// total order used for canonical sorting (compacts first, then softs by
/// value, infinity last); unrelated to the semigroup order.
int cuz_cmp_syntactic(const CuzVal& a, const CuzVal& b);

/// parses "compact:n" | "soft:p/q" | "soft:inf"
CuzVal parse_cuz(const std::string& s);

}  // namespace orderlab
