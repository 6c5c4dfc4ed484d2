#include "cuz.hpp"

namespace orderlab {

std::string CuzVal::str() const {
  if (!soft) return "compact:" + std::to_string(n);
  if (inf) return "soft:inf";
  return "soft:" + rat_str(r);
}

CuzVal cuz_add(const CuzVal& a, const CuzVal& b) {
  if (!a.soft && !b.soft) return CuzVal::compact(a.n + b.n);
  // anything involving a soft summand is soft, values added
  if ((a.soft && a.inf) || (b.soft && b.inf)) return CuzVal::soft_inf();
  return CuzVal::soft_of(a.value() + b.value());
}

CuzVal cuz_scale(long long k, const CuzVal& a) {
  if (k == 0) return CuzVal::zero();
  if (!a.soft) return CuzVal::compact(k * a.n);
  if (a.inf) return CuzVal::soft_inf();
  return CuzVal::soft_of(Rat(k) * a.r);
}

bool cuz_leq(const CuzVal& a, const CuzVal& b) {
  if (!a.soft && !b.soft) return a.n <= b.n;
  if (a.soft && b.soft) {
    if (b.inf) return true;
    if (a.inf) return false;
    return a.r <= b.r;
  }
  if (a.soft) {  // soft <= compact iff value <= n
    if (a.inf) return false;
    return a.r <= Rat(b.n);
  }
  // compact <= soft iff n < value (strict: the soft slice sits "just below")
  if (b.inf) return true;
  return Rat(a.n) < b.r;
}

bool cuz_way_below(const CuzVal& a, const CuzVal& b) {
  if (!b.soft) return cuz_leq(a, b);
  if (b.inf) {
    if (!a.soft) return true;
    return !a.inf;
  }
  if (!a.soft) return Rat(a.n) < b.r;
  if (a.inf) return false;
  return a.r < b.r;
}

int cuz_cmp_syntactic(const CuzVal& a, const CuzVal& b) {
  if (a.soft != b.soft) return a.soft ? 1 : -1;
  if (!a.soft) return (a.n < b.n) ? -1 : (a.n > b.n ? 1 : 0);
  if (a.inf != b.inf) return a.inf ? 1 : -1;
  if (a.inf) return 0;
  return (a.r < b.r) ? -1 : (a.r > b.r ? 1 : 0);
}

CuzVal parse_cuz(const std::string& s) {
  if (s.rfind("compact:", 0) == 0) {
    std::string t = s.substr(8);
    Rat r = parse_rat(t);
    if (denominator(r) != 1 || r.sign() < 0)
      throw std::invalid_argument("compact value must be a nonnegative integer: " + s);
    return CuzVal::compact(static_cast<long long>(numerator(r)));
  }
  if (s.rfind("soft:", 0) == 0) {
    std::string t = s.substr(5);
    if (t == "inf") return CuzVal::soft_inf();
    Rat r = parse_rat(t);
    if (r.sign() <= 0) throw std::invalid_argument("soft value must be positive: " + s);
    return CuzVal::soft_of(r);
  }
  throw std::invalid_argument("bad Z element literal (want compact:n | soft:p/q | soft:inf): " + s);
}

}  // namespace orderlab
