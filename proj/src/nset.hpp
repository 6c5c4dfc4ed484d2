#pragma once

#include "order.hpp"

namespace orderlab {

/// Three-valued subsets of { n >= 1 } with explicit entries up to a horizon
/// and a proven tail beyond it. Exact tails come from cycle detection
/// (Finite), coordinate / value slopes (Coordinatewise, Linear, QPlus, CuZ),
/// numerical-semigroup conductors (dim-1 algebraic) and separating
/// functionals (general algebraic).
struct NSet {
  long long H = 0;
  std::vector<Tri> at;  // index 1..H
  enum class Tail { AllYes, AllNo, Periodic, Unknown } tail = Tail::Unknown;
  long long period = 0;
  std::vector<Tri> mask;  // Periodic: entry for n = H+1+i is mask[i % period]

  Tri get(long long n) const {
    if (n <= H) return at[(size_t)n];
    switch (tail) {
      case Tail::AllYes: return Tri::Yes;
      case Tail::AllNo: return Tri::No;
      case Tail::Unknown: return Tri::Unknown;
      case Tail::Periodic: return mask[(size_t)((n - H - 1) % period)];
    }
    return Tri::Unknown;
  }

  static NSet make(long long H, Tail t) {
    NSet s;
    s.H = H;
    s.at.assign((size_t)H + 1, Tri::Unknown);
    s.tail = t;
    return s;
  }
};

/// side multiplier kn*n + k1 applied to an element (kn in {0,1})
struct AffineSide {
  int kn = 1;
  int k1 = 0;
};

/// { n >= 1 : (su.kn*n + su.k1) u  <=  (sv.kn*n + sv.k1) v }
NSet nset_affine(const Instance& M, const Elem& u, AffineSide su, const Elem& v, AffineSide sv,
                 const Budget& bud);

/// { n >= 1 : (su.kn*n + su.k1) u  ==  (sv.kn*n + sv.k1) v }
NSet nset_affine_eq(const Instance& M, const Elem& u, AffineSide su, const Elem& v,
                    AffineSide sv, const Budget& bud);

/// { n : (n+a)x <= (n+b)y }
inline NSet nset_shape(const Instance& M, const Elem& x, const Elem& y, int a, int b,
                       const Budget& bud) {
  return nset_affine(M, x, {1, a}, y, {1, b}, bud);
}

/// { n >= 1 : n*g lies in the generated submonoid } for a Vector backend
/// (independent of the order mode)
NSet nset_membership(const Instance& V, const VecZ& g, const Budget& bud);

NSet nset_intersect(const NSet& A, const NSet& B);
NSet nset_union(const NSet& A, const NSet& B);

/// derives { n : S(n) and S(n+1) }
NSet nset_pairs(const NSet& S);

struct ExistsN {
  Tri value = Tri::Unknown;
  long long n = 0;  // witness for Yes; first undecided multiplier for Unknown
};
ExistsN nset_exists(const NSet& S);

}  // namespace orderlab
