#include "nset.hpp"

#include <functional>
#include <map>
#include <numeric>

namespace orderlab {

namespace {

constexpr long long kHorizonCap = 4096;
constexpr long long kSearchCap = 1LL << 40;

long long side_mul(AffineSide s, long long n) { return (long long)s.kn * n + s.k1; }

/// {n >= 1 : s*n + c >= 0} (or > 0 when strict) for a monotone linear
/// condition; s_sign is the exact sign of s, holds(n) the exact test. The
/// flip point is located by doubling + bisection and pulled inside the
/// explicit range so the tail is certain.
NSet build_linear(long long H, int s_sign, const std::function<bool(long long)>& holds) {
  if (s_sign == 0) {
    bool h = holds(1);
    NSet s = NSet::make(H, h ? NSet::Tail::AllYes : NSet::Tail::AllNo);
    for (long long n = 1; n <= H; ++n) s.at[(size_t)n] = h ? Tri::Yes : Tri::No;
    return s;
  }
  bool target = s_sign > 0;  // eventually-true iff slope positive
  auto settled = [&](long long n) { return holds(n) == target; };
  long long flip;  // least n >= 1 with settled(n)
  if (settled(1)) {
    flip = 1;
  } else {
    long long lo = 1, hi = 2;
    while (hi < kSearchCap && !settled(hi)) {
      lo = hi;
      hi *= 2;
    }
    if (!settled(hi)) {
      NSet s = NSet::make(H, NSet::Tail::Unknown);
      for (long long n = 1; n <= H; ++n) s.at[(size_t)n] = holds(n) ? Tri::Yes : Tri::No;
      return s;
    }
    while (lo + 1 < hi) {
      long long mid = lo + (hi - lo) / 2;
      (settled(mid) ? hi : lo) = mid;
    }
    flip = hi;
  }
  long long HH = std::max(H, std::min(flip - 1, kHorizonCap));
  NSet out;
  out.H = HH;
  out.at.assign((size_t)HH + 1, Tri::Unknown);
  for (long long n = 1; n <= HH; ++n) {
    bool h = target ? (n >= flip) : (n < flip);
    out.at[(size_t)n] = h ? Tri::Yes : Tri::No;
  }
  if (flip <= HH + 1)
    out.tail = target ? NSet::Tail::AllYes : NSet::Tail::AllNo;
  else
    out.tail = NSet::Tail::Unknown;  // flip beyond the horizon cap
  return out;
}

NSet linear_rat(long long H, const Rat& s, const Rat& c, bool strict) {
  auto holds = [s, c, strict](long long n) {
    Rat v = s * Rat(n) + c;
    int sg = v.sign();
    return strict ? sg > 0 : sg >= 0;
  };
  return build_linear(H, s.sign(), holds);
}

NSet linear_quad(long long H, const Quad& s, const Quad& c, bool strict) {
  auto holds = [s, c, strict](long long n) {
    int sg = (s.scaled(Rat(n)) + c).sign();
    return strict ? sg > 0 : sg >= 0;
  };
  return build_linear(H, s.sign(), holds);
}

NSet const_set(long long H, Tri v) {
  NSet s = NSet::make(H, v == Tri::Yes  ? NSet::Tail::AllYes
                         : v == Tri::No ? NSet::Tail::AllNo
                                        : NSet::Tail::Unknown);
  for (long long n = 1; n <= H; ++n) s.at[(size_t)n] = v;
  return s;
}

/// Finite backend: the pair state walks a finite orbit; closing the cycle
/// settles every multiplier
NSet finite_affine(const Instance& M, const Elem& u, AffineSide su, const Elem& v, AffineSide sv,
                   long long H, bool equality) {
  auto idx_mul = [&](long long k, int e) {
    int acc = 0;
    for (long long i = 0; i < k; ++i) acc = M.table[acc][e];
    return acc;
  };
  int a = idx_mul(side_mul(su, 1), u.index());
  int bb = idx_mul(side_mul(sv, 1), v.index());
  int stepa = su.kn ? u.index() : 0;
  int stepb = sv.kn ? v.index() : 0;
  std::map<std::pair<int, int>, long long> seen;
  std::vector<char> yes;
  long long n = 1;
  while (!seen.count({a, bb})) {
    seen[{a, bb}] = n;
    yes.push_back(equality ? (a == bb) : M.ord[a][bb]);
    if (stepa) a = M.table[a][stepa];
    if (stepb) bb = M.table[bb][stepb];
    ++n;
  }
  long long f = seen[{a, bb}];
  long long p = n - f;
  long long HH = std::max(H, (long long)yes.size());
  NSet out;
  out.H = HH;
  out.at.assign((size_t)HH + 1, Tri::Unknown);
  auto val = [&](long long k) -> Tri {
    long long i = (k <= (long long)yes.size()) ? k : f + ((k - f) % p);
    return yes[(size_t)i - 1] ? Tri::Yes : Tri::No;
  };
  for (long long k = 1; k <= HH; ++k) out.at[(size_t)k] = val(k);
  out.tail = NSet::Tail::Periodic;
  out.period = p;
  out.mask.resize((size_t)p);
  for (long long i = 0; i < p; ++i) out.mask[(size_t)i] = val(HH + 1 + i);
  return out;
}

/// dim-1 algebraic: membership of the integer target decided through the
/// gcd and the conductor of the scaled numerical semigroup
NSet dim1_affine(const Instance& M, long long u0, AffineSide su, long long v0, AffineSide sv,
                 long long H) {
  const VecMono& mono = M.mono;
  long long d = mono.d1_gcd;
  long long s = (long long)sv.kn * v0 - (long long)su.kn * u0;
  long long c0 = (long long)sv.k1 * v0 - (long long)su.k1 * u0;
  auto target = [&](long long n) { return s * n + c0; };
  auto member = [&](long long t) {
    if (t < 0 || t % d != 0) return false;
    long long td = t / d;
    return td >= mono.d1_conductor ||
           (td < (long long)mono.d1_member.size() && mono.d1_member[(size_t)td]);
  };
  if (s < 0) {
    long long flip = 1;
    while (target(flip) >= 0 && flip < kHorizonCap) ++flip;
    long long HH = std::min(std::max(H, flip), kHorizonCap);
    NSet out = NSet::make(HH, flip < kHorizonCap ? NSet::Tail::AllNo : NSet::Tail::Unknown);
    for (long long n = 1; n <= HH; ++n)
      out.at[(size_t)n] = member(target(n)) ? Tri::Yes : Tri::No;
    return out;
  }
  if (s == 0) return const_set(H, member(c0) ? Tri::Yes : Tri::No);
  long long n0 = 1;
  while (target(n0) < d * mono.d1_conductor && n0 < kHorizonCap) ++n0;
  long long HH = std::min(std::max(H, n0), kHorizonCap);
  NSet out;
  out.H = HH;
  out.at.assign((size_t)HH + 1, Tri::Unknown);
  for (long long n = 1; n <= HH; ++n) out.at[(size_t)n] = member(target(n)) ? Tri::Yes : Tri::No;
  if (n0 >= kHorizonCap) {
    out.tail = NSet::Tail::Unknown;
    return out;
  }
  long long smod = ((s % d) + d) % d;
  long long pr = (smod == 0) ? 1 : d / std::gcd(smod, d);
  out.tail = NSet::Tail::Periodic;
  out.period = pr;
  out.mask.resize((size_t)pr);
  for (long long i = 0; i < pr; ++i)
    out.mask[(size_t)i] = (target(HH + 1 + i) % d == 0 && target(HH + 1 + i) >= 0)
                              ? Tri::Yes
                              : Tri::No;
  return out;
}

NSet combine(const NSet& A, const NSet& B, bool is_union) {
  auto comb = [&](Tri a, Tri b) { return is_union ? tri_not(tri_and(tri_not(a), tri_not(b))) : tri_and(a, b); };
  NSet out;
  out.H = std::max(A.H, B.H);
  out.at.assign((size_t)out.H + 1, Tri::Unknown);
  for (long long n = 1; n <= out.H; ++n) out.at[(size_t)n] = comb(A.get(n), B.get(n));
  NSet::Tail dom = is_union ? NSet::Tail::AllYes : NSet::Tail::AllNo;
  if (A.tail == dom || B.tail == dom) {
    out.tail = dom;
    return out;
  }
  auto period_of = [&](const NSet& S) -> long long {
    switch (S.tail) {
      case NSet::Tail::Periodic: return S.period;
      case NSet::Tail::AllYes:
      case NSet::Tail::AllNo: return 1;
      default: return 0;
    }
  };
  long long pa = period_of(A), pb = period_of(B);
  if (pa == 0 && pb == 0) {
    out.tail = NSet::Tail::Unknown;
    return out;
  }
  long long p = (pa == 0 || pb == 0) ? std::max(pa, pb) : std::lcm(pa, pb);
  if (p == 0 || p > 4096) {
    out.tail = NSet::Tail::Unknown;
    return out;
  }
  out.tail = NSet::Tail::Periodic;
  out.period = p;
  out.mask.resize((size_t)p);
  bool all_yes = true, all_no = true;
  for (long long i = 0; i < p; ++i) {
    Tri t = comb(A.get(out.H + 1 + i), B.get(out.H + 1 + i));
    out.mask[(size_t)i] = t;
    all_yes = all_yes && t == Tri::Yes;
    all_no = all_no && t == Tri::No;
  }
  if (all_yes) out.tail = NSet::Tail::AllYes;
  if (all_no) out.tail = NSet::Tail::AllNo;
  return out;
}

}  // namespace

NSet nset_intersect(const NSet& A, const NSet& B) { return combine(A, B, false); }
NSet nset_union(const NSet& A, const NSet& B) { return combine(A, B, true); }

NSet nset_membership(const Instance& V, const VecZ& g, const Budget& bud) {
  const long long H = bud.n_max;
  if (V.kind != BackendKind::Vector) fail(Err::Internal, "nset_membership expects Vector");
  if (V.mono.dim1) return dim1_affine(V, 0, {0, 1}, g[0], {1, 0}, H);
  if (V.mono.std_unit_gens) {
    bool nonneg = true;
    for (long long c : g) nonneg = nonneg && c >= 0;
    return const_set(H, nonneg ? Tri::Yes : Tri::No);
  }
  long long no_from = 0;
  for (const auto& phi : V.mono.nonneg_functionals) {
    long long s = vec_dot(phi, g);
    if (s < 0) no_from = 1;
  }
  NSet out;
  out.H = H;
  out.at.assign((size_t)H + 1, Tri::Unknown);
  for (long long n = 1; n <= H; ++n) {
    if (no_from > 0) {
      out.at[(size_t)n] = Tri::No;
      continue;
    }
    out.at[(size_t)n] = V.mono.contains(vec_scale(n, g), bud).value;
  }
  out.tail = (no_from > 0) ? NSet::Tail::AllNo : NSet::Tail::Unknown;
  return out;
}

NSet nset_pairs(const NSet& S) {
  NSet out;
  out.H = S.H;
  out.at.assign((size_t)out.H + 1, Tri::Unknown);
  for (long long n = 1; n <= out.H; ++n) out.at[(size_t)n] = tri_and(S.get(n), S.get(n + 1));
  switch (S.tail) {
    case NSet::Tail::AllYes: out.tail = NSet::Tail::AllYes; break;
    case NSet::Tail::AllNo: out.tail = NSet::Tail::AllNo; break;
    case NSet::Tail::Unknown: out.tail = NSet::Tail::Unknown; break;
    case NSet::Tail::Periodic: {
      out.tail = NSet::Tail::Periodic;
      out.period = S.period;
      out.mask.resize((size_t)S.period);
      for (long long i = 0; i < S.period; ++i)
        out.mask[(size_t)i] = tri_and(S.get(out.H + 1 + i), S.get(out.H + 2 + i));
      break;
    }
  }
  return out;
}

ExistsN nset_exists(const NSet& S) {
  long long first_unknown = 0;
  for (long long n = 1; n <= S.H; ++n) {
    Tri t = S.at[(size_t)n];
    if (t == Tri::Yes) return {Tri::Yes, n};
    if (t == Tri::Unknown && first_unknown == 0) first_unknown = n;
  }
  switch (S.tail) {
    case NSet::Tail::AllYes: return {Tri::Yes, S.H + 1};
    case NSet::Tail::Periodic:
      for (long long i = 0; i < S.period; ++i) {
        if (S.mask[(size_t)i] == Tri::Yes) return {Tri::Yes, S.H + 1 + i};
        if (S.mask[(size_t)i] == Tri::Unknown && first_unknown == 0)
          first_unknown = S.H + 1 + i;
      }
      break;
    case NSet::Tail::Unknown:
      if (first_unknown == 0) first_unknown = S.H + 1;
      break;
    case NSet::Tail::AllNo: break;
  }
  if (first_unknown != 0) return {Tri::Unknown, first_unknown};
  return {Tri::No, 0};
}

NSet nset_affine(const Instance& M, const Elem& u, AffineSide su, const Elem& v, AffineSide sv,
                 const Budget& bud) {
  const long long H = bud.n_max;
  switch (M.kind) {
    case BackendKind::Finite: return finite_affine(M, u, su, v, sv, H, false);
    case BackendKind::QPlus: {
      Rat s = Rat(sv.kn) * v.rat() - Rat(su.kn) * u.rat();
      Rat c = Rat(sv.k1) * v.rat() - Rat(su.k1) * u.rat();
      return linear_rat(H, s, c, false);
    }
    case BackendKind::CuZ: {
      const CuzVal& xv = u.cuz();
      const CuzVal& yv = v.cuz();
      // side multipliers stay >= 1 for n >= 1, so kinds are n-independent
      if (side_mul(su, 1) == 0 || xv.is_zero()) return const_set(H, Tri::Yes);
      if (side_mul(sv, 1) == 0 || yv.is_zero()) return const_set(H, Tri::No);
      if (xv.soft && xv.inf)
        return const_set(H, (yv.soft && yv.inf) ? Tri::Yes : Tri::No);
      if (yv.soft && yv.inf) return const_set(H, Tri::Yes);
      bool strict = (!xv.soft && yv.soft);  // compact <= soft needs <
      Rat xr = xv.value(), yr = yv.value();
      Rat s = Rat(sv.kn) * yr - Rat(su.kn) * xr;
      Rat c = Rat(sv.k1) * yr - Rat(su.k1) * xr;
      return linear_rat(H, s, c, strict);
    }
    case BackendKind::Vector: {
      if (M.mode == OrderMode::Linear) {
        Quad xv = M.value_of(u.vec()), yv = M.value_of(v.vec());
        Quad s = yv.scaled(Rat(sv.kn)) - xv.scaled(Rat(su.kn));
        Quad c = yv.scaled(Rat(sv.k1)) - xv.scaled(Rat(su.k1));
        return linear_quad(H, s, c, false);
      }
      if (M.mode == OrderMode::Coordinatewise) {
        NSet acc = const_set(H, Tri::Yes);
        for (int j = 0; j < M.dim; ++j) {
          Rat s = Rat((long long)sv.kn * v.vec()[j] - (long long)su.kn * u.vec()[j]);
          Rat c = Rat((long long)sv.k1 * v.vec()[j] - (long long)su.k1 * u.vec()[j]);
          acc = nset_intersect(acc, linear_rat(H, s, c, false));
        }
        return acc;
      }
      if (M.mono.dim1) return dim1_affine(M, u.vec()[0], su, v.vec()[0], sv, H);
      if (M.mono.std_unit_gens) {
        // free on the unit vectors: algebraic order is coordinatewise
        NSet acc = const_set(H, Tri::Yes);
        for (int j = 0; j < M.dim; ++j) {
          Rat s = Rat((long long)sv.kn * v.vec()[j] - (long long)su.kn * u.vec()[j]);
          Rat c = Rat((long long)sv.k1 * v.vec()[j] - (long long)su.k1 * u.vec()[j]);
          acc = nset_intersect(acc, linear_rat(H, s, c, false));
        }
        return acc;
      }
      // general algebraic: per-n membership plus functional tail certificates
      long long HH = H;
      long long no_from = 0;
      for (const auto& phi : M.mono.nonneg_functionals) {
        long long pu = vec_dot(phi, u.vec()), pv = vec_dot(phi, v.vec());
        long long s = (long long)sv.kn * pv - (long long)su.kn * pu;
        long long c = (long long)sv.k1 * pv - (long long)su.k1 * pu;
        if (s < 0) {
          long long flip = 1;
          while (s * flip + c >= 0 && flip < kHorizonCap) ++flip;
          no_from = (no_from == 0) ? flip : std::min(no_from, flip);
        } else if (s == 0 && c < 0) {
          no_from = 1;
        }
      }
      if (no_from > 0) HH = std::min(std::max(H, no_from), kHorizonCap);
      NSet out;
      out.H = HH;
      out.at.assign((size_t)HH + 1, Tri::Unknown);
      for (long long n = 1; n <= HH; ++n) {
        if (no_from > 0 && n >= no_from) {
          out.at[(size_t)n] = Tri::No;
          continue;
        }
        VecZ target =
            vec_sub(vec_scale(side_mul(sv, n), v.vec()), vec_scale(side_mul(su, n), u.vec()));
        out.at[(size_t)n] = M.mono.contains(target, bud).value;
      }
      out.tail = (no_from > 0) ? NSet::Tail::AllNo : NSet::Tail::Unknown;
      return out;
    }
    case BackendKind::DirectSum: {
      NSet L = nset_affine(*M.left, u.as_pair().first, su, v.as_pair().first, sv, bud);
      NSet R = nset_affine(*M.right, u.as_pair().second, su, v.as_pair().second, sv, bud);
      return nset_intersect(L, R);
    }
    case BackendKind::PrincipalIdeal: return nset_affine(*M.parent, u, su, v, sv, bud);
    case BackendKind::Quotient:
    case BackendKind::AuCone:
    case BackendKind::MTensorOne: {
      NSet out = NSet::make(H, NSet::Tail::Unknown);
      for (long long n = 1; n <= H; ++n)
        out.at[(size_t)n] =
            leq(M, mul(M, side_mul(su, n), u), mul(M, side_mul(sv, n), v), bud).value;
      return out;
    }
  }
  fail(Err::Internal, "unreachable");
}

NSet nset_affine_eq(const Instance& M, const Elem& u, AffineSide su, const Elem& v,
                    AffineSide sv, const Budget& bud) {
  const long long H = bud.n_max;
  if (M.kind == BackendKind::Finite) return finite_affine(M, u, su, v, sv, H, true);
  if (M.kind == BackendKind::DirectSum) {
    NSet L = nset_affine_eq(*M.left, u.as_pair().first, su, v.as_pair().first, sv, bud);
    NSet R = nset_affine_eq(*M.right, u.as_pair().second, su, v.as_pair().second, sv, bud);
    return nset_intersect(L, R);
  }
  // cancellative value backends: both inequalities
  NSet a = nset_affine(M, u, su, v, sv, bud);
  NSet b = nset_affine(M, v, sv, u, su, bud);
  return nset_intersect(a, b);
}

}  // namespace orderlab
