#include "order.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace orderlab {

namespace {

[[noreturn]] void mismatch(const Instance& M, const char* what) {
  fail(Err::BackendMismatch,
       std::string(what) + " does not belong to backend " + backend_str(M.kind));
}

/// coordinates of the generator support (union over multiples) for a
/// principal ideal in a coordinatewise-nonnegative algebraic Vector backend
std::vector<int> outside_support(const Instance& V, const Elem& gen) {
  std::vector<int> out;
  for (int j = 0; j < V.dim; ++j)
    if (gen.vec()[j] == 0) out.push_back(j);
  return out;
}

bool gens_nonneg(const Instance& V) {
  for (const auto& g : V.mono.gens)
    for (long long c : g)
      if (c < 0) return false;
  return true;
}

}  // namespace

void require_element(const Instance& M, const Elem& e) {
  switch (M.kind) {
    case BackendKind::Finite:
      if (!e.is_index() || e.index() < 0 || e.index() >= (int)M.names.size())
        mismatch(M, "element");
      return;
    case BackendKind::Vector:
      if (!e.is_vec() || (int)e.vec().size() != M.dim) mismatch(M, "element");
      return;
    case BackendKind::CuZ:
      if (!e.is_cuz()) mismatch(M, "element");
      if (e.cuz().soft && !e.cuz().inf && e.cuz().r.sign() <= 0) mismatch(M, "soft value");
      return;
    case BackendKind::QPlus:
      if (!e.is_rat() || e.rat().sign() < 0) mismatch(M, "element");
      return;
    case BackendKind::DirectSum:
      if (!e.is_pair()) mismatch(M, "element");
      require_element(*M.left, e.as_pair().first);
      require_element(*M.right, e.as_pair().second);
      return;
    case BackendKind::PrincipalIdeal:
    case BackendKind::Quotient:
    case BackendKind::MTensorOne: require_element(*M.parent, e); return;
    case BackendKind::AuCone:
      if (!aucone_elem_ok(M, e)) mismatch(M, "element");
      return;
  }
}

Elem zero(const Instance& M) {
  switch (M.kind) {
    case BackendKind::Finite: return Elem(0);
    case BackendKind::Vector: return Elem(VecZ(M.dim, 0));
    case BackendKind::CuZ: return Elem(CuzVal::zero());
    case BackendKind::QPlus: return Elem(Rat(0));
    case BackendKind::DirectSum: return Elem::pair(zero(*M.left), zero(*M.right));
    case BackendKind::PrincipalIdeal:
    case BackendKind::Quotient:
    case BackendKind::MTensorOne: return zero(*M.parent);
    case BackendKind::AuCone: return aucone_zero(M);
  }
  fail(Err::Internal, "unreachable");
}

Elem add(const Instance& M, const Elem& x, const Elem& y) {
  require_element(M, x);
  require_element(M, y);
  switch (M.kind) {
    case BackendKind::Finite: return Elem(M.table[x.index()][y.index()]);
    case BackendKind::Vector: return Elem(vec_add(x.vec(), y.vec()));
    case BackendKind::CuZ: return Elem(cuz_add(x.cuz(), y.cuz()));
    case BackendKind::QPlus: return Elem(x.rat() + y.rat());
    case BackendKind::DirectSum:
      return Elem::pair(add(*M.left, x.as_pair().first, y.as_pair().first),
                        add(*M.right, x.as_pair().second, y.as_pair().second));
    case BackendKind::PrincipalIdeal:
    case BackendKind::Quotient:
    case BackendKind::MTensorOne: return add(*M.parent, x, y);
    case BackendKind::AuCone: return aucone_add(M, x, y);
  }
  fail(Err::Internal, "unreachable");
}

Elem mul(const Instance& M, long long n, const Elem& x) {
  if (n < 0) fail(Err::BadArgument, "negative multiple");
  switch (M.kind) {
    case BackendKind::Vector: return Elem(vec_scale(n, x.vec()));
    case BackendKind::CuZ: return Elem(cuz_scale(n, x.cuz()));
    case BackendKind::QPlus: return Elem(Rat(n) * x.rat());
    case BackendKind::AuCone: return aucone_scale(M, n, x);
    case BackendKind::DirectSum:
      return Elem::pair(mul(*M.left, n, x.as_pair().first), mul(*M.right, n, x.as_pair().second));
    case BackendKind::PrincipalIdeal:
    case BackendKind::Quotient:
    case BackendKind::MTensorOne: return mul(*M.parent, n, x);
    case BackendKind::Finite: {
      Elem acc = zero(M);
      for (long long i = 0; i < n; ++i) acc = add(M, acc, x);
      return acc;
    }
  }
  fail(Err::Internal, "unreachable");
}

Tri eq(const Instance& M, const Elem& x, const Elem& y, const Budget& b) {
  switch (M.kind) {
    case BackendKind::Finite:
    case BackendKind::Vector:
    case BackendKind::CuZ:
    case BackendKind::QPlus: return elem_eq_syntactic(x, y) ? Tri::Yes : Tri::No;
    case BackendKind::DirectSum:
      return tri_and(eq(*M.left, x.as_pair().first, y.as_pair().first, b),
                     eq(*M.right, x.as_pair().second, y.as_pair().second, b));
    case BackendKind::PrincipalIdeal: return eq(*M.parent, x, y, b);
    case BackendKind::AuCone: return elem_eq_syntactic(x, y) ? Tri::Yes : Tri::No;
    case BackendKind::MTensorOne: {
      Verdict a = unit_leq(*M.parent, x, y, b);
      Verdict c = unit_leq(*M.parent, y, x, b);
      return tri_and(a.value, c.value);
    }
    case BackendKind::Quotient: {
      // x ~ y iff x+v = y+w for ideal members v, w
      if (eq(*M.parent, x, y, b) == Tri::Yes) return Tri::Yes;
      auto iv = ideal_samples(*M.ideal, b);
      for (const auto& v : iv)
        for (const auto& w : iv)
          if (eq(*M.parent, add(*M.parent, x, v), add(*M.parent, y, w), b) == Tri::Yes)
            return Tri::Yes;
      const Instance& P = *M.parent;
      if (P.kind == BackendKind::Vector && P.mode == OrderMode::Algebraic && gens_nonneg(P)) {
        // ideal members vanish outside the generator support, so x and y
        // must agree there
        for (int j : outside_support(P, M.ideal->pgen))
          if (x.vec()[j] != y.vec()[j]) return Tri::No;
      }
      return Tri::Unknown;
    }
  }
  fail(Err::Internal, "unreachable");
}

Verdict contains_vec(const Instance& M, const VecZ& v, const Budget& b) {
  if (M.kind != BackendKind::Vector)
    fail(Err::BackendMismatch, "contains is defined for Vector backends");
  if ((int)v.size() != M.dim) mismatch(M, "vector");
  Verdict r = M.mono.contains(v, b);
  r.budget_used = Json{{"coeff_bound", b.coeff_bound}};
  return r;
}

Verdict leq(const Instance& M, const Elem& x, const Elem& y, const Budget& b) {
  require_element(M, x);
  require_element(M, y);
  switch (M.kind) {
    case BackendKind::Finite: {
      bool r = M.ord[x.index()][y.index()];
      return r ? Verdict::yes(Json{{"kind", "order-table"}})
               : Verdict::no(Json{{"kind", "order-table"}});
    }
    case BackendKind::Vector: {
      if (M.mode == OrderMode::Algebraic) {
        VecZ d = vec_sub(y.vec(), x.vec());
        Verdict r = M.mono.contains(d, b);
        if (r.is_yes()) {
          Json c;
          c["kind"] = "difference-witness";
          c["z"] = Json::array();
          for (long long cc : d) c["z"].push_back(cc);
          c["membership"] = r.cert;
          return Verdict::yes(std::move(c));
        }
        return r;
      }
      if (M.mode == OrderMode::Coordinatewise) {
        for (int j = 0; j < M.dim; ++j)
          if (x.vec()[j] > y.vec()[j])
            return Verdict::no(Json{{"kind", "coordinate"}, {"coordinate", j}});
        return Verdict::yes(Json{{"kind", "coordinatewise"}});
      }
      // Linear: exact value comparison
      Quad d = M.value_of(y.vec()) - M.value_of(x.vec());
      if (d.sign() >= 0)
        return Verdict::yes(Json{{"kind", "value-comparison"}, {"difference", d.str()}});
      return Verdict::no(Json{{"kind", "value-comparison"}, {"difference", d.str()}});
    }
    case BackendKind::CuZ: {
      bool r = cuz_leq(x.cuz(), y.cuz());
      return r ? Verdict::yes(Json{{"kind", "cuz-case-rule"}})
               : Verdict::no(Json{{"kind", "cuz-case-rule"}});
    }
    case BackendKind::QPlus: {
      return x.rat() <= y.rat() ? Verdict::yes(Json{{"kind", "rational-comparison"}})
                                : Verdict::no(Json{{"kind", "rational-comparison"}});
    }
    case BackendKind::DirectSum: {
      Verdict l = leq(*M.left, x.as_pair().first, y.as_pair().first, b);
      if (l.is_no())
        return Verdict::no(Json{{"kind", "component"}, {"side", "left"}, {"inner", l.cert}});
      Verdict r = leq(*M.right, x.as_pair().second, y.as_pair().second, b);
      if (r.is_no())
        return Verdict::no(Json{{"kind", "component"}, {"side", "right"}, {"inner", r.cert}});
      if (l.is_yes() && r.is_yes())
        return Verdict::yes(Json{{"kind", "componentwise"}, {"left", l.cert}, {"right", r.cert}});
      return Verdict::unknown(Json{{"kind", "component-undecided"}});
    }
    case BackendKind::PrincipalIdeal: return leq(*M.parent, x, y, b);
    case BackendKind::AuCone: return aucone_leq(M, x, y, b);
    case BackendKind::MTensorOne: return unit_leq(*M.parent, x, y, b);
    case BackendKind::Quotient: {
      // [x] <= [y] iff x <= y + v for some ideal member v
      const Instance& P = *M.parent;
      auto iv = ideal_samples(*M.ideal, b);
      for (const auto& v : iv) {
        Verdict r = leq(P, x, add(P, y, v), b);
        if (r.is_yes()) {
          Json c;
          c["kind"] = "quotient-witness";
          c["v"] = elem_json(P, v);
          c["inner"] = r.cert;
          return Verdict::yes(std::move(c));
        }
      }
      if (P.kind == BackendKind::Vector && P.mode == OrderMode::Algebraic && gens_nonneg(P)) {
        for (int j : outside_support(P, M.ideal->pgen))
          if (x.vec()[j] > y.vec()[j])
            return Verdict::no(Json{{"kind", "outside-ideal-support"}, {"coordinate", j}});
      }
      return Verdict::unknown(Json{{"kind", "ideal-witness-exhausted"}, {"searched", iv.size()}});
    }
  }
  fail(Err::Internal, "unreachable");
}

Solve solve_add(const Instance& M, const Elem& x, const Elem& y, const Budget& b) {
  switch (M.kind) {
    case BackendKind::Finite: {
      for (int z = 0; z < (int)M.names.size(); ++z)
        if (M.table[x.index()][z] == y.index()) return {Tri::Yes, Elem(z)};
      return {Tri::No, Elem()};
    }
    case BackendKind::Vector: {
      VecZ d = vec_sub(y.vec(), x.vec());
      Verdict r = M.mono.contains(d, b);
      if (r.is_yes()) return {Tri::Yes, Elem(std::move(d))};
      return {r.value == Tri::No ? Tri::No : Tri::Unknown, Elem()};
    }
    case BackendKind::QPlus: {
      Rat d = y.rat() - x.rat();
      if (d.sign() >= 0) return {Tri::Yes, Elem(std::move(d))};
      return {Tri::No, Elem()};
    }
    case BackendKind::CuZ: {
      const CuzVal &a = x.cuz(), &c = y.cuz();
      if (!c.soft) {
        // compact target: both summands must be compact
        if (a.soft) return {Tri::No, Elem()};
        if (a.n > c.n) return {Tri::No, Elem()};
        return {Tri::Yes, Elem(CuzVal::compact(c.n - a.n))};
      }
      if (c.inf) return {Tri::Yes, Elem(CuzVal::soft_inf())};
      if (a.soft && a.inf) return {Tri::No, Elem()};
      Rat d = c.r - a.value();
      if (d.sign() > 0) return {Tri::Yes, Elem(CuzVal::soft_of(d))};
      if (d.sign() == 0 && !a.soft && a.n == 0) return {Tri::Yes, Elem(c)};
      // soft target needs a strictly positive soft remainder, except y = 0 + y
      if (d.sign() == 0 && !a.soft)
        return {Tri::No, Elem()};  // compact a with a = value(c): c soft, no z
      return {Tri::No, Elem()};
    }
    case BackendKind::DirectSum: {
      Solve l = solve_add(*M.left, x.as_pair().first, y.as_pair().first, b);
      Solve r = solve_add(*M.right, x.as_pair().second, y.as_pair().second, b);
      Tri t = tri_and(l.status, r.status);
      if (t == Tri::Yes) return {Tri::Yes, Elem::pair(l.z, r.z)};
      return {t, Elem()};
    }
    case BackendKind::PrincipalIdeal: {
      Solve s = solve_add(*M.parent, x, y, b);
      if (s.status != Tri::Yes) return s;
      // remainder stays in the ideal (downward closed: z <= y)
      return s;
    }
    case BackendKind::Quotient: {
      if (M.parent->kind != BackendKind::Finite) {
        // search z among parent samples
        auto zs = samples_box(M, std::min(b.sample_box, 4), 128);
        for (const auto& z : zs)
          if (eq(M, add(M, x, z), y, b) == Tri::Yes) return {Tri::Yes, z};
        return {Tri::Unknown, Elem()};
      }
      return {Tri::Unknown, Elem()};
    }
    case BackendKind::AuCone: {
      Elem d = aucone_add(M, y, aucone_scale(M, -1, x));
      Verdict inc = aucone_leq(M, aucone_zero(M), d, b);
      if (inc.is_yes()) return {Tri::Yes, d};
      return {inc.value == Tri::No ? Tri::No : Tri::Unknown, Elem()};
    }
    case BackendKind::MTensorOne: {
      // z in the carrier with x + z ~ y in the tensor order
      auto zs = samples_box(*M.parent, std::min(b.sample_box, 4), 128);
      for (const auto& z : zs)
        if (eq(M, add(*M.parent, x, z), y, b) == Tri::Yes) return {Tri::Yes, z};
      return {Tri::Unknown, Elem()};
    }
  }
  fail(Err::Internal, "unreachable");
}

// ------------------------------------------------------------------ samples

std::vector<Elem> samples_box(const Instance& M, int box, size_t cap) {
  std::vector<Elem> out;
  switch (M.kind) {
    case BackendKind::Finite:
      for (int i = 0; i < (int)M.names.size(); ++i) out.push_back(Elem(i));
      break;
    case BackendKind::Vector: {
      for (auto& v : M.mono.enumerate(box, cap)) out.push_back(Elem(std::move(v)));
      break;
    }
    case BackendKind::CuZ: {
      // compacts ascending, then integer softs, then reduced fractions
      // (denominator-major), then infinity; this enumeration order is part
      // of the certificate contract for counterexample searches
      for (int k = 0; k <= box; ++k) out.push_back(Elem(CuzVal::compact(k)));
      for (int k = 1; k <= box; ++k) out.push_back(Elem(CuzVal::soft_of(Rat(k))));
      for (int q = 2; q <= std::min(4, box); ++q)
        for (int p = 1; p <= box * q; ++p) {
          if (std::gcd(p, q) != 1) continue;
          if (p > box * q) break;
          out.push_back(Elem(CuzVal::soft_of(Rat(p, q))));
        }
      out.push_back(Elem(CuzVal::soft_inf()));
      break;
    }
    case BackendKind::QPlus: {
      std::set<Rat> vals;
      for (int q = 1; q <= std::min(3, box); ++q)
        for (int p = 0; p <= box * q; ++p) vals.insert(Rat(p, q));
      for (const auto& v : vals) out.push_back(Elem(v));
      break;
    }
    case BackendKind::DirectSum: {
      auto L = samples_box(*M.left, box, cap);
      auto R = samples_box(*M.right, box, cap);
      size_t side = std::max<size_t>(1, (size_t)std::sqrt((double)cap));
      if (L.size() > side) L.resize(side);
      if (R.size() > side) R.resize(side);
      for (const auto& l : L)
        for (const auto& r : R) out.push_back(Elem::pair(l, r));
      break;
    }
    case BackendKind::PrincipalIdeal: {
      Budget b;
      b.sample_box = box;
      for (const auto& e : samples_box(*M.parent, box, cap))
        if (ideal_member(M, e, b).is_yes()) out.push_back(e);
      break;
    }
    case BackendKind::Quotient: {
      Budget b;
      b.sample_box = box;
      for (const auto& e : samples_box(*M.parent, box, cap)) {
        bool dup = false;
        for (const auto& r : out)
          if (eq(M, e, r, b) == Tri::Yes) {
            dup = true;
            break;
          }
        if (!dup) out.push_back(e);
        if (out.size() >= cap / 2) break;
      }
      break;
    }
    case BackendKind::AuCone: {
      Budget b;
      b.sample_box = box;
      out = aucone_samples(M, b);
      break;
    }
    case BackendKind::MTensorOne: out = samples_box(*M.parent, box, cap); break;
  }
  if (out.size() > cap) out.resize(cap);
  return out;
}

std::vector<Elem> samples(const Instance& M, const Budget& b) {
  return samples_box(M, b.sample_box);
}

// ------------------------------------------------------------------- ideals

Verdict ideal_member(const Instance& I, const Elem& x, const Budget& b) {
  if (I.kind != BackendKind::PrincipalIdeal)
    fail(Err::BackendMismatch, "ideal_member expects a principal ideal");
  const Instance& P = *I.parent;
  require_element(P, x);
  const Elem& g = I.pgen;

  // analytic shortcuts with exact No
  if (P.kind == BackendKind::CuZ) {
    const CuzVal& gv = g.cuz();
    const CuzVal& xv = x.cuz();
    if (gv.is_zero()) {
      return xv.is_zero() ? Verdict::yes(Json{{"kind", "zero-ideal"}})
                          : Verdict::no(Json{{"kind", "zero-ideal"}});
    }
    if (gv.soft && gv.inf) return Verdict::yes(Json{{"kind", "top-multiple"}, {"n", 1}});
    if (xv.soft && xv.inf)
      return Verdict::no(Json{{"kind", "infinite-above-finite-multiples"}});
    // finite generator value grows without bound
    Rat gval = gv.value();
    Rat xval = xv.value();
    long long n = 1;
    while (true) {
      Elem ng = mul(P, n, g);
      if (cuz_leq(xv, ng.cuz())) return Verdict::yes(Json{{"kind", "multiple"}, {"n", n}});
      ++n;
      if (Rat(n - 2) * gval > xval + 2) break;  // safely past any possible bound
    }
    return Verdict::no(Json{{"kind", "value-bound"}});
  }
  if (P.kind == BackendKind::QPlus) {
    if (g.rat().sign() == 0)
      return x.rat().sign() == 0 ? Verdict::yes(Json{{"kind", "zero-ideal"}})
                                 : Verdict::no(Json{{"kind", "zero-ideal"}});
    Rat q = x.rat() / g.rat();
    long long n = (long long)(numerator(q) / denominator(q)) + 1;
    return Verdict::yes(Json{{"kind", "multiple"}, {"n", n}});
  }
  if (P.kind == BackendKind::Vector && P.mode == OrderMode::Linear) {
    Quad gv = P.value_of(g.vec());
    if (gv.sign() == 0)
      return vec_is_zero(x.vec()) ? Verdict::yes(Json{{"kind", "zero-ideal"}})
                                  : Verdict::no(Json{{"kind", "zero-ideal"}});
    // value order: x <= n*g holds once n*val(g) >= val(x); locate the least
    // such n with a float estimate, then certify by exact comparison
    Quad xv = P.value_of(x.vec());
    double est = xv.a.convert_to<double>() + 1.41421356237309515 * xv.b.convert_to<double>();
    double gest = gv.a.convert_to<double>() + 1.41421356237309515 * gv.b.convert_to<double>();
    long long n = std::max(1LL, (long long)(est / gest) - 2);
    while ((gv.scaled(Rat(n)) - xv).sign() < 0) ++n;
    return Verdict::yes(Json{{"kind", "multiple"}, {"n", n}});
  }
  if (P.kind == BackendKind::Vector && P.mode == OrderMode::Algebraic && gens_nonneg(P)) {
    for (int j : outside_support(P, g))
      if (x.vec()[j] > 0)
        return Verdict::no(Json{{"kind", "outside-ideal-support"}, {"coordinate", j}});
  }
  if (P.kind == BackendKind::Finite) {
    // multiples of g cycle; exact decision
    std::set<int> seen;
    int cur = 0;
    long long n = 0;
    while (true) {
      cur = P.table[cur][g.index()];
      ++n;
      if (P.ord[x.index()][cur]) return Verdict::yes(Json{{"kind", "multiple"}, {"n", n}});
      if (seen.count(cur)) return Verdict::no(Json{{"kind", "multiples-cycle-exhausted"}});
      seen.insert(cur);
    }
  }
  for (long long n = 0; n <= b.n_max; ++n) {
    Verdict r = leq(P, x, mul(P, n, g), b);
    if (r.is_yes())
      return Verdict::yes(Json{{"kind", "multiple"}, {"n", n}, {"inner", r.cert}});
  }
  return Verdict::unknown(Json{{"kind", "n-exhausted"}, {"n_max", b.n_max}});
}

std::vector<Elem> ideal_samples(const Instance& I, const Budget& b) {
  std::vector<Elem> out;
  const Instance& P = *I.parent;
  // multiples of the generator first (0, g, 2g, ...), then sampled members
  for (long long k = 0; k <= std::min<long long>(b.n_max, 8); ++k) {
    Elem m = mul(P, k, I.pgen);
    bool dup = false;
    for (const auto& e : out) dup = dup || elem_eq_syntactic(e, m);
    if (!dup) out.push_back(std::move(m));
  }
  for (const auto& e : samples_box(P, std::min(b.sample_box, 5), 200)) {
    if (ideal_member(I, e, b).is_yes()) {
      bool dup = false;
      for (const auto& o : out) dup = dup || elem_eq_syntactic(o, e);
      if (!dup) out.push_back(e);
    }
    if (out.size() > 64) break;
  }
  return out;
}

}  // namespace orderlab
