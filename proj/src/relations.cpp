#include "relations.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

namespace orderlab {

namespace {

struct PropName {
  PropertyId id;
  const char* name;
};
const PropName kProps[] = {
    {PropertyId::Finiteness, "finiteness"},
    {PropertyId::StrongFiniteness, "strong-finiteness"},
    {PropertyId::Preminimal, "preminimal"},
    {PropertyId::Separative, "separative"},
    {PropertyId::OrderSeparative, "order-separative"},
    {PropertyId::NearlySeparative, "nearly-separative"},
    {PropertyId::Cancellative, "cancellative"},
    {PropertyId::OrderCancellative, "order-cancellative"},
    {PropertyId::CancellationIntoIdeals, "cancellation-into-ideals"},
    {PropertyId::OrderCancellationIntoIdeals, "order-cancellation-into-ideals"},
    {PropertyId::StrongOrderCancellationIntoIdeals, "strong-order-cancellation-into-ideals"},
    {PropertyId::Refinement, "refinement"},
    {PropertyId::AlmostDivisible, "almost-divisible"},
    {PropertyId::WeaklyDivisible, "weakly-divisible"},
    {PropertyId::AlmostUnperforated, "almost-unperforated"},
    {PropertyId::NearlyUnperforated, "nearly-unperforated"},
    {PropertyId::AlgebraicallyOrdered, "algebraically-ordered"},
    {PropertyId::Simple, "simple"},
};

}  // namespace

const char* property_str(PropertyId p) {
  for (const auto& e : kProps)
    if (e.id == p) return e.name;
  return "?";
}

std::optional<PropertyId> property_from_str(const std::string& s) {
  for (const auto& e : kProps)
    if (s == e.name) return e.id;
  return std::nullopt;
}

const std::vector<PropertyId>& all_properties() {
  static const std::vector<PropertyId> v = [] {
    std::vector<PropertyId> r;
    for (const auto& e : kProps) r.push_back(e.id);
    return r;
  }();
  return v;
}

// ================================================================ relations

Verdict rel_s(const Instance& M, const Elem& x, const Elem& y, const Budget& b) {
  require_element(M, x);
  require_element(M, y);
  NSet S = nset_shape(M, x, y, 1, 0, b);
  ExistsN e = nset_exists(S);
  if (e.value == Tri::Yes) return Verdict::yes(Json{{"n", e.n}});
  if (e.value == Tri::No) return Verdict::no(Json{{"kind", "all-multipliers-excluded"}});
  return Verdict::unknown(
      Json{{"kind", "n-exhausted"}, {"first_undecided_n", e.n}, {"n_max", b.n_max}});
}

Verdict rel_p(const Instance& M, const Elem& x, const Elem& y, const Budget& b) {
  require_element(M, x);
  require_element(M, y);
  NSet L = nset_shape(M, x, y, 0, 0, b);
  ExistsN e = nset_exists(nset_pairs(L));
  if (e.value == Tri::Yes) return Verdict::yes(Json{{"n", e.n}});
  if (e.value == Tri::No) return Verdict::no(Json{{"kind", "all-multipliers-excluded"}});
  return Verdict::unknown(
      Json{{"kind", "n-exhausted"}, {"first_undecided_n", e.n}, {"n_max", b.n_max}});
}

Verdict rel_s_or_leq(const Instance& M, const Elem& x, const Elem& y, const Budget& b) {
  Verdict le = leq(M, x, y, b);
  if (le.is_yes()) return Verdict::yes(Json{{"kind", "leq"}, {"inner", le.cert}});
  Verdict s = rel_s(M, x, y, b);
  if (s.is_yes()) return s;
  if (le.is_no() && s.is_no()) return Verdict::no(Json{{"kind", "neither-leq-nor-strict"}});
  return Verdict::unknown(Json{{"kind", "undecided"}});
}

Decomps decompositions(const Instance& M, const Elem& x, const Budget& b) {
  Decomps d;
  auto push = [&](Elem z, Elem w) {
    for (const auto& p : d.parts)
      if (elem_eq_syntactic(p.first, z) && elem_eq_syntactic(p.second, w)) return;
    d.parts.push_back({std::move(z), std::move(w)});
  };
  switch (M.kind) {
    case BackendKind::Finite: {
      for (int z = 0; z < (int)M.names.size(); ++z)
        for (int w = 0; w < (int)M.names.size(); ++w)
          if (M.table[z][w] == x.index()) push(Elem(z), Elem(w));
      d.complete = true;
      return d;
    }
    case BackendKind::Vector: {
      int box = b.coeff_bound;
      bool complete = false;
      if (M.mono.positive_functional) {
        const VecZ& phi = *M.mono.positive_functional;
        long long total = vec_dot(phi, x.vec());
        long long mn = 0;
        for (const auto& g : M.mono.gens) {
          long long v = vec_dot(phi, g);
          mn = mn == 0 ? v : std::min(mn, v);
        }
        if (mn > 0 && total / mn <= 64) {
          box = (int)(total / mn);
          complete = true;
        }
      }
      for (auto& z : M.mono.enumerate(box, 4096)) {
        VecZ w = vec_sub(x.vec(), z);
        Verdict r = M.mono.contains(w, b);
        if (r.is_yes()) push(Elem(z), Elem(std::move(w)));
        if (!r.decided()) complete = false;
      }
      d.complete = complete;
      return d;
    }
    case BackendKind::QPlus: {
      push(Elem(Rat(0)), x);
      for (int k = 1; k <= 4; ++k) {
        Rat z = x.rat() * Rat(k, 4);
        push(Elem(z), Elem(x.rat() - z));
      }
      d.complete = (x.rat().sign() == 0);
      return d;
    }
    case BackendKind::CuZ: {
      const CuzVal& v = x.cuz();
      if (!v.soft) {
        // a compact sum has compact summands
        for (long long k = 0; k <= v.n; ++k)
          push(Elem(CuzVal::compact(k)), Elem(CuzVal::compact(v.n - k)));
        d.complete = true;
        return d;
      }
      push(Elem(CuzVal::zero()), x);
      if (!v.inf) {
        for (int k = 1; k < 4; ++k) {
          Rat z = v.r * Rat(k, 4);
          push(Elem(CuzVal::soft_of(z)), Elem(CuzVal::soft_of(v.r - z)));
        }
        for (long long k = 1; Rat(k) < v.r; ++k)
          push(Elem(CuzVal::compact(k)), Elem(CuzVal::soft_of(v.r - Rat(k))));
      } else {
        push(x, x);
        push(Elem(CuzVal::compact(1)), x);
      }
      d.complete = false;
      return d;
    }
    case BackendKind::DirectSum: {
      Decomps L = decompositions(*M.left, x.as_pair().first, b);
      Decomps R = decompositions(*M.right, x.as_pair().second, b);
      for (const auto& [lz, lw] : L.parts)
        for (const auto& [rz, rw] : R.parts)
          push(Elem::pair(lz, rz), Elem::pair(lw, rw));
      d.complete = L.complete && R.complete;
      return d;
    }
    default: {
      push(zero(M), x);
      push(x, zero(M));
      d.complete = false;
      return d;
    }
  }
}

Verdict rel_d(const Instance& M, const Elem& x, const Elem& y, const Budget& b) {
  require_element(M, x);
  require_element(M, y);
  // trivial route: x <= y with the zero tail (0 <_s 0 always, n=1)
  Verdict le = leq(M, x, y, b);
  if (le.is_yes()) {
    Json c;
    c["x1"] = elem_json(M, x);
    c["x2"] = elem_json(M, zero(M));
    c["y1"] = elem_json(M, y);
    c["y2"] = elem_json(M, zero(M));
    c["rel_s_n"] = 1;
    return Verdict::yes(std::move(c));
  }
  Decomps dx = decompositions(M, x, b);
  Decomps dy = decompositions(M, y, b);
  bool all_decided = le.decided() && dx.complete && dy.complete;
  for (const auto& [x1, x2] : dx.parts)
    for (const auto& [y1, y2] : dy.parts) {
      Verdict l = leq(M, x1, y1, b);
      if (l.is_yes()) {
        Verdict s = rel_s(M, x2, y2, b);
        if (s.is_yes()) {
          Json c;
          c["x1"] = elem_json(M, x1);
          c["x2"] = elem_json(M, x2);
          c["y1"] = elem_json(M, y1);
          c["y2"] = elem_json(M, y2);
          c["rel_s_n"] = s.cert["n"];
          return Verdict::yes(std::move(c));
        }
        if (!s.decided()) all_decided = false;
      } else if (!l.decided()) {
        all_decided = false;
      }
    }
  if (all_decided)
    return Verdict::no(Json{{"kind", "decomposition-space-exhausted"},
                            {"x_parts", dx.parts.size()},
                            {"y_parts", dy.parts.size()}});
  return Verdict::unknown(Json{{"kind", "decomposition-search-exhausted"}});
}

// ======================================================= property evaluation

namespace {

struct Ctx {
  const Instance& M;
  const Budget& b;
  std::vector<Elem> E;
  bool complete = false;

  Json js(const Elem& e) const { return elem_json(M, e); }
  Elem plus(const Elem& a, const Elem& c) const { return add(M, a, c); }
  Tri le(const Elem& a, const Elem& c) const { return leq(M, a, c, b).value; }
  Tri equal(const Elem& a, const Elem& c) const { return eq(M, a, c, b); }
  bool is_zero_elem(const Elem& a) const { return equal(a, zero(M)) == Tri::Yes; }
};

bool backend_samples_complete(const Instance& M) {
  switch (M.kind) {
    case BackendKind::Finite: return true;
    case BackendKind::DirectSum:
      return backend_samples_complete(*M.left) && backend_samples_complete(*M.right) &&
             samples_box(*M.left, 1, 400).size() * samples_box(*M.right, 1, 400).size() <= 360;
    case BackendKind::PrincipalIdeal: return backend_samples_complete(*M.parent);
    default: return false;
  }
}

struct Scan {
  std::optional<Json> counterexample;
  bool any_unknown = false;
  void unknown() { any_unknown = true; }
};

Verdict finish(const Ctx& c, const Scan& s, const char* formula) {
  if (s.counterexample) {
    Json cert = *s.counterexample;
    cert["formula"] = formula;
    return Verdict::no(std::move(cert));
  }
  if (!s.any_unknown && c.complete)
    return Verdict::yes(
        Json{{"method", "exhaustive"}, {"domain", c.E.size()}, {"formula", formula}});
  return Verdict::unknown(
      Json{{"kind", "sampled-no-violation"}, {"formula", formula}, {"samples", c.E.size()}});
}

Verdict ev_finiteness(const Ctx& c) {
  const char* formula = "x+y=x implies y=0";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E) {
      Tri sum_eq = c.equal(c.plus(x, y), x);
      if (sum_eq == Tri::Unknown) s.unknown();
      if (sum_eq != Tri::Yes) continue;
      Tri z = c.equal(y, zero(c.M));
      if (z == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}};
        return finish(c, s, formula);
      }
      if (z == Tri::Unknown) s.unknown();
    }
  return finish(c, s, formula);
}

Verdict ev_preminimal(const Ctx& c) {
  const char* formula = "x+v<=y+v and v<=w imply x+w<=y+w";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E)
      for (const auto& v : c.E) {
        Tri prem = c.le(c.plus(x, v), c.plus(y, v));
        if (prem == Tri::Unknown) s.unknown();
        if (prem != Tri::Yes) continue;
        for (const auto& w : c.E) {
          Tri vw = c.le(v, w);
          if (vw == Tri::Unknown) s.unknown();
          if (vw != Tri::Yes) continue;
          Tri con = c.le(c.plus(x, w), c.plus(y, w));
          if (con == Tri::No) {
            s.counterexample =
                Json{{"x", c.js(x)}, {"y", c.js(y)}, {"v", c.js(v)}, {"w", c.js(w)}};
            return finish(c, s, formula);
          }
          if (con == Tri::Unknown) s.unknown();
        }
      }
  return finish(c, s, formula);
}

Verdict ev_separative(const Ctx& c) {
  const char* formula = "2x=x+y=2y implies x=y";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E) {
      Elem xy = c.plus(x, y);
      Tri h = tri_and(c.equal(c.plus(x, x), xy), c.equal(xy, c.plus(y, y)));
      if (h == Tri::Unknown) s.unknown();
      if (h != Tri::Yes) continue;
      Tri e = c.equal(x, y);
      if (e == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}};
        return finish(c, s, formula);
      }
      if (e == Tri::Unknown) s.unknown();
    }
  return finish(c, s, formula);
}

Verdict ev_halforder_separative(const Ctx& c) {
  const char* formula = "x+y<=2y implies x<=y";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E) {
      Tri h = c.le(c.plus(x, y), c.plus(y, y));
      if (h == Tri::Unknown) s.unknown();
      if (h != Tri::Yes) continue;
      Tri e = c.le(x, y);
      if (e == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}};
        return finish(c, s, formula);
      }
      if (e == Tri::Unknown) s.unknown();
    }
  return finish(c, s, formula);
}

Verdict ev_nearly_separative_core(const Ctx& c) {
  const char* formula = "2x<=x+y<=2y implies x<=y";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E) {
      Elem xy = c.plus(x, y);
      Tri h = tri_and(c.le(c.plus(x, x), xy), c.le(xy, c.plus(y, y)));
      if (h == Tri::Unknown) s.unknown();
      if (h != Tri::Yes) continue;
      Tri e = c.le(x, y);
      if (e == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}};
        return finish(c, s, formula);
      }
      if (e == Tri::Unknown) s.unknown();
    }
  return finish(c, s, formula);
}

Verdict ev_cancellative(const Ctx& c, bool order) {
  const char* formula = order ? "x+z<=y+z implies x<=y" : "x+z=y+z implies x=y";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E)
      for (const auto& z : c.E) {
        Elem xz = c.plus(x, z), yz = c.plus(y, z);
        Tri h = order ? c.le(xz, yz) : c.equal(xz, yz);
        if (h == Tri::Unknown) s.unknown();
        if (h != Tri::Yes) continue;
        Tri e = order ? c.le(x, y) : c.equal(x, y);
        if (e == Tri::No) {
          s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}, {"z", c.js(z)}};
          return finish(c, s, formula);
        }
        if (e == Tri::Unknown) s.unknown();
      }
  return finish(c, s, formula);
}

/// is there v in I(g) with x+v <= y+v (order) or x+v = y+v? Exact for CuZ
/// and for complete sample sets; Unknown otherwise.
Tri ideal_witness(const Ctx& c, const Elem& g, const Elem& x, const Elem& y, bool order,
                  Json* witness) {
  const Instance& M = c.M;
  if (M.kind == BackendKind::CuZ) {
    const CuzVal &xv = x.cuz(), &yv = y.cuz(), &gv = g.cuz();
    auto found = [&](const CuzVal& v) {
      if (witness) *witness = v.str();
      return Tri::Yes;
    };
    bool x_inf = xv.soft && xv.inf, y_inf = yv.soft && yv.inf;
    if (order ? cuz_leq(xv, yv) : (xv == yv)) return found(CuzVal::zero());
    if (gv.soft && gv.inf) return found(CuzVal::soft_inf());
    if (gv.is_zero()) return Tri::No;
    // any finite soft v makes both sides soft, so only the values matter
    if (!x_inf && !y_inf) {
      bool ok = order ? xv.value() <= yv.value() : xv.value() == yv.value();
      if (ok) return found(CuzVal::soft_of(Rat(1)));
      return Tri::No;
    }
    if (y_inf && order) return found(CuzVal::soft_of(Rat(1)));
    return Tri::No;
  }
  auto I = Instance::principal_ideal(self(M), g);
  bool any_unknown = false;
  for (const auto& v : ideal_samples(*I, c.b)) {
    Elem xv = c.plus(x, v), yv = c.plus(y, v);
    Tri t = order ? c.le(xv, yv) : c.equal(xv, yv);
    if (t == Tri::Yes) {
      if (witness) *witness = c.js(v);
      return Tri::Yes;
    }
    if (t == Tri::Unknown) any_unknown = true;
  }
  if (c.complete && !any_unknown) return Tri::No;
  return Tri::Unknown;
}

Verdict ev_cancellation_into_ideals(const Ctx& c, bool order, bool strong) {
  const char* formula =
      strong ? "x+z<=y+z and x in I(y) imply x+v<=y+v for some v in I(x)"
             : (order ? "x+z<=y+z implies x+v<=y+v for some v in I(x+y)"
                      : "x+z=y+z implies x+v=y+v for some v in I(x+y)");
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E) {
      bool hyp_found = false;
      Elem hz = zero(c.M);
      for (const auto& z : c.E) {
        Tri h = (order || strong) ? c.le(c.plus(x, z), c.plus(y, z))
                                  : c.equal(c.plus(x, z), c.plus(y, z));
        if (h == Tri::Unknown) s.unknown();
        if (h == Tri::Yes) {
          hyp_found = true;
          hz = z;
          break;
        }
      }
      if (!hyp_found) continue;
      if (strong) {
        NSet in = nset_affine(c.M, x, {0, 1}, y, {1, 0}, c.b);  // x <= n y
        ExistsN m = nset_exists(in);
        if (m.value == Tri::Unknown) s.unknown();
        if (m.value != Tri::Yes) continue;
      }
      Elem gen = strong ? x : c.plus(x, y);
      Json w;
      Tri found = ideal_witness(c, gen, x, y, order || strong, &w);
      if (found == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}, {"z", c.js(hz)}};
        return finish(c, s, formula);
      }
      if (found == Tri::Unknown) s.unknown();
    }
  return finish(c, s, formula);
}

Verdict ev_refinement(const Ctx& c) {
  const char* formula = "x1+x2=y1+y2 admits a 2x2 refinement";
  Scan s;
  for (const auto& x1 : c.E)
    for (const auto& x2 : c.E)
      for (const auto& y1 : c.E)
        for (const auto& y2 : c.E) {
          Tri h = c.equal(c.plus(x1, x2), c.plus(y1, y2));
          if (h == Tri::Unknown) s.unknown();
          if (h != Tri::Yes) continue;
          bool found = false;
          bool search_complete = true;
          if (c.M.kind == BackendKind::Finite) {
            const int n = (int)c.M.names.size();
            for (int a = 0; a < n && !found; ++a)
              for (int bb = 0; bb < n && !found; ++bb)
                for (int cc = 0; cc < n && !found; ++cc)
                  for (int dd = 0; dd < n && !found; ++dd)
                    found = c.M.table[a][bb] == x1.index() && c.M.table[cc][dd] == x2.index() &&
                            c.M.table[a][cc] == y1.index() && c.M.table[bb][dd] == y2.index();
          } else {
            Decomps dx1 = decompositions(c.M, x1, c.b);
            search_complete = dx1.complete;
            for (const auto& [z11, z12] : dx1.parts) {
              Solve s21 = solve_add(c.M, z11, y1, c.b);
              Solve s22 = solve_add(c.M, z12, y2, c.b);
              if (s21.status == Tri::Unknown || s22.status == Tri::Unknown)
                search_complete = false;
              if (s21.status == Tri::Yes && s22.status == Tri::Yes &&
                  c.equal(c.plus(s21.z, s22.z), x2) == Tri::Yes) {
                found = true;
                break;
              }
            }
          }
          if (!found) {
            if (search_complete) {
              s.counterexample = Json{
                  {"x1", c.js(x1)}, {"x2", c.js(x2)}, {"y1", c.js(y1)}, {"y2", c.js(y2)}};
              return finish(c, s, formula);
            }
            s.unknown();
          }
        }
  return finish(c, s, formula);
}

/// candidates z with n*z <= x, flagged complete when provably exhaustive
std::pair<std::vector<Elem>, bool> bounded_below_candidates(const Instance& M, const Budget& b,
                                                            const std::vector<Elem>& fallback,
                                                            const Elem& x, long long n) {
  switch (M.kind) {
    case BackendKind::Finite: {
      std::vector<Elem> out;
      for (int i = 0; i < (int)M.names.size(); ++i) out.push_back(Elem(i));
      return {out, true};
    }
    case BackendKind::Vector: {
      std::vector<Elem> out;
      bool complete = false;
      int box = b.coeff_bound;
      if (M.mono.positive_functional) {
        const VecZ& phi = *M.mono.positive_functional;
        long long total = vec_dot(phi, x.vec()) / n;
        long long mn = 0;
        for (const auto& g : M.mono.gens) {
          long long v = vec_dot(phi, g);
          mn = mn == 0 ? v : std::min(mn, v);
        }
        if (mn > 0 && total / mn <= 64) {
          box = (int)(total / mn);
          complete = true;
        }
      }
      for (auto& z : M.mono.enumerate(box, 2048)) out.push_back(Elem(std::move(z)));
      return {out, complete};
    }
    case BackendKind::DirectSum: {
      auto L = bounded_below_candidates(*M.left, b, {}, x.as_pair().first, n);
      auto R = bounded_below_candidates(*M.right, b, {}, x.as_pair().second, n);
      std::vector<Elem> out;
      for (const auto& l : L.first)
        for (const auto& r : R.first) out.push_back(Elem::pair(l, r));
      return {out, L.second && R.second};
    }
    default: return {fallback, false};
  }
}

/// exact over every n for Finite backends via unions of multiplier sets
Verdict finite_divisibility(const Ctx& c, bool weak) {
  const char* formula = weak ? "for all x,n there are y,z with x=ny+(n+1)z"
                             : "for all x,n there is z with nz<=x<=(n+1)z";
  Scan s;
  const int sz = (int)c.M.names.size();
  for (const auto& x : c.E) {
    NSet good = NSet::make(c.b.n_max, NSet::Tail::AllNo);
    for (long long k = 1; k <= good.H; ++k) good.at[(size_t)k] = Tri::No;
    if (!weak) {
      for (int zi = 0; zi < sz; ++zi) {
        Elem z(zi);
        NSet lo = nset_affine(c.M, z, {1, 0}, x, {0, 1}, c.b);  // nz <= x
        NSet hi = nset_affine(c.M, x, {0, 1}, z, {1, 1}, c.b);  // x <= (n+1)z
        good = nset_union(good, nset_intersect(lo, hi));
      }
    } else {
      for (int yi = 0; yi < sz; ++yi)
        for (int zi = 0; zi < sz; ++zi) {
          // u_n = n*y + (n+1)*z steps by y+z; cycle closure settles all n
          int step = c.M.table[yi][zi];
          int u = c.M.table[step][zi];  // 1*y + 2*z
          std::map<int, long long> seen;
          std::vector<char> ok;
          long long n = 1;
          while (!seen.count(u)) {
            seen[u] = n;
            ok.push_back(u == x.index());
            u = c.M.table[u][step];
            ++n;
          }
          long long f = seen[u], p = n - f;
          NSet hit;
          hit.H = c.b.n_max;
          hit.at.assign((size_t)hit.H + 1, Tri::Unknown);
          auto val = [&](long long k) -> Tri {
            long long i = (k <= (long long)ok.size()) ? k : f + ((k - f) % p);
            return ok[(size_t)i - 1] ? Tri::Yes : Tri::No;
          };
          for (long long k = 1; k <= hit.H; ++k) hit.at[(size_t)k] = val(k);
          hit.tail = NSet::Tail::Periodic;
          hit.period = p;
          hit.mask.resize((size_t)p);
          for (long long i = 0; i < p; ++i) hit.mask[(size_t)i] = val(hit.H + 1 + i);
          good = nset_union(good, hit);
        }
    }
    for (long long n = 1; n <= good.H; ++n)
      if (good.get(n) == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"n", n}};
        return finish(c, s, formula);
      }
    if (good.tail == NSet::Tail::Periodic) {
      for (long long i = 0; i < good.period; ++i)
        if (good.mask[(size_t)i] == Tri::No) {
          s.counterexample = Json{{"x", c.js(x)}, {"n", good.H + 1 + i}};
          return finish(c, s, formula);
        }
      for (long long i = 0; i < good.period; ++i)
        if (good.mask[(size_t)i] == Tri::Unknown) s.unknown();
    } else if (good.tail != NSet::Tail::AllYes) {
      s.unknown();
    }
  }
  return finish(c, s, formula);
}

Verdict ev_almost_divisible(const Ctx& c) {
  if (c.M.kind == BackendKind::Finite) return finite_divisibility(c, false);
  const char* formula = "for all x,n there is z with nz<=x<=(n+1)z";
  Scan s;
  long long n_hi = std::min<long long>(c.b.sample_box, 6);
  for (const auto& x : c.E) {
    for (long long n = 1; n <= n_hi; ++n) {
      auto [cands, complete] = bounded_below_candidates(c.M, c.b, c.E, x, n);
      bool found = false, all_decided = complete;
      for (const auto& z : cands) {
        Tri lo = c.le(mul(c.M, n, z), x);
        Tri hi = c.le(x, mul(c.M, n + 1, z));
        if (lo == Tri::Yes && hi == Tri::Yes) {
          found = true;
          break;
        }
        if (lo == Tri::Unknown || hi == Tri::Unknown) all_decided = false;
      }
      if (found) continue;
      if (all_decided) {
        s.counterexample = Json{{"x", c.js(x)}, {"n", n}};
        return finish(c, s, formula);
      }
      s.unknown();
    }
    s.unknown();  // unbounded n not certified for infinite backends
  }
  return finish(c, s, formula);
}

Verdict ev_weakly_divisible(const Ctx& c) {
  if (c.M.kind == BackendKind::Finite) return finite_divisibility(c, true);
  const char* formula = "for all x,n there are y,z with x=ny+(n+1)z";
  Scan s;
  long long n_hi = std::min<long long>(c.b.sample_box, 6);
  for (const auto& x : c.E) {
    for (long long n = 1; n <= n_hi; ++n) {
      auto [ys, cy] = bounded_below_candidates(c.M, c.b, c.E, x, n);
      bool found = false, all_decided = cy;
      for (const auto& y : ys) {
        Solve rest = solve_add(c.M, mul(c.M, n, y), x, c.b);
        if (rest.status == Tri::Unknown) {
          all_decided = false;
          continue;
        }
        if (rest.status == Tri::No) continue;
        auto [zs, cz] = bounded_below_candidates(c.M, c.b, c.E, rest.z, n + 1);
        all_decided = all_decided && cz;
        for (const auto& z : zs)
          if (c.equal(mul(c.M, n + 1, z), rest.z) == Tri::Yes) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (found) continue;
      if (all_decided) {
        s.counterexample = Json{{"x", c.js(x)}, {"n", n}};
        return finish(c, s, formula);
      }
      s.unknown();
    }
    s.unknown();
  }
  return finish(c, s, formula);
}

Verdict ev_unperforated(const Ctx& c, bool nearly) {
  const char* formula = nearly ? "x<=_p y implies x<=y" : "x<_s y implies x<=y";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E) {
      Verdict r = nearly ? rel_p(c.M, x, y, c.b) : rel_s(c.M, x, y, c.b);
      if (r.value == Tri::Unknown) s.unknown();
      if (!r.is_yes()) continue;
      Tri e = c.le(x, y);
      if (e == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}, {"n", r.cert.value("n", 0)}};
        return finish(c, s, formula);
      }
      if (e == Tri::Unknown) s.unknown();
    }
  return finish(c, s, formula);
}

Verdict ev_algebraically_ordered(const Ctx& c) {
  const char* formula = "x<=y implies y=x+z for some z";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E) {
      Tri h = c.le(x, y);
      if (h == Tri::Unknown) s.unknown();
      if (h != Tri::Yes) continue;
      Solve z = solve_add(c.M, x, y, c.b);
      if (z.status == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}};
        return finish(c, s, formula);
      }
      if (z.status == Tri::Unknown) s.unknown();
    }
  return finish(c, s, formula);
}

Verdict ev_simple(const Ctx& c) {
  const char* formula = "every nonzero element is an order unit";
  Scan s;
  for (const auto& x : c.E) {
    if (c.is_zero_elem(x)) continue;
    for (const auto& y : c.E) {
      NSet S = nset_affine(c.M, y, {0, 1}, x, {1, 0}, c.b);  // y <= n x
      ExistsN e = nset_exists(S);
      if (e.value == Tri::No) {
        s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}};
        return finish(c, s, formula);
      }
      if (e.value == Tri::Unknown) s.unknown();
    }
  }
  return finish(c, s, formula);
}

Verdict ev_strong_finiteness(const Ctx& c) {
  const char* formula = "every quotient is finite";
  if (c.M.kind != BackendKind::Finite)
    return Verdict::unknown(Json{{"kind", "no-ideal-enumeration-for-backend"}});
  Scan s;
  const int n = (int)c.M.names.size();
  for (int bits = 1; bits < (1 << n); bits += 2) {
    auto in = [&](int i) { return (bits >> i) & 1; };
    bool ideal = true;
    for (int i = 0; i < n && ideal; ++i)
      for (int j = 0; j < n && ideal; ++j) {
        if (in(i) && in(j) && !in(c.M.table[i][j])) ideal = false;
        if (in(j) && c.M.ord[i][j] && !in(i)) ideal = false;
      }
    if (!ideal) continue;
    // finiteness of M/I: [x]+[y] <= [y] forces [x] = [0]
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        bool hyp = false;
        for (int v = 0; v < n && !hyp; ++v)
          if (in(v) && c.M.ord[c.M.table[x][y]][c.M.table[y][v]]) hyp = true;
        if (!hyp) continue;
        bool x_zero_class = false;
        for (int v = 0; v < n && !x_zero_class; ++v)
          if (in(c.M.table[x][v])) x_zero_class = true;
        if (!x_zero_class) {
          Json ideal_names = Json::array();
          for (int i = 0; i < n; ++i)
            if (in(i)) ideal_names.push_back(c.M.names[i]);
          s.counterexample =
              Json{{"ideal", ideal_names}, {"x", c.M.names[x]}, {"y", c.M.names[y]}};
          return finish(c, s, formula);
        }
      }
  }
  return finish(c, s, formula);
}

// -------------------------------------------------- analytic shortcut layer

Verdict analytic_yes(const char* tag) {
  return Verdict::yes(Json{{"method", std::string("analytic:") + tag}});
}

std::optional<Verdict> analytic_base(const Instance& M, PropertyId p) {
  const bool vec = M.kind == BackendKind::Vector;
  const bool vec_alg = vec && M.mode == OrderMode::Algebraic;
  const bool vec_lin = vec && M.mode == OrderMode::Linear;
  const bool vec_coord = vec && M.mode == OrderMode::Coordinatewise;
  const bool vec_nd = vec && M.mono.std_unit_gens && (vec_alg || vec_coord);
  const bool dim1 = vec_alg && M.mono.dim1;

  switch (p) {
    case PropertyId::Finiteness:
    case PropertyId::Cancellative:
      if (vec || M.kind == BackendKind::QPlus || M.kind == BackendKind::AuCone)
        return analytic_yes("group-embedding");
      break;
    case PropertyId::OrderCancellative:
      if (vec_alg) return analytic_yes("algebraic-difference-cancels");
      if (vec_lin || M.kind == BackendKind::QPlus) return analytic_yes("value-order-cancels");
      if (M.kind == BackendKind::AuCone) return analytic_yes("cone-order-cancels");
      break;
    case PropertyId::AlgebraicallyOrdered:
      if (vec_alg || M.kind == BackendKind::QPlus || M.kind == BackendKind::AuCone)
        return analytic_yes("order-algebraic-by-construction");
      break;
    case PropertyId::StrongFiniteness:
      if (vec_alg) return analytic_yes("cancellative-algebraic-quotients");
      if (vec_lin || M.kind == BackendKind::QPlus) return analytic_yes("simple-and-finite");
      if (M.kind == BackendKind::CuZ)
        return Verdict::no(Json{{"ideal", "finite-part"},
                                {"x", "soft:inf"},
                                {"y", "soft:inf"},
                                {"formula", "every quotient is finite"}});
      break;
    case PropertyId::AlmostDivisible:
      if (M.kind == BackendKind::QPlus) return analytic_yes("z=x/(n+1)");
      if (M.kind == BackendKind::CuZ) return analytic_yes("soft-fraction-witness");
      break;
    case PropertyId::WeaklyDivisible:
      if (M.kind == BackendKind::QPlus) return analytic_yes("y=z=x/(2n+1)");
      break;
    case PropertyId::AlmostUnperforated:
    case PropertyId::NearlyUnperforated:
      if (vec_nd) return analytic_yes("free-coordinatewise-order");
      if (vec_lin || M.kind == BackendKind::QPlus) return analytic_yes("value-order");
      if (M.kind == BackendKind::CuZ) return analytic_yes("cuz-case-rules");
      if (M.kind == BackendKind::AuCone) return analytic_yes("au-hull");
      break;
    case PropertyId::Refinement:
      if (vec_nd) return analytic_yes("coordinatewise-min");
      if (M.kind == BackendKind::QPlus) return analytic_yes("subtract-min");
      break;
    case PropertyId::Simple:
      if (dim1 || vec_lin || M.kind == BackendKind::QPlus)
        return analytic_yes("positive-values-are-order-units");
      break;
    default: break;
  }
  return std::nullopt;
}

bool analytic_base_yes(const Instance& M, PropertyId p) {
  auto v = analytic_base(M, p);
  return v && v->is_yes();
}

std::optional<Verdict> analytic(const Instance& M, PropertyId p) {
  if (auto v = analytic_base(M, p)) return v;
  switch (p) {
    case PropertyId::Separative:
      if (analytic_base_yes(M, PropertyId::Cancellative)) return analytic_yes("cancellative");
      break;
    case PropertyId::OrderSeparative:
    case PropertyId::NearlySeparative:
      if (analytic_base_yes(M, PropertyId::OrderCancellative))
        return analytic_yes("order-cancellative");
      break;
    case PropertyId::Preminimal:
      if (analytic_base_yes(M, PropertyId::OrderCancellative))
        return analytic_yes("order-cancellative");
      if (analytic_base_yes(M, PropertyId::AlgebraicallyOrdered))
        return analytic_yes("algebraically-ordered");
      break;
    case PropertyId::CancellationIntoIdeals:
      if (analytic_base_yes(M, PropertyId::Cancellative))
        return analytic_yes("cancellative-with-v=0");
      break;
    case PropertyId::OrderCancellationIntoIdeals:
    case PropertyId::StrongOrderCancellationIntoIdeals:
      if (analytic_base_yes(M, PropertyId::OrderCancellative))
        return analytic_yes("order-cancellative-with-v=0");
      break;
    default: break;
  }
  return std::nullopt;
}

}  // namespace

namespace {
Verdict check_property_impl(const Instance& M, PropertyId p, const Budget& b);
}

Verdict check_property(const Instance& M, PropertyId p, const Budget& b) {
  // property evaluation is pure in (instance, property, budget); memoized
  // under a mutex for the hot paths (the tensor-order ladder re-checks the
  // same hypotheses for every pair)
  static std::mutex mu;
  static std::map<std::tuple<unsigned long long, int, int, int, int, int>, Verdict> memo;
  auto key = std::make_tuple(M.uid, (int)p, b.sample_box, b.n_max, b.coeff_bound, b.chain_depth);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Verdict out = check_property_impl(M, p, b);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, out);
  return out;
}

namespace {
Verdict check_property_impl(const Instance& M, PropertyId p, const Budget& b) {
  if (auto v = analytic(M, p)) {
    v->budget_used = Json::object();
    return *v;
  }
  if (M.kind == BackendKind::DirectSum && p != PropertyId::Simple) {
    Verdict L = check_property(*M.left, p, b);
    if (L.is_no()) return Verdict::no(Json{{"component", "left"}, {"inner", L.cert}});
    Verdict R = check_property(*M.right, p, b);
    if (R.is_no()) return Verdict::no(Json{{"component", "right"}, {"inner", R.cert}});
    if (L.is_yes() && R.is_yes())
      return Verdict::yes(
          Json{{"method", "componentwise"}, {"left", L.cert}, {"right", R.cert}});
    return Verdict::unknown(Json{{"kind", "component-undecided"}});
  }

  Ctx c{M, b, samples(M, b), backend_samples_complete(M)};
  Verdict out;
  switch (p) {
    case PropertyId::Finiteness: out = ev_finiteness(c); break;
    case PropertyId::StrongFiniteness: out = ev_strong_finiteness(c); break;
    case PropertyId::Preminimal: out = ev_preminimal(c); break;
    case PropertyId::Separative: out = ev_separative(c); break;
    case PropertyId::OrderSeparative: {
      Verdict prem = check_property(M, PropertyId::Preminimal, b);
      if (prem.is_no()) {
        out = Verdict::no(Json{{"failed_part", "preminimal"}, {"inner", prem.cert}});
        break;
      }
      Verdict sep = ev_separative(c);
      if (sep.is_no()) {
        out = Verdict::no(Json{{"failed_part", "separative"}, {"inner", sep.cert}});
        break;
      }
      Verdict half = ev_halforder_separative(c);
      if (half.is_no()) {
        out = Verdict::no(Json{{"failed_part", "x+y<=2y"}, {"inner", half.cert}});
        break;
      }
      Tri t = tri_and(prem.value, tri_and(sep.value, half.value));
      out = t == Tri::Yes ? Verdict::yes(Json{{"method", "conjunction"}})
                          : Verdict::unknown(Json{{"kind", "conjunct-undecided"}});
      break;
    }
    case PropertyId::NearlySeparative: {
      Verdict prem = check_property(M, PropertyId::Preminimal, b);
      if (prem.is_no()) {
        out = Verdict::no(Json{{"failed_part", "preminimal"}, {"inner", prem.cert}});
        break;
      }
      Verdict core = ev_nearly_separative_core(c);
      if (core.is_no()) {
        out = Verdict::no(Json{{"failed_part", "2x<=x+y<=2y"}, {"inner", core.cert}});
        break;
      }
      Tri t = tri_and(prem.value, core.value);
      out = t == Tri::Yes ? Verdict::yes(Json{{"method", "conjunction"}})
                          : Verdict::unknown(Json{{"kind", "conjunct-undecided"}});
      break;
    }
    case PropertyId::Cancellative: out = ev_cancellative(c, false); break;
    case PropertyId::OrderCancellative: out = ev_cancellative(c, true); break;
    case PropertyId::CancellationIntoIdeals:
      out = ev_cancellation_into_ideals(c, false, false);
      break;
    case PropertyId::OrderCancellationIntoIdeals:
      out = ev_cancellation_into_ideals(c, true, false);
      break;
    case PropertyId::StrongOrderCancellationIntoIdeals:
      out = ev_cancellation_into_ideals(c, true, true);
      break;
    case PropertyId::Refinement: out = ev_refinement(c); break;
    case PropertyId::AlmostDivisible: out = ev_almost_divisible(c); break;
    case PropertyId::WeaklyDivisible: out = ev_weakly_divisible(c); break;
    case PropertyId::AlmostUnperforated: out = ev_unperforated(c, false); break;
    case PropertyId::NearlyUnperforated: out = ev_unperforated(c, true); break;
    case PropertyId::AlgebraicallyOrdered: out = ev_algebraically_ordered(c); break;
    case PropertyId::Simple: out = ev_simple(c); break;
  }
  out.budget_used = b.to_json();
  return out;
}
}  // namespace

Json property_report(const Instance& M, const Budget& b) {
  Json r;
  for (PropertyId p : all_properties()) r[property_str(p)] = check_property(M, p, b).to_json();
  return r;
}

// ========================================================= implication suite

namespace {

struct Implication {
  const char* id;
  const char* statement;
  std::vector<PropertyId> hypotheses;
  std::vector<PropertyId> conclusions;
  bool l22_formula = false;
};

const std::vector<Implication>& implications() {
  static const std::vector<Implication> v = {
      {"near-unp-implies-almost-unp",
       "nearly unperforated implies almost unperforated",
       {PropertyId::NearlyUnperforated},
       {PropertyId::AlmostUnperforated}},
      {"near-unp-implies-nearly-sep",
       "nearly unperforated implies nearly separative",
       {PropertyId::NearlyUnperforated},
       {PropertyId::NearlySeparative}},
      {"nearly-sep-implies-sep",
       "nearly separative implies separative",
       {PropertyId::NearlySeparative},
       {PropertyId::Separative}},
      {"algebraic-implies-preminimal",
       "algebraically ordered implies preminimal",
       {PropertyId::AlgebraicallyOrdered},
       {PropertyId::Preminimal}},
      {"L2.2",
       "nearly separative implies x+2z<=y+2z => x+z<=y+z",
       {PropertyId::NearlySeparative},
       {},
       true},
      {"P2.8-forward",
       "preminimal, separative, cancellation into ideals, strongly finite imply cancellative",
       {PropertyId::Preminimal, PropertyId::Separative, PropertyId::CancellationIntoIdeals,
        PropertyId::StrongFiniteness},
       {PropertyId::Cancellative}},
      {"P2.8-back",
       "preminimal cancellative implies separative, cancellation into ideals, strongly finite",
       {PropertyId::Preminimal, PropertyId::Cancellative},
       {PropertyId::Separative, PropertyId::CancellationIntoIdeals,
        PropertyId::StrongFiniteness}},
      {"P2.8-order",
       "strongly finite, nearly separative, strong order-cancellation into ideals imply "
       "order-cancellative",
       {PropertyId::StrongFiniteness, PropertyId::NearlySeparative,
        PropertyId::StrongOrderCancellationIntoIdeals},
       {PropertyId::OrderCancellative}},
      {"L3.2",
       "algebraically ordered weakly divisible implies almost divisible",
       {PropertyId::AlgebraicallyOrdered, PropertyId::WeaklyDivisible},
       {PropertyId::AlmostDivisible}},
      {"L3.2-converse",
       "algebraically ordered cancellative almost divisible implies weakly divisible",
       {PropertyId::AlgebraicallyOrdered, PropertyId::Cancellative, PropertyId::AlmostDivisible},
       {PropertyId::WeaklyDivisible}},
      {"P3.8-forward",
       "strongly finite algebraic: nearly unperforated + cancellation into ideals imply almost "
       "unperforated + cancellative",
       {PropertyId::StrongFiniteness, PropertyId::AlgebraicallyOrdered,
        PropertyId::NearlyUnperforated, PropertyId::CancellationIntoIdeals},
       {PropertyId::AlmostUnperforated, PropertyId::Cancellative}},
      {"P3.8-back",
       "strongly finite algebraic: almost unperforated + cancellative imply nearly unperforated "
       "+ cancellation into ideals",
       {PropertyId::StrongFiniteness, PropertyId::AlgebraicallyOrdered,
        PropertyId::AlmostUnperforated, PropertyId::Cancellative},
       {PropertyId::NearlyUnperforated, PropertyId::CancellationIntoIdeals}},
      {"T3.10",
       "compact level: algebraic order + strong finiteness turn near unperforation with "
       "cancellation into ideals into almost unperforation with cancellation",
       {PropertyId::AlgebraicallyOrdered, PropertyId::StrongFiniteness,
        PropertyId::NearlyUnperforated, PropertyId::CancellationIntoIdeals},
       {PropertyId::AlmostUnperforated, PropertyId::Cancellative}},
  };
  return v;
}

Verdict l22_double_translation(const Instance& M, const Budget& b) {
  Ctx c{M, b, samples(M, b), backend_samples_complete(M)};
  const char* formula = "x+2z<=y+2z implies x+z<=y+z";
  Scan s;
  for (const auto& x : c.E)
    for (const auto& y : c.E)
      for (const auto& z : c.E) {
        Elem z2 = c.plus(z, z);
        Tri h = c.le(c.plus(x, z2), c.plus(y, z2));
        if (h == Tri::Unknown) s.unknown();
        if (h != Tri::Yes) continue;
        Tri con = c.le(c.plus(x, z), c.plus(y, z));
        if (con == Tri::No) {
          s.counterexample = Json{{"x", c.js(x)}, {"y", c.js(y)}, {"z", c.js(z)}};
          return finish(c, s, formula);
        }
        if (con == Tri::Unknown) s.unknown();
      }
  return finish(c, s, formula);
}

}  // namespace

Json implication_suite(const Instance& M, const Budget& b) {
  Json out = Json::array();
  std::map<PropertyId, Verdict> cache;
  auto get = [&](PropertyId p) -> const Verdict& {
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, check_property(M, p, b)).first;
    return it->second;
  };
  for (const auto& imp : implications()) {
    Json entry;
    entry["id"] = imp.id;
    entry["statement"] = imp.statement;
    Json detail = Json::object();
    bool vacuous = false, undecided = false;
    for (PropertyId h : imp.hypotheses) {
      const Verdict& v = get(h);
      if (v.is_no()) {
        vacuous = true;
        detail["failed_hypothesis"] = property_str(h);
        break;
      }
      if (!v.decided()) {
        undecided = true;
        detail["undecided_hypothesis"] = property_str(h);
      }
    }
    if (vacuous || undecided) {
      entry["status"] = vacuous ? "vacuous" : "undecided";
      entry["detail"] = detail;
      out.push_back(entry);
      continue;
    }
    bool failv = false, con_undecided = false;
    if (imp.l22_formula) {
      Verdict con = l22_double_translation(M, b);
      if (con.is_no()) {
        failv = true;
        detail["conclusion"] = "double-translation";
        detail["certificate"] = con.cert;
      } else if (!con.decided()) {
        con_undecided = true;
      }
    }
    for (PropertyId q : imp.conclusions) {
      const Verdict& v = get(q);
      if (v.is_no()) {
        failv = true;
        detail["conclusion"] = property_str(q);
        detail["certificate"] = v.cert;
        break;
      }
      if (!v.decided()) con_undecided = true;
    }
    entry["status"] = failv ? "fail" : (con_undecided ? "undecided" : "pass");
    if (!detail.empty()) entry["detail"] = detail;
    out.push_back(entry);
  }
  return out;
}

bool implication_suite_has_failure(const Json& suite) {
  for (const auto& e : suite)
    if (e.value("status", "") == "fail") return true;
  return false;
}

}  // namespace orderlab
