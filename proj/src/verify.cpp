#include "verify.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace orderlab {

namespace {

struct TRes {
  std::string status;  // pass | fail | vacuous | undecided
  Json detail = Json::object();
};

TRes pass_res() { return {"pass"}; }
TRes fail_res(Json d) { return {"fail", std::move(d)}; }
TRes vac(const std::string& why) { return {"vacuous", Json{{"reason", why}}}; }
TRes und(const std::string& why) { return {"undecided", Json{{"reason", why}}}; }

/// hypothesis gate: every listed property must be decided Yes
std::optional<TRes> gate(const Instance& M, const Budget& b,
                         std::initializer_list<PropertyId> hyps) {
  for (PropertyId p : hyps) {
    Verdict v = check_property(M, p, b);
    if (v.is_no()) return vac(std::string("hypothesis failed: ") + property_str(p));
    if (!v.decided()) return und(std::string("hypothesis undecided: ") + property_str(p));
  }
  return std::nullopt;
}

const Json& suite_for(const Instance& M, const Budget& b) {
  static std::mutex mu;
  static std::map<std::pair<unsigned long long, int>, Json> memo;
  auto key = std::make_pair(M.uid, b.sample_box * 1000 + b.n_max);
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(key);
  if (it == memo.end()) it = memo.emplace(key, implication_suite(M, b)).first;
  return it->second;
}

TRes from_suite(const Instance& M, const Budget& b, std::initializer_list<const char*> ids) {
  const Json& suite = suite_for(M, b);
  bool any_fail = false, any_und = false, any_pass = false;
  Json details = Json::array();
  for (const auto& entry : suite) {
    std::string id = entry.value("id", "");
    bool wanted = false;
    for (const char* w : ids) wanted = wanted || id == w;
    if (!wanted) continue;
    std::string st = entry.value("status", "");
    if (st == "fail") {
      any_fail = true;
      details.push_back(entry);
    } else if (st == "undecided") {
      any_und = true;
    } else if (st == "pass") {
      any_pass = true;
    }
  }
  if (any_fail) return fail_res(Json{{"entries", details}});
  if (any_und) return und("a hypothesis or conclusion stayed undecided");
  if (any_pass) return pass_res();
  return vac("all constituent implications vacuous");
}

// ------------------------------------------------------------ the checks

TRes t_L13(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  if (auto g = gate(M, b, {PropertyId::StrongFiniteness})) return *g;
  auto E = samples_box(M, std::min(b.sample_box, 3), 27);
  for (const auto& x : E)
    for (const auto& y : E)
      for (const auto& z : E) {
        if (!leq(M, add(M, x, z), add(M, y, z), b).is_yes()) continue;
        auto Ix = Instance::principal_ideal(Mp, x);
        auto Iy = Instance::principal_ideal(Mp, y);
        for (const auto& u : E) {
          if (ideal_member(*Ix, u, b).is_yes() && ideal_member(*Iy, u, b).is_no())
            return fail_res(Json{{"x", elem_json(M, x)},
                                 {"y", elem_json(M, y)},
                                 {"z", elem_json(M, z)},
                                 {"u", elem_json(M, u)}});
        }
      }
  return pass_res();
}

TRes t_L41(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  if (auto g = gate(M, b,
                    {PropertyId::StrongFiniteness, PropertyId::AlgebraicallyOrdered,
                     PropertyId::CancellationIntoIdeals}))
    return *g;
  Verdict au = check_property(M, PropertyId::AlmostUnperforated, b);
  Verdict nu = check_property(M, PropertyId::NearlyUnperforated, b);
  if (au.is_no() && nu.is_no()) return vac("neither unperforation hypothesis holds");
  if (!au.is_yes() && !nu.is_yes()) return und("unperforation hypotheses undecided");
  bool any_unknown = false;
  for (const auto& g : gr_samples(M, b)) {
    Verdict hull = cone_member(M, ConeKind::AuGrPlus, g, b);
    if (!hull.decided()) {
      any_unknown = true;
      continue;
    }
    if (!hull.is_yes()) continue;
    Verdict base = cone_member(M, ConeKind::GrPlus, g, b);
    if (base.is_no())
      return fail_res(Json{{"g", gr_json(M, g)}, {"hull", hull.cert}});
    if (!base.decided()) any_unknown = true;
  }
  return any_unknown ? und("cone membership left undecided samples") : pass_res();
}

TRes t_P43(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  std::vector<Elem> G;
  try {
    G = gr_samples(M, b);
  } catch (const Error& e) {
    return vac(std::string("no group carrier: ") + e.what());
  }
  if (G.size() > 40) G.resize(40);
  for (ConeKind cone : {ConeKind::AuGrPlus, ConeKind::AuGrPlusPlus}) {
    std::vector<Elem> members;
    for (const auto& g : G)
      if (cone_member(M, cone, g, b).is_yes()) members.push_back(g);
    if (members.size() > 12) members.resize(12);
    // closed under addition
    for (const auto& g : members)
      for (const auto& h : members) {
        Verdict s = cone_member(M, cone, gr_add(M, g, h), b);
        if (s.is_no())
          return fail_res(Json{{"law", "closure"},
                               {"cone", cone_str(cone)},
                               {"g", gr_json(M, g)},
                               {"h", gr_json(M, h)}});
      }
    // strict
    for (const auto& g : members) {
      if (cone_member(M, cone, gr_neg(M, g), b).is_yes()) {
        if (!gr_eq(M, g, gr_zero(M)))
          return fail_res(
              Json{{"law", "strictness"}, {"cone", cone_str(cone)}, {"g", gr_json(M, g)}});
      }
    }
    // almost unperforated as a cone
    for (const auto& g : G) {
      for (long long n = 1; n <= std::min<long long>(b.n_max, 24); ++n) {
        if (cone_member(M, cone, gr_scale(M, n, g), b).is_yes() &&
            cone_member(M, cone, gr_scale(M, n + 1, g), b).is_yes()) {
          if (cone_member(M, cone, g, b).is_no())
            return fail_res(Json{{"law", "au-unperforation"},
                                 {"cone", cone_str(cone)},
                                 {"g", gr_json(M, g)},
                                 {"n", n}});
          break;
        }
      }
    }
  }
  return pass_res();
}

TRes t_P46(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  if (auto g = gate(M, b, {PropertyId::AlgebraicallyOrdered})) return *g;
  Verdict can = check_property(M, PropertyId::Cancellative, b);
  Verdict au = check_property(M, PropertyId::AlmostUnperforated, b);
  if (!can.decided() || !au.decided()) return und("hypotheses undecided");
  if (!can.is_yes() || !au.is_yes())
    return vac("embedding direction needs cancellation and almost unperforation");
  InstPtr hull;
  try {
    hull = au_semigroup(Mp, b);
  } catch (const Error& e) {
    return vac(std::string("no hull: ") + e.what());
  }
  auto E = samples_box(M, std::min(b.sample_box, 3), 32);
  bool any_unknown = false;
  for (const auto& x : E)
    for (const auto& y : E) {
      Verdict in_m = leq(M, x, y, b);
      Verdict in_au = aucone_leq(*hull, au_iota(*hull, x), au_iota(*hull, y), b);
      if (!in_m.decided() || !in_au.decided()) {
        any_unknown = true;
        continue;
      }
      if (in_m.value != in_au.value)
        return fail_res(Json{{"x", elem_json(M, x)},
                             {"y", elem_json(M, y)},
                             {"in_m", tri_str(in_m.value)},
                             {"in_hull", tri_str(in_au.value)}});
    }
  return any_unknown ? und("order in the hull left undecided samples") : pass_res();
}

TRes t_P48(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  if (auto g = gate(M, b,
                    {PropertyId::Finiteness, PropertyId::AlgebraicallyOrdered,
                     PropertyId::WeaklyDivisible}))
    return *g;
  InstPtr hull;
  try {
    hull = au_semigroup(Mp, b);
  } catch (const Error& e) {
    return vac(std::string("no hull: ") + e.what());
  }
  auto S = aucone_samples(*hull, b);
  if (S.size() > 8) S.resize(8);
  const Instance& C = *hull->parent;
  for (const auto& x : S) {
    for (long long n = 1; n <= 5; ++n) {
      bool found = false;
      std::vector<Elem> cands = S;
      if (C.kind == BackendKind::QPlus && x.is_rat())
        cands.insert(cands.begin(), Elem(x.rat() / Rat(2 * n + 1)));
      for (const auto& y : cands) {
        if (found) break;
        for (const auto& z : cands)
          if (gr_eq(C, gr_add(C, gr_scale(C, n, y), gr_scale(C, n + 1, z)), x)) {
            found = true;
            break;
          }
      }
      if (!found)
        return fail_res(Json{{"x", gr_json(C, x)}, {"n", n}});
    }
  }
  return pass_res();
}

TRes t_T49(InstPtr Mp, const Budget& b, const std::string& name) {
  GenMap f;
  InstPtr N;
  if (name == "nat") {
    N = Mp;
    f.pairs = {{Elem(VecZ{1}), Elem(VecZ{1})}};
  } else if (name == "n23") {
    N = catalog_instance("nat");
    f.pairs = {{Elem(VecZ{2}), Elem(VecZ{2})}, {Elem(VecZ{3}), Elem(VecZ{3})}};
  } else if (name == "cone33") {
    N = catalog_instance("nat");
    f.pairs = {{Elem(VecZ{1, 0}), Elem(VecZ{1})},
               {Elem(VecZ{0, 1}), Elem(VecZ{1})},
               {Elem(VecZ{3, -3}), Elem(VecZ{0})}};
  } else {
    return vac("no registered generator map for this instance");
  }
  Json rep;
  try {
    rep = universal_factorization(Mp, N, f, b);
  } catch (const Error& e) {
    return fail_res(Json{{"error", e.what()}, {"detail", e.detail}});
  }
  bool ok = rep.value("factors_through_hull", false);
  Json uc = rep.value("uniqueness_cross_check", Json::object());
  bool unique = uc.value("compared", 0) > 0 && uc.value("compared", 0) == uc.value("agree", -1);
  if (ok && unique) return {"pass", rep};
  return fail_res(rep);
}

TRes t_T413(InstPtr Mp, const Budget& b) {
  Json rep;
  try {
    rep = z_stabilized(Mp, b);
  } catch (const Error& e) {
    if (e.code == Err::HypothesisFailure) return vac(e.what());
    return vac(std::string("not applicable: ") + e.what());
  }
  if (rep.value("result_almost_unperforated", "") != "yes") return fail_res(rep);
  Json wd = rep.value("weak_divisibility_transfer", Json::object());
  if (wd.value("source_weakly_divisible", "") == "yes") {
    Json ws = wd.value("witness_search", Json::object());
    if (ws.value("checked", 0) != ws.value("pass", -1)) return fail_res(rep);
  }
  return {"pass", rep};
}

TRes t_L52(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  auto E = samples_box(M, std::min(b.sample_box, 4), 40);
  bool any_unknown = false;
  for (const auto& x : E)
    for (const auto& y : E) {
      Verdict s = rel_s_or_leq(M, x, y, b);
      if (s.is_yes()) {
        Verdict u = unit_leq(M, x, y, b);
        if (u.is_no())
          return fail_res(Json{{"direction", "leq-s-implies-unit"},
                               {"x", elem_json(M, x)},
                               {"y", elem_json(M, y)}});
        if (!u.decided()) any_unknown = true;
      }
      Verdict u = unit_leq(M, x, y, b);
      if (u.is_yes()) {
        Verdict p = rel_p(M, x, y, b);
        if (p.is_no())
          return fail_res(Json{{"direction", "unit-implies-rel-p"},
                               {"x", elem_json(M, x)},
                               {"y", elem_json(M, y)}});
        if (!p.decided()) any_unknown = true;
      }
    }
  return any_unknown ? und("some rungs stayed undecided") : pass_res();
}

TRes t_T53(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  Json emb = embedding_report(M, b);
  Verdict nu = check_property(M, PropertyId::NearlyUnperforated, b);
  Verdict au = check_property(M, PropertyId::AlmostUnperforated, b);
  // (i) => (ii): near unperforation forces the embedding
  if (nu.is_yes() && !emb["violations"].empty())
    return fail_res(Json{{"direction", "nu-implies-embedding"}, {"violations", emb["violations"]}});
  // soundness: x <= y always gives x(.)1 <= y(.)1
  for (const auto& v : emb["violations"])
    if (v.value("in_m", "") == "yes" && v.value("in_tensor", "") == "no")
      return fail_res(Json{{"direction", "unit-map-monotone"}, {"violation", v}});
  // (ii) => (iii) contrapositive on the recorded counterexample
  if (au.is_no()) {
    const Json& cert = au.cert;
    if (cert.contains("x") && cert.contains("y")) {
      Elem x = parse_elem(M, cert["x"]);
      Elem y = parse_elem(M, cert["y"]);
      Verdict u = unit_leq(M, x, y, b);
      Verdict le = leq(M, x, y, b);
      if (u.is_no() || le.is_yes())
        return fail_res(
            Json{{"direction", "au-counterexample-breaks-embedding"}, {"witness", cert}});
    }
  }
  return pass_res();
}

TRes t_L55(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  auto E = samples_box(M, std::min(b.sample_box, 3), 20);
  Verdict alg = check_property(M, PropertyId::AlgebraicallyOrdered, b);
  Verdict can = check_property(M, PropertyId::Cancellative, b);
  Verdict refi = check_property(M, PropertyId::Refinement, b);
  Verdict simp = check_property(M, PropertyId::Simple, b);
  bool any_unknown = false;
  for (const auto& x : E)
    for (const auto& y : E) {
      Verdict s = rel_s_or_leq(M, x, y, b);
      Verdict d = rel_d(M, x, y, b);
      Verdict p = rel_p(M, x, y, b);
      if (s.is_yes() && d.is_no())
        return fail_res(Json{{"direction", "s-implies-d"},
                             {"x", elem_json(M, x)},
                             {"y", elem_json(M, y)}});
      if (d.is_yes() && p.is_no())
        return fail_res(Json{{"direction", "d-implies-p"},
                             {"x", elem_json(M, x)},
                             {"y", elem_json(M, y)}});
      if (alg.is_yes() && can.is_yes() && refi.is_yes() && p.is_yes() && d.is_no())
        return fail_res(Json{{"direction", "p-implies-d-refinement"},
                             {"x", elem_json(M, x)},
                             {"y", elem_json(M, y)}});
      if (alg.is_yes() && can.is_yes() && simp.is_yes() && p.is_yes() && s.is_no())
        return fail_res(Json{{"direction", "p-implies-s-simple"},
                             {"x", elem_json(M, x)},
                             {"y", elem_json(M, y)}});
      if (!s.decided() || !d.decided() || !p.decided()) any_unknown = true;
    }
  return any_unknown ? und("comparison relations left undecided samples") : pass_res();
}

TRes t_P56(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  if (auto g = gate(M, b, {PropertyId::AlgebraicallyOrdered, PropertyId::Cancellative}))
    return *g;
  Verdict simp = check_property(M, PropertyId::Simple, b);
  Verdict refi = check_property(M, PropertyId::Refinement, b);
  if (simp.is_no() && refi.is_no()) return vac("neither simple nor refinement");
  if (!simp.is_yes() && !refi.is_yes()) return und("simplicity/refinement undecided");
  auto E = samples_box(M, std::min(b.sample_box, 4), 40);
  bool any_unknown = false;
  for (const auto& x : E)
    for (const auto& y : E) {
      Verdict u = unit_leq(M, x, y, b);
      Verdict p = rel_p(M, x, y, b);
      if (!u.decided() || !p.decided()) {
        any_unknown = true;
        continue;
      }
      if (u.value != p.value)
        return fail_res(Json{{"x", elem_json(M, x)},
                             {"y", elem_json(M, y)},
                             {"unit", tri_str(u.value)},
                             {"rel_p", tri_str(p.value)}});
    }
  return any_unknown ? und("pairs left undecided") : pass_res();
}

TRes t_P57(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  if (auto g = gate(M, b, {PropertyId::AlgebraicallyOrdered, PropertyId::Cancellative}))
    return *g;
  Json rep = prop57_report(M, b);
  if (!rep.value("equivalence_consistent", true)) return fail_res(rep);
  return {"pass", rep};
}

TRes t_P59(InstPtr Mp, const Budget& b) {
  Json rep;
  try {
    rep = gr_plusplus_iso(Mp, b);
  } catch (const Error& e) {
    if (e.code == Err::HypothesisFailure || e.code == Err::UnsupportedBackend)
      return vac(e.what());
    throw;
  }
  if (rep.value("samples", 0) == 0) return und("no representable samples");
  if (!rep.value("isomorphism_on_samples", false)) return fail_res(rep);
  return {"pass", rep};
}

TRes t_L61(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  auto E = samples_box(M, 2, 8);
  Elem x = zero(M);
  for (const auto& e : E)
    if (eq(M, e, x, b) != Tri::Yes) {
      x = e;
      break;
    }
  if (eq(M, x, zero(M), b) == Tri::Yes) return vac("no nonzero sample");
  // wide gap needs nothing
  Json wide = interpolate_compact(M, x, Rat(1), Rat(2), b);
  if (!wide.value("verified", false)) return fail_res(wide);
  Verdict ad = check_property(M, PropertyId::AlmostDivisible, b);
  if (ad.is_no()) return {"pass", Json{{"wide", wide}, {"narrow", "vacuous"}}};
  if (!ad.is_yes()) return und("almost divisibility undecided for the narrow branch");
  Json narrow;
  try {
    narrow = interpolate_compact(M, x, Rat(1, 2), Rat(3, 4), b);
  } catch (const Error& e) {
    if (e.code == Err::HypothesisFailure) return und(e.what());
    throw;
  }
  if (!narrow.value("verified", false)) return fail_res(narrow);
  return {"pass", Json{{"wide", wide}, {"narrow", narrow}}};
}

TRes t_L62(InstPtr Mp, const Budget& b) {
  const Instance& M = *Mp;
  Verdict ad = check_property(M, PropertyId::AlmostDivisible, b);
  if (ad.is_no()) return vac("compact layer not almost divisible");
  auto E = samples_box(M, 2, 6);
  Json results = Json::array();
  for (const auto& x : E) {
    FormalSum f;
    f.terms = {Term{x, CuzVal::compact(1)}};
    Verdict r = compact_test(M, f, b);
    if (eq(M, x, zero(M), b) != Tri::Yes && !r.is_yes())
      return fail_res(Json{{"x", elem_json(M, x)}, {"got", tri_str(r.value)}});
    results.push_back(Json{{"x", elem_json(M, x)}, {"compact", tri_str(r.value)}});
  }
  // a soft slice over a nonzero element
  for (const auto& x : E) {
    if (eq(M, x, zero(M), b) == Tri::Yes) continue;
    FormalSum f;
    f.terms = {Term{x, CuzVal::soft_of(Rat(1))}};
    Verdict r = compact_test(M, f, b);
    results.push_back(Json{{"x", elem_json(M, x)}, {"soft_slice", tri_str(r.value)}});
    break;
  }
  return {"pass", Json{{"cases", results}}};
}

TRes t_T63(InstPtr Mp, const Budget& b) {
  AlgebraicCu S = make_cu(Mp);
  Verdict ad = check_property(*Mp, PropertyId::AlmostDivisible, b);
  if (ad.is_no()) return vac("compact layer not almost divisible");
  if (!ad.is_yes()) return und("almost divisibility undecided");
  InstPtr T = tensor_compacts(S, b);
  const Instance& M = *Mp;
  auto E = samples_box(M, std::min(b.sample_box, 3), 20);
  for (const auto& x : E)
    for (const auto& y : E) {
      if (!leq(M, x, y, b).is_yes()) continue;
      Verdict u = leq(*T, x, y, b);
      if (u.is_no())
        return fail_res(Json{{"x", elem_json(M, x)},
                             {"y", elem_json(M, y)},
                             {"reason", "unit map not monotone into the tensor compacts"}});
    }
  return pass_res();
}

TRes t_T64(InstPtr Mp, const Budget& b) {
  AlgebraicCu S = make_cu(Mp);
  const Instance& M = *Mp;
  if (auto g = gate(M, b,
                    {PropertyId::AlgebraicallyOrdered, PropertyId::Cancellative,
                     PropertyId::Refinement, PropertyId::AlmostDivisible}))
    return *g;
  auto E = samples_box(M, std::min(b.sample_box, 3), 12);
  bool any_unknown = false;
  for (const auto& x : E)
    for (const auto& y : E) {
      CuElem u, v;
      u.prefix = {x};
      v.prefix = {y};
      Verdict cu = cu_unit_leq(S, u, v, b);
      Verdict t = unit_leq(M, x, y, b);
      if (!cu.decided() || !t.decided()) {
        any_unknown = true;
        continue;
      }
      if (cu.value != t.value)
        return fail_res(Json{{"x", elem_json(M, x)},
                             {"y", elem_json(M, y)},
                             {"cu_level", tri_str(cu.value)},
                             {"tensor_level", tri_str(t.value)}});
    }
  return any_unknown ? und("comparisons left undecided") : pass_res();
}

TRes t_T65(InstPtr Mp, const Budget& b) {
  AlgebraicCu S = make_cu(Mp);
  Json rep = thm65_chain(S, b);
  std::string st = rep.value("status", "undecided");
  return {st, rep};
}

struct ThmEntry {
  const char* id;
  const char* statement;
  std::function<TRes(InstPtr, const Budget&, const std::string&)> run;
};

const std::vector<ThmEntry>& theorems() {
  auto wrap = [](TRes (*f)(InstPtr, const Budget&)) {
    return [f](InstPtr M, const Budget& b, const std::string&) { return f(M, b); };
  };
  static const std::vector<ThmEntry> v = {
      {"L1.3", "translation inequalities localize principal ideals", wrap(t_L13)},
      {"L2.2", "near separativity and the double-translation law",
       [](InstPtr M, const Budget& b, const std::string&) {
         return from_suite(*M, b, {"L2.2", "nearly-sep-implies-sep"});
       }},
      {"P2.8", "cancellation against separativity, ideals and strong finiteness",
       [](InstPtr M, const Budget& b, const std::string&) {
         return from_suite(*M, b, {"P2.8-forward", "P2.8-back", "P2.8-order"});
       }},
      {"L3.2", "weak and almost divisibility under algebraic order",
       [](InstPtr M, const Budget& b, const std::string&) {
         return from_suite(*M, b, {"L3.2", "L3.2-converse"});
       }},
      {"P3.8", "near unperforation matches almost unperforation with cancellation",
       [](InstPtr M, const Budget& b, const std::string&) {
         return from_suite(*M, b, {"P3.8-forward", "P3.8-back"});
       }},
      {"T3.10", "the compact-level unperforation equivalence",
       [](InstPtr M, const Budget& b, const std::string&) {
         return from_suite(*M, b, {"T3.10"});
       }},
      {"L4.1", "the image cone inherits almost unperforation", wrap(t_L41)},
      {"P4.3", "the au hull is a strict, almost unperforated cone", wrap(t_P43)},
      {"P4.6", "the hull map is an order embedding under cancellation", wrap(t_P46)},
      {"P4.8", "weak divisibility passes to the au hull", wrap(t_P48)},
      {"T4.9", "order maps into nice targets factor through the au hull",
       [](InstPtr M, const Budget& b, const std::string& name) { return t_T49(M, b, name); }},
      {"T4.13", "the stabilized projection cone is the au hull", wrap(t_T413)},
      {"L5.2", "the tensor-unit sandwich", wrap(t_L52)},
      {"T5.3", "near unperforation characterizes the unit embedding", wrap(t_T53)},
      {"L5.5", "the comparison-relation ladder", wrap(t_L55)},
      {"P5.6", "the successive-power characterization of the unit order", wrap(t_P56)},
      {"P5.7", "the four equivalent regularity conditions on the unit image", wrap(t_P57)},
      {"P5.9", "the au hull against the strict cone of the unit image", wrap(t_P59)},
      {"L6.1", "compact interpolation inside a soft gap", wrap(t_L61)},
      {"L6.2", "self-compact elements are unit classes", wrap(t_L62)},
      {"T6.3", "tensor compacts form the unit image", wrap(t_T63)},
      {"T6.4", "the Cu-level unit order reduces to successive powers", wrap(t_T64)},
      {"T6.5", "the unperforation chain for the tensor product", wrap(t_T65)},
  };
  return v;
}

}  // namespace

const std::vector<std::string>& all_theorem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& t : theorems()) v.push_back(t.id);
    return v;
  }();
  return ids;
}

Json verify_run(const std::vector<std::string>& thm_ids,
                const std::vector<std::string>& instance_names, const Budget& b) {
  std::vector<std::string> ids = thm_ids.empty() ? all_theorem_ids() : thm_ids;
  std::vector<std::string> names = instance_names;
  if (names.empty())
    for (const auto& e : catalog()) names.push_back(e.name);

  Json out;
  out["budget"] = b.to_json();
  out["theorems"] = Json::array();
  int pass = 0, failc = 0, vacc = 0, undc = 0;
  for (const auto& id : ids) {
    const ThmEntry* entry = nullptr;
    for (const auto& t : theorems())
      if (id == t.id) entry = &t;
    if (!entry) fail(Err::BadArgument, "unknown theorem id: " + id);
    Json tj;
    tj["id"] = entry->id;
    tj["statement"] = entry->statement;
    tj["results"] = Json::array();
    for (const auto& name : names) {
      InstPtr M = catalog_instance(name);
      TRes r;
      try {
        r = entry->run(M, b, name);
      } catch (const Error& e) {
        r = {"vacuous", Json{{"reason", std::string("not applicable: ") + e.what()},
                             {"code", err_str(e.code)}}};
      }
      Json rj;
      rj["instance"] = name;
      rj["status"] = r.status;
      if (r.status == "fail") rj["detail"] = r.detail;
      if (r.status == "pass") ++pass;
      if (r.status == "fail") ++failc;
      if (r.status == "vacuous") ++vacc;
      if (r.status == "undecided") ++undc;
      tj["results"].push_back(std::move(rj));
    }
    out["theorems"].push_back(std::move(tj));
  }
  out["summary"] =
      Json{{"pass", pass}, {"fail", failc}, {"vacuous", vacc}, {"undecided", undc}};
  return out;
}

bool verify_has_failure(const Json& report) {
  return report["summary"].value("fail", 0) != 0;
}

Json full_report(InstPtr M, const Budget& b) {
  Json out;
  out["instance"] = M->label.empty() ? backend_str(M->kind) : M->label;
  out["properties"] = property_report(*M, b);
  try {
    out["group"] = gr_group(*M).to_json();
  } catch (const Error& e) {
    out["group"] = Json{{"kind", "unknown"}, {"reason", e.what()}};
  }
  out["implications"] = implication_suite(*M, b);
  Budget small = b;
  small.sample_box = std::min(b.sample_box, 3);
  out["tensor_unit_embedding"] = embedding_report(*M, small);
  return out;
}

}  // namespace orderlab
