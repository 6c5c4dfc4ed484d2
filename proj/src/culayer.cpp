#include "culayer.hpp"

#include <algorithm>

namespace orderlab {

const char* cu_axiom_str(CuAxiom a) {
  switch (a) {
    case CuAxiom::O5: return "O5";
    case CuAxiom::O6: return "O6";
    case CuAxiom::WeakCancellation: return "weak-cancellation";
    case CuAxiom::AlmostDivisible: return "almost-divisible";
  }
  return "?";
}

std::optional<CuAxiom> cu_axiom_from_str(const std::string& s) {
  if (s == "O5" || s == "o5") return CuAxiom::O5;
  if (s == "O6" || s == "o6") return CuAxiom::O6;
  if (s == "weak-cancellation") return CuAxiom::WeakCancellation;
  if (s == "almost-divisible") return CuAxiom::AlmostDivisible;
  return std::nullopt;
}

AlgebraicCu make_cu(InstPtr compacts) {
  AlgebraicCu s;
  s.label = "gamma(" + compacts->label + ")";
  s.compacts = std::move(compacts);
  return s;
}

CuElem cu_parse_elem(const Instance& Sc, const Json& j) {
  CuElem u;
  if (!j.is_object() || !j.contains("prefix"))
    fail(Err::Parse, "Cu element literal must be {\"prefix\": [...], \"tail\": ...}");
  Elem prev = zero(Sc);
  Budget b;
  for (const auto& t : j["prefix"]) {
    Elem e = parse_elem(Sc, t);
    require_element(Sc, e);
    if (!u.prefix.empty() && !leq(Sc, prev, e, b).is_yes())
      fail(Err::Parse, "Cu element prefix must be nondecreasing");
    prev = e;
    u.prefix.push_back(std::move(e));
  }
  if (u.prefix.empty()) u.prefix.push_back(zero(Sc));
  Json tail = j.value("tail", Json("constant"));
  if (tail.is_string()) {
    std::string s = tail.get<std::string>();
    if (s == "constant")
      u.tail = CuElem::Tail::Constant;
    else if (s == "formal-sup")
      u.tail = CuElem::Tail::FormalSup;
    else
      fail(Err::Parse, "tail must be \"constant\", \"formal-sup\" or {\"repeat_plus\": elem}");
  } else if (tail.is_object() && tail.contains("repeat_plus")) {
    u.tail = CuElem::Tail::RepeatLastPlusDelta;
    u.delta = parse_elem(Sc, tail["repeat_plus"]);
  } else {
    fail(Err::Parse, "bad tail rule");
  }
  return u;
}

Json cu_elem_json(const Instance& Sc, const CuElem& u) {
  Json j;
  j["prefix"] = Json::array();
  for (const auto& e : u.prefix) j["prefix"].push_back(elem_json(Sc, e));
  switch (u.tail) {
    case CuElem::Tail::Constant: j["tail"] = "constant"; break;
    case CuElem::Tail::FormalSup: j["tail"] = "formal-sup"; break;
    case CuElem::Tail::RepeatLastPlusDelta:
      j["tail"] = Json{{"repeat_plus", elem_json(Sc, u.delta)}};
      break;
  }
  return j;
}

Elem cu_term(const Instance& Sc, const CuElem& u, int k) {
  if (k < (int)u.prefix.size()) return u.prefix[(size_t)k];
  if (u.tail == CuElem::Tail::Constant || u.tail == CuElem::Tail::FormalSup)
    return u.prefix.back();
  Elem e = u.prefix.back();
  for (int i = (int)u.prefix.size(); i <= k; ++i) e = add(Sc, e, u.delta);
  return e;
}

namespace {

bool tail_grows(const Instance& Sc, const CuElem& u) {
  if (u.tail == CuElem::Tail::Constant) return false;
  if (u.tail == CuElem::Tail::FormalSup) return true;
  Budget b;
  return eq(Sc, u.delta, zero(Sc), b) != Tri::Yes;
}

}  // namespace

Verdict cu_leq(const AlgebraicCu& S, const CuElem& u, const CuElem& v, int depth,
               const Budget& b) {
  const Instance& Sc = *S.compacts;
  const int d = std::max(depth, (int)std::max(u.prefix.size(), v.prefix.size()));
  bool u_grows = tail_grows(Sc, u);
  bool v_grows = tail_grows(Sc, v);
  int u_terms = u_grows ? d : (int)u.prefix.size();
  int v_terms = v_grows ? d : (int)v.prefix.size();

  bool any_unknown = false;
  for (int i = 0; i < u_terms; ++i) {
    Elem ui = cu_term(Sc, u, i);
    bool dominated = false;
    bool all_no = true;
    for (int j = 0; j < v_terms; ++j) {
      Verdict r = leq(Sc, ui, cu_term(Sc, v, j), b);
      if (r.is_yes()) {
        dominated = true;
        break;
      }
      if (!r.decided()) all_no = false;
    }
    if (dominated) continue;
    if (all_no && !v_grows)
      return Verdict::no(Json{{"failing_term_index", i},
                              {"failing_term", elem_json(Sc, ui)},
                              {"depth", d}});
    any_unknown = true;
  }
  if (any_unknown || u_grows)
    return Verdict::unknown(Json{{"kind", "depth-bounded"}, {"depth", d}});
  return Verdict::yes(Json{{"kind", "termwise-domination"}, {"depth", d}});
}

Verdict satisfies_axiom(const AlgebraicCu& S, CuAxiom which, const Budget& b) {
  const Instance& Sc = *S.compacts;
  switch (which) {
    case CuAxiom::O5: {
      Verdict v = check_property(Sc, PropertyId::AlgebraicallyOrdered, b);
      v.cert = Json{{"reduction", "O5 holds iff the compact layer is algebraically ordered"},
                    {"compact_level", v.cert}};
      return v;
    }
    case CuAxiom::WeakCancellation: {
      Verdict v = check_property(Sc, PropertyId::Cancellative, b);
      v.cert = Json{{"reduction", "weak cancellation iff the compact layer is cancellative"},
                    {"compact_level", v.cert}};
      return v;
    }
    case CuAxiom::O6: {
      Verdict v = check_property(Sc, PropertyId::Refinement, b);
      if (v.is_yes()) {
        v.cert = Json{{"reduction",
                       "Riesz decomposition of the compact layer suffices for O6; only this "
                       "direction is implemented"},
                      {"compact_level", v.cert}};
        return v;
      }
      return Verdict::unknown(
          Json{{"reduction", "only the sufficient direction (compact Riesz) is implemented"},
               {"compact_level", v.to_json()}});
    }
    case CuAxiom::AlmostDivisible: {
      Verdict v = check_property(Sc, PropertyId::AlmostDivisible, b);
      v.cert = Json{{"reduction", "almost divisibility passes through the compact layer"},
                    {"compact_level", v.cert}};
      return v;
    }
  }
  fail(Err::Internal, "unreachable");
}

Verdict cu_unit_leq(const AlgebraicCu& S, const CuElem& u, const CuElem& v, const Budget& b) {
  const Instance& Sc = *S.compacts;
  const PropertyId bundle[] = {PropertyId::AlgebraicallyOrdered, PropertyId::Cancellative,
                               PropertyId::Refinement, PropertyId::AlmostDivisible};
  for (PropertyId p : bundle) {
    Verdict h = check_property(Sc, p, b);
    if (!h.is_yes())
      fail(Err::HypothesisFailure,
           std::string("compact-layer hypothesis not established: ") + property_str(p),
           Json{{"property", property_str(p)}, {"verdict", tri_str(h.value)}});
  }
  const int d = std::min(b.chain_depth, 8);
  bool u_grows = tail_grows(Sc, u);
  bool v_grows = tail_grows(Sc, v);
  int u_terms = u_grows ? d : (int)u.prefix.size();
  int v_terms = v_grows ? d : (int)v.prefix.size();
  bool any_unknown = false;
  Json rungs = Json::array();
  for (int i = 0; i < u_terms; ++i) {
    Elem ui = cu_term(Sc, u, i);
    bool ok = false;
    bool all_no = true;
    for (int j = 0; j < v_terms; ++j) {
      Verdict rp = rel_p(Sc, ui, cu_term(Sc, v, j), b);
      if (rp.is_yes()) {
        rungs.push_back(Json{{"term", elem_json(Sc, ui)},
                             {"against", elem_json(Sc, cu_term(Sc, v, j))},
                             {"n", rp.cert["n"]}});
        ok = true;
        break;
      }
      if (!rp.decided()) all_no = false;
    }
    if (ok) continue;
    if (all_no && !v_grows)
      return Verdict::no(
          Json{{"failing_term", elem_json(Sc, ui)}, {"failing_term_index", i}});
    any_unknown = true;
  }
  if (any_unknown || u_grows)
    return Verdict::unknown(Json{{"kind", "depth-bounded"}, {"depth", d}});
  return Verdict::yes(Json{{"rungs", rungs}, {"depth", d}});
}

InstPtr tensor_compacts(const AlgebraicCu& S, const Budget& b) {
  Verdict ad = check_property(*S.compacts, PropertyId::AlmostDivisible, b);
  if (ad.is_no())
    fail(Err::HypothesisFailure, "tensor compacts need almost divisibility of the compact layer",
         ad.cert);
  auto t = Instance::m_tensor_one(S.compacts);
  auto labeled = std::make_shared<Instance>(*t);
  labeled->label = "(" + S.label + " (x) Z)_c";
  return labeled;
}

Json thm65_chain(const AlgebraicCu& S, const Budget& b) {
  const Instance& Sc = *S.compacts;
  Json rep;
  rep["instance"] = S.label;
  Verdict sep = check_property(Sc, PropertyId::Separative, b);
  Verdict ad = check_property(Sc, PropertyId::AlmostDivisible, b);
  rep["hypotheses"] = Json{{"separative", tri_str(sep.value)},
                           {"almost-divisible", tri_str(ad.value)}};
  if (sep.is_no() || ad.is_no()) {
    rep["status"] = "vacuous";
    rep["failed_hypothesis"] = sep.is_no() ? "separative" : "almost-divisible";
    return rep;
  }

  // (i) the compact layer of S (x) Z is algebraically ordered
  Tri i_status = Tri::Yes;
  {
    auto E = samples_box(Sc, std::min(b.sample_box, 4), 48);
    bool any_unknown = false;
    for (const auto& x : E) {
      for (const auto& y : E) {
        Verdict ul = unit_leq(Sc, x, y, b);
        if (!ul.decided()) {
          any_unknown = true;
          continue;
        }
        if (!ul.is_yes()) continue;
        // find z with (x+z)(.)1 = y(.)1
        bool found = false;
        bool search_unknown = false;
        std::vector<Elem> cands = E;
        Solve sv = solve_add(Sc, x, y, b);
        if (sv.status == Tri::Yes) cands.insert(cands.begin(), sv.z);
        for (const auto& z : cands) {
          Elem xz = add(Sc, x, z);
          Verdict aa = unit_leq(Sc, xz, y, b);
          Verdict bb = unit_leq(Sc, y, xz, b);
          if (aa.is_yes() && bb.is_yes()) {
            found = true;
            break;
          }
          if (!aa.decided() || !bb.decided()) search_unknown = true;
        }
        if (!found) {
          if (search_unknown) {
            any_unknown = true;
          } else {
            i_status = Tri::No;
            rep["i_witness"] = Json{{"x", elem_json(Sc, x)}, {"y", elem_json(Sc, y)}};
          }
        }
      }
      if (i_status == Tri::No) break;
    }
    if (i_status == Tri::Yes && any_unknown) i_status = Tri::Unknown;
  }

  // (ii) the compact layer is almost unperforated
  Verdict ii = check_property(Sc, PropertyId::AlmostUnperforated, b);

  // (iii) almost unperforation at the Cu level, sampled through finitely
  // described sequences (compact reduction)
  Tri iii_status = ii.value;
  {
    auto E = samples_box(Sc, std::min(b.sample_box, 3), 16);
    std::vector<CuElem> cus;
    for (const auto& e : E) {
      CuElem c;
      c.prefix = {e};
      cus.push_back(c);
    }
    // a few genuinely increasing sequences
    for (const auto& e : E) {
      if (eq(Sc, e, zero(Sc), b) == Tri::Yes) continue;
      CuElem c;
      c.prefix = {e, add(Sc, e, e)};
      c.tail = CuElem::Tail::RepeatLastPlusDelta;
      c.delta = e;
      cus.push_back(c);
      if (cus.size() > 24) break;
    }
    for (const auto& u : cus) {
      for (const auto& v : cus) {
        // (n+1)u <= nv for some small n forces u <= v
        for (long long n = 1; n <= 3; ++n) {
          CuElem un, vn;
          for (const auto& t : u.prefix) un.prefix.push_back(mul(Sc, n + 1, t));
          for (const auto& t : v.prefix) vn.prefix.push_back(mul(Sc, n, t));
          un.tail = u.tail;
          vn.tail = v.tail;
          if (u.tail == CuElem::Tail::RepeatLastPlusDelta) un.delta = mul(Sc, n + 1, u.delta);
          if (v.tail == CuElem::Tail::RepeatLastPlusDelta) vn.delta = mul(Sc, n, v.delta);
          Verdict hyp = cu_leq(S, un, vn, 6, b);
          if (!hyp.is_yes()) continue;
          Verdict con = cu_leq(S, u, v, 6, b);
          if (con.is_no()) {
            iii_status = Tri::No;
            rep["iii_witness"] = Json{{"u", cu_elem_json(Sc, u)},
                                      {"v", cu_elem_json(Sc, v)},
                                      {"n", n}};
          }
        }
        if (iii_status == Tri::No) break;
      }
      if (iii_status == Tri::No) break;
    }
  }

  // (iv) S is isomorphic to S (x) Z at the compact level: the unit map is an
  // order isomorphism of the compact layer onto its image
  Tri iv_status = Tri::Yes;
  {
    auto E = samples_box(Sc, std::min(b.sample_box, 4), 48);
    bool any_unknown = false;
    for (const auto& x : E)
      for (const auto& y : E) {
        Verdict in_m = leq(Sc, x, y, b);
        Verdict in_t = unit_leq(Sc, x, y, b);
        if (!in_m.decided() || !in_t.decided()) {
          any_unknown = true;
          continue;
        }
        if (in_m.value != in_t.value) {
          iv_status = Tri::No;
          rep["iv_witness"] = Json{{"x", elem_json(Sc, x)},
                                   {"y", elem_json(Sc, y)},
                                   {"in_m", tri_str(in_m.value)},
                                   {"in_tensor", tri_str(in_t.value)}};
        }
      }
    if (iv_status == Tri::Yes && any_unknown) iv_status = Tri::Unknown;
  }

  rep["statuses"] = Json{{"i_tensor_O5", tri_str(i_status)},
                         {"ii_compacts_almost_unperforated", tri_str(ii.value)},
                         {"iii_cu_level_almost_unperforated", tri_str(iii_status)},
                         {"iv_unit_map_isomorphism", tri_str(iv_status)}};
  // the implication chain (i) => (ii) => (iii) => (iv) may never step from a
  // decided Yes to a decided No
  Tri seq[] = {i_status, ii.value, iii_status, iv_status};
  bool failv = false;
  for (int k = 0; k + 1 < 4; ++k)
    if (seq[k] == Tri::Yes && seq[k + 1] == Tri::No) failv = true;
  bool undecided = false;
  for (Tri t : seq) undecided = undecided || t == Tri::Unknown;
  rep["status"] = failv ? "fail" : (undecided ? "undecided" : "pass");
  return rep;
}

}  // namespace orderlab
