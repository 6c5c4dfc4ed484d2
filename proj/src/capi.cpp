#include "orderlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "verify.hpp"

using namespace orderlab;

struct ol_instance {
  InstPtr inst;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ol_status status_of(Err e) {
  switch (e) {
    case Err::Parse: return OL_PARSE_ERROR;
    case Err::BackendMismatch: return OL_BACKEND_MISMATCH;
    case Err::NotAnIdeal: return OL_NOT_AN_IDEAL;
    case Err::UnsupportedProperty: return OL_UNSUPPORTED_PROPERTY;
    case Err::UnsupportedBackend: return OL_UNSUPPORTED_BACKEND;
    case Err::HypothesisFailure: return OL_HYPOTHESIS_FAILURE;
    case Err::NotOrderPreserving: return OL_NOT_ORDER_PRESERVING;
    case Err::BadArgument: return OL_BAD_ARGUMENT;
    case Err::Internal: return OL_INTERNAL_ERROR;
  }
  return OL_INTERNAL_ERROR;
}

template <class F>
ol_status guarded(F&& f) {
  try {
    f();
    return OL_OK;
  } catch (const Error& e) {
    Json j;
    j["error"] = e.what();
    j["code"] = err_str(e.code);
    if (!e.detail.empty()) j["detail"] = e.detail;
    g_last_error = j.dump();
    return status_of(e.code);
  } catch (const std::exception& e) {
    g_last_error = std::string("{\"error\":\"") + e.what() + "\"}";
    return OL_INTERNAL_ERROR;
  }
}

Budget budget_of(const char* budget_json) {
  Budget b;
  if (budget_json && *budget_json) {
    Json j = Json::parse(budget_json, nullptr, false);
    if (j.is_discarded()) fail(Err::Parse, "invalid budget JSON");
    b = Budget::from_json(j);
  }
  return b;
}

Json parse_json_arg(const char* text, const char* what) {
  if (!text) fail(Err::BadArgument, std::string("missing argument: ") + what);
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Err::Parse, std::string("invalid JSON for ") + what);
  return j;
}

const Instance& deref(const ol_instance* inst) {
  if (!inst || !inst->inst) fail(Err::BadArgument, "null instance handle");
  return *inst->inst;
}

}  // namespace

extern "C" {

const char* ol_version(void) { return "orderlab 1.0.0"; }

const char* ol_last_error(void) { return g_last_error.c_str(); }

void ol_string_free(char* s) { std::free(s); }

ol_status ol_instance_parse(const char* json_text, ol_instance** out) {
  return guarded([&] {
    if (!json_text || !out) fail(Err::BadArgument, "null argument");
    InstPtr m = parse_instance_text(json_text);
    *out = new ol_instance{std::move(m)};
  });
}

ol_status ol_catalog_instance(const char* name, ol_instance** out) {
  return guarded([&] {
    if (!name || !out) fail(Err::BadArgument, "null argument");
    *out = new ol_instance{catalog_instance(name)};
  });
}

void ol_instance_free(ol_instance* inst) { delete inst; }

ol_status ol_instance_to_json(const ol_instance* inst, char** out) {
  return guarded([&] { *out = dup_string(instance_json(deref(inst)).dump()); });
}

ol_status ol_catalog_list(char** out) {
  return guarded([&] { *out = dup_string(catalog_listing().dump()); });
}

ol_status ol_add(const ol_instance* inst, const char* x, const char* y, char** out) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Elem ex = parse_elem(M, parse_json_arg(x, "x"));
    Elem ey = parse_elem(M, parse_json_arg(y, "y"));
    *out = dup_string(elem_json(M, add(M, ex, ey)).dump());
  });
}

ol_status ol_leq(const ol_instance* inst, const char* x, const char* y, const char* budget_json,
                 char** verdict) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Budget b = budget_of(budget_json);
    Elem ex = parse_elem(M, parse_json_arg(x, "x"));
    Elem ey = parse_elem(M, parse_json_arg(y, "y"));
    *verdict = dup_string(leq(M, ex, ey, b).to_json().dump());
  });
}

ol_status ol_contains(const ol_instance* inst, const char* vector_json, const char* budget_json,
                      char** verdict) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Budget b = budget_of(budget_json);
    Json vj = parse_json_arg(vector_json, "vector");
    VecZ v = vj.get<VecZ>();
    *verdict = dup_string(contains_vec(M, v, b).to_json().dump());
  });
}

ol_status ol_rel(const ol_instance* inst, const char* which, const char* x, const char* y,
                 const char* budget_json, char** verdict) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Budget b = budget_of(budget_json);
    Elem ex = parse_elem(M, parse_json_arg(x, "x"));
    Elem ey = parse_elem(M, parse_json_arg(y, "y"));
    std::string w = which ? which : "";
    Verdict r;
    if (w == "s")
      r = rel_s(M, ex, ey, b);
    else if (w == "p")
      r = rel_p(M, ex, ey, b);
    else if (w == "d")
      r = rel_d(M, ex, ey, b);
    else
      fail(Err::BadArgument, "relation must be one of s | p | d");
    *verdict = dup_string(r.to_json().dump());
  });
}

ol_status ol_check_property(const ol_instance* inst, const char* property,
                            const char* budget_json, char** verdict) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Budget b = budget_of(budget_json);
    if (!property) fail(Err::BadArgument, "null property");
    auto p = property_from_str(property);
    if (!p)
      fail(Err::UnsupportedProperty, std::string("unknown property: ") + property);
    *verdict = dup_string(check_property(M, *p, b).to_json().dump());
  });
}

ol_status ol_report(const ol_instance* inst, const char* budget_json, char** out) {
  return guarded([&] {
    Budget b = budget_of(budget_json);
    *out = dup_string(full_report(deref(inst).shared_from_this(), b).dump());
  });
}

ol_status ol_gr(const ol_instance* inst, const char* request_json, const char* budget_json,
                char** out) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Budget b = budget_of(budget_json);
    Json req = request_json && *request_json ? parse_json_arg(request_json, "request")
                                             : Json::object();
    Json rep;
    rep["group"] = gr_group(M).to_json();
    std::vector<Elem> gs;
    if (req.contains("elements"))
      for (const auto& gj : req["elements"]) gs.push_back(gr_parse(M, gj));
    else
      gs = gr_samples(M, b);
    if (gs.size() > 64) gs.resize(64);
    Json table = Json::array();
    for (const auto& g : gs) {
      Json row;
      row["g"] = gr_json(M, g);
      row["gr_plus"] = cone_member(M, ConeKind::GrPlus, g, b).to_json();
      row["gr_plusplus"] = cone_member(M, ConeKind::GrPlusPlus, g, b).to_json();
      row["au_gr_plus"] = cone_member(M, ConeKind::AuGrPlus, g, b).to_json();
      row["au_gr_plusplus"] = cone_member(M, ConeKind::AuGrPlusPlus, g, b).to_json();
      table.push_back(std::move(row));
    }
    rep["cone_membership"] = table;
    *out = dup_string(rep.dump());
  });
}

ol_status ol_tensor_leq(const ol_instance* inst, const char* lhs_json, const char* rhs_json,
                        const char* budget_json, char** out) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Budget b = budget_of(budget_json);
    FormalSum f = fs_parse(M, parse_json_arg(lhs_json, "lhs"));
    FormalSum g = fs_parse(M, parse_json_arg(rhs_json, "rhs"));
    Json rep;
    rep["lhs"] = fs_json(M, f);
    rep["rhs"] = fs_json(M, g);
    Verdict oracle = oracle_leq(M, f, g, b);
    rep["oracle"] = oracle.to_json();
    // the combined decider refines the one-sided oracle on unit sums
    if (f.terms.size() == 1 && g.terms.size() == 1 && !f.terms[0].t.soft &&
        !g.terms[0].t.soft && f.terms[0].t.n == 1 && g.terms[0].t.n == 1) {
      rep["combined"] = unit_leq(M, f.terms[0].x, g.terms[0].x, b).to_json();
    }
    *out = dup_string(rep.dump());
  });
}

ol_status ol_unit_leq(const ol_instance* inst, const char* x, const char* y,
                      const char* budget_json, char** verdict) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Budget b = budget_of(budget_json);
    Elem ex = parse_elem(M, parse_json_arg(x, "x"));
    Elem ey = parse_elem(M, parse_json_arg(y, "y"));
    *verdict = dup_string(unit_leq(M, ex, ey, b).to_json().dump());
  });
}

ol_status ol_cu(const ol_instance* inst, const char* request_json, const char* budget_json,
                char** out) {
  return guarded([&] {
    const Instance& M = deref(inst);
    Budget b = budget_of(budget_json);
    Json req = parse_json_arg(request_json, "request");
    std::string op = req.value("op", "");
    AlgebraicCu S = make_cu(deref(inst).shared_from_this());
    Json rep;
    if (op == "axiom") {
      auto ax = cu_axiom_from_str(req.value("axiom", ""));
      if (!ax) fail(Err::BadArgument, "axiom must be O5 | O6 | weak-cancellation | almost-divisible");
      rep["axiom"] = cu_axiom_str(*ax);
      rep["verdict"] = satisfies_axiom(S, *ax, b).to_json();
    } else if (op == "leq") {
      CuElem u = cu_parse_elem(M, req.at("u"));
      CuElem v = cu_parse_elem(M, req.at("v"));
      int depth = req.value("depth", b.chain_depth);
      rep["verdict"] = cu_leq(S, u, v, depth, b).to_json();
    } else if (op == "unit-leq") {
      CuElem u = cu_parse_elem(M, req.at("u"));
      CuElem v = cu_parse_elem(M, req.at("v"));
      rep["verdict"] = cu_unit_leq(S, u, v, b).to_json();
    } else if (op == "thm65") {
      rep = thm65_chain(S, b);
    } else if (op == "tensor-compacts") {
      rep["instance"] = instance_json(*tensor_compacts(S, b));
    } else if (op == "interpolate") {
      Elem x = parse_elem(M, req.at("x"));
      Rat s = parse_rat(req.at("s").get<std::string>());
      Rat t = parse_rat(req.at("t").get<std::string>());
      rep = interpolate_compact(M, x, s, t, b);
    } else if (op == "compact-test") {
      FormalSum f = fs_parse(M, req.at("f"));
      rep["verdict"] = compact_test(M, f, b).to_json();
    } else {
      fail(Err::BadArgument, "unknown cu op: " + op);
    }
    *out = dup_string(rep.dump());
  });
}

ol_status ol_verify(const char* request_json, const char* budget_json, char** report,
                    int* any_fail) {
  return guarded([&] {
    Budget b = budget_of(budget_json);
    Json req = request_json && *request_json ? parse_json_arg(request_json, "request")
                                             : Json::object();
    std::vector<std::string> thms, insts;
    if (req.contains("theorems"))
      for (const auto& t : req["theorems"]) thms.push_back(t.get<std::string>());
    if (req.contains("instances"))
      for (const auto& i : req["instances"]) insts.push_back(i.get<std::string>());
    Json rep = verify_run(thms, insts, b);
    if (any_fail) *any_fail = verify_has_failure(rep) ? 1 : 0;
    *report = dup_string(rep.dump());
  });
}

}  // extern "C"
