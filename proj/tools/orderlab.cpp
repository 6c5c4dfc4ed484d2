// orderlab command line: instance files or catalog names in, verdicts and
// reports out. All computation happens behind the C API in liborderlab.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "orderlab.h"

namespace {

using Json = nlohmann::ordered_json;

int g_box = 6, g_nmax = 24, g_coeff = 12, g_depth = 8;
std::string g_format = "text";

void apply_env_budget() {
  const char* env = std::getenv("ORDERLAB_BUDGET");
  if (!env) return;
  std::stringstream ss(env);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) continue;
    std::string key = part.substr(0, eq);
    int value = std::atoi(part.substr(eq + 1).c_str());
    if (value <= 0) continue;
    if (key == "box") g_box = value;
    if (key == "nmax") g_nmax = value;
    if (key == "coeff") g_coeff = value;
    if (key == "depth") g_depth = value;
  }
}

std::string budget_json() {
  Json j;
  j["sample_box"] = g_box;
  j["n_max"] = g_nmax;
  j["coeff_bound"] = g_coeff;
  j["chain_depth"] = g_depth;
  return j.dump();
}

void add_budget_flags(CLI::App* cmd) {
  cmd->add_option("--box", g_box, "sample box bound");
  cmd->add_option("--nmax", g_nmax, "multiplier search bound");
  cmd->add_option("--coeff-bound", g_coeff, "membership coefficient bound");
  cmd->add_option("--depth", g_depth, "rewrite-chain depth bound");
  cmd->add_option("--format", g_format, "output format: json | text")
      ->check(CLI::IsMember({"json", "text"}));
}

[[noreturn]] void die_parse(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  const char* detail = ol_last_error();
  if (detail && *detail) std::cerr << detail << "\n";
  std::exit(2);
}

ol_instance* load_instance(const std::string& spec) {
  std::ifstream in(spec);
  ol_instance* inst = nullptr;
  if (in.good()) {
    std::stringstream buf;
    buf << in.rdbuf();
    if (ol_instance_parse(buf.str().c_str(), &inst) != OL_OK)
      die_parse("cannot parse instance file " + spec);
    return inst;
  }
  if (ol_catalog_instance(spec.c_str(), &inst) != OL_OK)
    die_parse("no such file or catalog instance: " + spec);
  return inst;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ol_string_free(s);
  return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void print_verdict_text(const Json& v) {
  std::cout << "verdict: " << v.value("value", "?") << "\n";
  if (v.contains("certificate") && !v["certificate"].empty())
    std::cout << "certificate: " << v["certificate"].dump() << "\n";
}

int exit_code_for_verdict(const Json& v) {
  return v.value("value", "unknown") == "unknown" ? 3 : 0;
}

std::string elem_arg_to_json(const std::string& raw) {
  // accept raw JSON (arrays, quoted strings) or bare literals like 3/4 or a
  Json parsed = Json::parse(raw, nullptr, false);
  if (!parsed.is_discarded()) return parsed.dump();
  return Json(raw).dump();
}

}  // namespace

int main(int argc, char** argv) {
  apply_env_budget();
  CLI::App app{"orderlab: exact computation with positively ordered semigroups"};
  app.require_subcommand(1);

  std::string arg_instance, arg_prop;
  auto* c_check = app.add_subcommand("check", "decide one property on an instance");
  c_check->add_option("instance", arg_instance, "instance file or catalog name")->required();
  c_check->add_option("--prop", arg_prop, "property name (kebab-case)")->required();
  add_budget_flags(c_check);

  auto* c_report = app.add_subcommand("report", "full property matrix and summaries");
  c_report->add_option("instance", arg_instance, "instance file or catalog name")->required();
  add_budget_flags(c_report);

  std::string arg_elems;
  auto* c_gr = app.add_subcommand("gr", "group completion and cone membership");
  c_gr->add_option("instance", arg_instance, "instance file or catalog name")->required();
  c_gr->add_option("--elems", arg_elems, "JSON list of group elements");
  add_budget_flags(c_gr);

  std::string arg_lhs, arg_rhs;
  auto* c_tz = app.add_subcommand("tensorz", "order in the tensor product with Z");
  c_tz->add_option("instance", arg_instance, "instance file or catalog name")->required();
  c_tz->add_option("--lhs", arg_lhs, "left formal sum (JSON)")->required();
  c_tz->add_option("--rhs", arg_rhs, "right formal sum (JSON)")->required();
  add_budget_flags(c_tz);

  std::string arg_axiom, arg_thm, arg_u, arg_v, arg_interp_x, arg_s, arg_t, arg_f;
  auto* c_cu = app.add_subcommand("cu", "algebraic Cu-semigroup over the compact layer");
  c_cu->add_option("instance", arg_instance, "compact layer: instance file or catalog name")
      ->required();
  c_cu->add_option("--axiom", arg_axiom, "O5 | O6 | weak-cancellation | almost-divisible");
  c_cu->add_option("--thm", arg_thm, "Cu-level theorem id (T6.5)");
  c_cu->add_option("--leq-u", arg_u, "Cu element {\"prefix\":[...],\"tail\":...}");
  c_cu->add_option("--leq-v", arg_v, "Cu element to compare against");
  c_cu->add_option("--interpolate-x", arg_interp_x, "element for compact interpolation");
  c_cu->add_option("--s", arg_s, "lower soft value p/q");
  c_cu->add_option("--t", arg_t, "upper soft value p/q");
  c_cu->add_option("--compact-test", arg_f, "formal sum to test for compact form");
  add_budget_flags(c_cu);

  std::vector<std::string> arg_thms, arg_instances;
  bool arg_all = false;
  auto* c_verify = app.add_subcommand("verify", "run theorem wirings over the catalog");
  c_verify->add_option("--thm", arg_thms, "theorem ids (default: all)");
  c_verify->add_option("--instance", arg_instances, "catalog instances (default: all)");
  c_verify->add_flag("--all", arg_all, "run everything");
  add_budget_flags(c_verify);

  std::string arg_export, arg_name;
  auto* c_cat = app.add_subcommand("catalog", "list shipped instances");
  c_cat->add_option("name", arg_name, "show one entry");
  c_cat->add_option("--export", arg_export, "write instance files into a directory");
  add_budget_flags(c_cat);

  CLI11_PARSE(app, argc, argv);

  if (c_check->parsed()) {
    ol_instance* inst = load_instance(arg_instance);
    char* out = nullptr;
    if (ol_check_property(inst, arg_prop.c_str(), budget_json().c_str(), &out) != OL_OK)
      die_parse("check failed");
    Json v = Json::parse(take(out));
    if (g_format == "json")
      print_json(v);
    else
      print_verdict_text(v);
    ol_instance_free(inst);
    return exit_code_for_verdict(v);
  }

  if (c_report->parsed()) {
    ol_instance* inst = load_instance(arg_instance);
    char* out = nullptr;
    if (ol_report(inst, budget_json().c_str(), &out) != OL_OK) die_parse("report failed");
    Json rep = Json::parse(take(out));
    if (g_format == "json") {
      print_json(rep);
    } else {
      std::cout << "instance: " << rep.value("instance", "?") << "\n";
      for (auto& [k, v] : rep["properties"].items())
        std::cout << "  " << k << ": " << v.value("value", "?") << "\n";
      std::cout << "group: " << rep["group"].dump() << "\n";
      int fails = 0;
      for (const auto& e : rep["implications"])
        if (e.value("status", "") == "fail") ++fails;
      std::cout << "implications: " << rep["implications"].size() << " checked, " << fails
                << " failed\n";
    }
    ol_instance_free(inst);
    return 0;
  }

  if (c_gr->parsed()) {
    ol_instance* inst = load_instance(arg_instance);
    Json req = Json::object();
    if (!arg_elems.empty()) {
      Json elems = Json::parse(arg_elems, nullptr, false);
      if (elems.is_discarded()) die_parse("--elems must be a JSON list");
      req["elements"] = elems;
    }
    char* out = nullptr;
    if (ol_gr(inst, req.dump().c_str(), budget_json().c_str(), &out) != OL_OK)
      die_parse("gr failed");
    Json rep = Json::parse(take(out));
    if (g_format == "json") {
      print_json(rep);
    } else {
      std::cout << "group: " << rep["group"].dump() << "\n";
      for (const auto& row : rep["cone_membership"])
        std::cout << row["g"].dump() << "  gr+=" << row["gr_plus"].value("value", "?")
                  << "  gr++=" << row["gr_plusplus"].value("value", "?")
                  << "  au+=" << row["au_gr_plus"].value("value", "?")
                  << "  au++=" << row["au_gr_plusplus"].value("value", "?") << "\n";
    }
    ol_instance_free(inst);
    return 0;
  }

  if (c_tz->parsed()) {
    ol_instance* inst = load_instance(arg_instance);
    char* out = nullptr;
    if (ol_tensor_leq(inst, arg_lhs.c_str(), arg_rhs.c_str(), budget_json().c_str(), &out) !=
        OL_OK)
      die_parse("tensorz failed");
    Json rep = Json::parse(take(out));
    if (g_format == "json") {
      print_json(rep);
    } else {
      std::cout << "oracle: " << rep["oracle"].value("value", "?") << "\n";
      if (rep["oracle"].value("value", "") == "yes")
        std::cout << "chain links: " << rep["oracle"]["certificate"].value("links", 0)
                  << ", steps: " << rep["oracle"]["certificate"]["steps"].size() << "\n";
      if (rep.contains("combined"))
        std::cout << "combined decider: " << rep["combined"].value("value", "?") << "\n";
    }
    ol_instance_free(inst);
    std::string v = rep.contains("combined") ? rep["combined"].value("value", "unknown")
                                             : rep["oracle"].value("value", "unknown");
    return v == "unknown" ? 3 : 0;
  }

  if (c_cu->parsed()) {
    ol_instance* inst = load_instance(arg_instance);
    Json req;
    if (!arg_axiom.empty()) {
      req["op"] = "axiom";
      req["axiom"] = arg_axiom;
    } else if (!arg_thm.empty()) {
      if (arg_thm != "T6.5") die_parse("only --thm T6.5 is a Cu-level report");
      req["op"] = "thm65";
    } else if (!arg_u.empty() && !arg_v.empty()) {
      Json u = Json::parse(arg_u, nullptr, false), v = Json::parse(arg_v, nullptr, false);
      if (u.is_discarded() || v.is_discarded()) die_parse("bad Cu element literal");
      req["op"] = "leq";
      req["u"] = u;
      req["v"] = v;
      req["depth"] = g_depth;
    } else if (!arg_interp_x.empty()) {
      req["op"] = "interpolate";
      req["x"] = Json::parse(elem_arg_to_json(arg_interp_x));
      req["s"] = arg_s;
      req["t"] = arg_t;
    } else if (!arg_f.empty()) {
      Json f = Json::parse(arg_f, nullptr, false);
      if (f.is_discarded()) die_parse("bad formal sum");
      req["op"] = "compact-test";
      req["f"] = f;
    } else {
      die_parse(
          "cu needs one of --axiom, --thm, --leq-u/--leq-v, --interpolate-x, --compact-test");
    }
    char* out = nullptr;
    ol_status st = ol_cu(inst, req.dump().c_str(), budget_json().c_str(), &out);
    if (st == OL_HYPOTHESIS_FAILURE) {
      std::cout << "hypothesis failure: " << ol_last_error() << "\n";
      ol_instance_free(inst);
      return 3;
    }
    if (st != OL_OK) die_parse("cu failed");
    Json rep = Json::parse(take(out));
    print_json(rep);
    ol_instance_free(inst);
    if (rep.contains("verdict"))
      return rep["verdict"].value("value", "") == "unknown" ? 3 : 0;
    return 0;
  }

  if (c_verify->parsed()) {
    Json req;
    if (!arg_thms.empty()) req["theorems"] = arg_thms;
    if (!arg_instances.empty()) req["instances"] = arg_instances;
    char* out = nullptr;
    int any_fail = 0;
    if (ol_verify(req.dump().c_str(), budget_json().c_str(), &out, &any_fail) != OL_OK)
      die_parse("verify failed");
    Json rep = Json::parse(take(out));
    if (g_format == "json") {
      print_json(rep);
    } else {
      for (const auto& t : rep["theorems"]) {
        std::map<std::string, int> counts;
        for (const auto& r : t["results"]) counts[r.value("status", "?")]++;
        std::cout << t.value("id", "?") << ": pass=" << counts["pass"]
                  << " fail=" << counts["fail"] << " vacuous=" << counts["vacuous"]
                  << " undecided=" << counts["undecided"] << "\n";
        for (const auto& r : t["results"])
          if (r.value("status", "") == "fail")
            std::cout << "  FAIL " << r.value("instance", "?") << ": " << r["detail"].dump()
                      << "\n";
      }
      std::cout << "summary: " << rep["summary"].dump() << "\n";
    }
    return any_fail ? 1 : 0;
  }

  if (c_cat->parsed()) {
    char* out = nullptr;
    if (ol_catalog_list(&out) != OL_OK) die_parse("catalog failed");
    Json list = Json::parse(take(out));
    if (!arg_export.empty()) {
      for (const auto& e : list) {
        std::string name = e.value("name", "");
        ol_instance* inst = nullptr;
        if (ol_catalog_instance(name.c_str(), &inst) != OL_OK)
          die_parse("catalog load " + name);
        char* doc = nullptr;
        if (ol_instance_to_json(inst, &doc) != OL_OK) die_parse("serialize " + name);
        std::ofstream f(arg_export + "/" + name + ".json");
        f << Json::parse(take(doc)).dump(2) << "\n";
        ol_instance_free(inst);
      }
      std::cout << "wrote " << list.size() << " instance files to " << arg_export << "\n";
      return 0;
    }
    if (!arg_name.empty()) {
      for (const auto& e : list)
        if (e.value("name", "") == arg_name) {
          print_json(e);
          return 0;
        }
      die_parse("no catalog entry named " + arg_name);
    }
    if (g_format == "json") {
      print_json(list);
    } else {
      for (const auto& e : list)
        std::cout << e.value("name", "?") << "  [" << e.value("backend", "?") << "]  "
                  << e.value("construction", "") << "\n";
    }
    return 0;
  }

  return 0;
}
