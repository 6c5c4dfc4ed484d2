#include "catalog.hpp"

#include <mutex>

namespace orderlab {

namespace {

CatalogEntry curated(const std::string& name, const std::string& construction,
                     const std::string& json_text,
                     std::map<std::string, std::string> expected) {
  CatalogEntry e;
  e.name = name;
  e.construction = construction;
  e.instance = Json::parse(json_text);
  e.expected = std::move(expected);
  return e;
}

std::vector<CatalogEntry> curated_entries() {
  std::vector<CatalogEntry> v;

  v.push_back(curated(
      "nat", "the free monoid on one generator with its algebraic order",
      R"({"backend":"vector","name":"nat","dim":1,"generators":[[1]],"order_mode":"algebraic"})",
      {{"cancellative", "yes"},
       {"algebraically-ordered", "yes"},
       {"almost-unperforated", "yes"},
       {"nearly-unperforated", "yes"},
       {"refinement", "yes"},
       {"almost-divisible", "no"},
       {"weakly-divisible", "no"},
       {"simple", "yes"}}));

  v.push_back(curated(
      "nsquare", "the free monoid on two generators with its algebraic order",
      R"({"backend":"vector","name":"nsquare","dim":2,"generators":[[1,0],[0,1]],"order_mode":"algebraic"})",
      {{"cancellative", "yes"},
       {"algebraically-ordered", "yes"},
       {"almost-unperforated", "yes"},
       {"nearly-unperforated", "yes"},
       {"refinement", "yes"},
       {"almost-divisible", "no"},
       {"simple", "no"}}));

  v.push_back(curated(
      "n23", "the numerical semigroup generated by 2 and 3, algebraically ordered",
      R"({"backend":"vector","name":"n23","dim":1,"generators":[[2],[3]],"order_mode":"algebraic"})",
      {{"cancellative", "yes"},
       {"algebraically-ordered", "yes"},
       {"almost-unperforated", "no"},
       {"nearly-unperforated", "no"},
       {"refinement", "no"},
       {"almost-divisible", "no"},
       {"simple", "yes"}}));

  v.push_back(curated(
      "cone33",
      "the submonoid of Z^2 generated by (1,0), (0,1) and (3,-3); a strict cone whose "
      "almost-unperforated hull is strictly larger",
      R"({"backend":"vector","name":"cone33","dim":2,"generators":[[1,0],[0,1],[3,-3]],"order_mode":"algebraic"})",
      {{"cancellative", "yes"},
       {"algebraically-ordered", "yes"},
       {"almost-unperforated", "no"}}));

  v.push_back(curated(
      "theta",
      "positive integer combinations of 1 and sqrt(2) inside the reals, ordered by value; "
      "free of rank 2 as a monoid but not algebraically ordered",
      R"({"backend":"vector","name":"theta","dim":2,"generators":[[1,0],[0,1]],"order_mode":"linear",)"
      R"("weights":[{"a":"1","b":"0"},{"a":"0","b":"1"}]})",
      {{"cancellative", "yes"},
       {"order-cancellative", "yes"},
       {"algebraically-ordered", "no"},
       {"almost-unperforated", "yes"},
       {"nearly-unperforated", "yes"},
       {"simple", "yes"}}));

  v.push_back(curated(
      "ex54",
      "the direct sum of the numerical semigroup <2,3> and the natural numbers; the "
      "smallest exact model of a simple summand that is cancellative but not almost "
      "unperforated",
      R"({"backend":"direct_sum","name":"ex54",)"
      R"("left":{"backend":"vector","dim":1,"generators":[[2],[3]],"order_mode":"algebraic"},)"
      R"("right":{"backend":"vector","dim":1,"generators":[[1]],"order_mode":"algebraic"}})",
      {{"cancellative", "yes"},
       {"algebraically-ordered", "yes"},
       {"almost-unperforated", "no"},
       {"simple", "no"}}));

  v.push_back(curated(
      "cuz",
      "the Cuntz semigroup of the Jiang-Su algebra: compacts N0 next to the soft "
      "interval (0,inf]",
      R"({"backend":"cuz","name":"cuz"})",
      {{"preminimal", "no"},
       {"almost-unperforated", "yes"},
       {"nearly-unperforated", "yes"},
       {"almost-divisible", "yes"},
       {"cancellative", "no"},
       {"algebraically-ordered", "no"},
       {"finiteness", "no"},
       {"strong-finiteness", "no"},
       {"cancellation-into-ideals", "no"}}));

  v.push_back(curated(
      "qplus", "the nonnegative rationals under addition with the natural order",
      R"({"backend":"qplus","name":"qplus"})",
      {{"preminimal", "yes"},
       {"separative", "yes"},
       {"cancellative", "yes"},
       {"order-cancellative", "yes"},
       {"algebraically-ordered", "yes"},
       {"almost-divisible", "yes"},
       {"weakly-divisible", "yes"},
       {"almost-unperforated", "yes"},
       {"nearly-unperforated", "yes"},
       {"refinement", "yes"},
       {"simple", "yes"}}));

  v.push_back(curated(
      "zero-t", "the two-element semilattice: one absorbing element above zero",
      R"({"backend":"finite","name":"zero-t","elements":["0","T"],)"
      R"("addition":[["0","T"],["T","T"]],"order":[["0","T"]]})",
      {{"finiteness", "no"},
       {"separative", "yes"},
       {"cancellative", "no"},
       {"almost-divisible", "yes"},
       {"weakly-divisible", "yes"},
       {"almost-unperforated", "yes"},
       {"nearly-unperforated", "yes"},
       {"algebraically-ordered", "yes"},
       {"refinement", "yes"},
       {"simple", "yes"}}));

  v.push_back(curated(
      "truncation3", "counting truncated at two: 1+1 collapses to the absorbing top",
      R"({"backend":"finite","name":"truncation3","elements":["0","1","T"],)"
      R"("addition":[["0","1","T"],["1","T","T"],["T","T","T"]],)"
      R"("order":[["0","1"],["1","T"]]})",
      {{"finiteness", "no"},
       {"separative", "no"},
       {"cancellative", "no"},
       {"almost-unperforated", "yes"},
       {"algebraically-ordered", "yes"}}));

  v.push_back(curated(
      "chain4", "counting truncated at three",
      R"({"backend":"finite","name":"chain4","elements":["0","1","2","T"],)"
      R"("addition":[["0","1","2","T"],["1","2","T","T"],["2","T","T","T"],["T","T","T","T"]],)"
      R"("order":[["0","1"],["1","2"],["2","T"]]})",
      {{"finiteness", "no"}, {"separative", "no"}, {"algebraically-ordered", "yes"}}));

  v.push_back(curated(
      "diamond4",
      "the four-element semilattice with two incomparable idempotents under a common top",
      R"({"backend":"finite","name":"diamond4","elements":["0","a","b","T"],)"
      R"("addition":[["0","a","b","T"],["a","a","T","T"],["b","T","b","T"],["T","T","T","T"]],)"
      R"("order":[["0","a"],["0","b"],["a","T"],["b","T"]]})",
      {{"finiteness", "no"},
       {"separative", "yes"},
       {"almost-unperforated", "yes"},
       {"algebraically-ordered", "yes"}}));

  v.push_back(curated(
      "quot-demo", "the plane monoid modulo the ideal generated by the first axis",
      R"({"backend":"quotient","name":"quot-demo",)"
      R"("parent":{"backend":"vector","dim":2,"generators":[[1,0],[0,1]],"order_mode":"algebraic"},)"
      R"("ideal_generator":[1,0]})",
      {}));

  return v;
}

/// every commutative, conical, positively orderable monoid on <= 3 elements,
/// with every admissible order (validation inside the factory filters the
/// rest)
std::vector<CatalogEntry> enumerated_entries() {
  std::vector<CatalogEntry> out;
  {
    // order 2: the only conical table is the semilattice; counting appears
    // as a quotient shape only at order >= 3, and {0,a} with a+a=0 is not
    // conical
    for (int aa = 0; aa <= 1; ++aa) {
      std::vector<std::vector<int>> t = {{0, 1}, {1, aa}};
      std::vector<std::pair<int, int>> ord = {{0, 1}};
      try {
        auto M = Instance::finite({"0", "a"}, t, ord, "m2-" + std::to_string(aa));
        CatalogEntry e;
        e.name = "m2-" + std::to_string(aa);
        e.construction = "enumerated commutative monoid of order 2";
        e.instance = instance_json(*M);
        out.push_back(std::move(e));
      } catch (const Error&) {
      }
    }
  }
  for (int aa = 0; aa < 3; ++aa)
    for (int ab = 0; ab < 3; ++ab)
      for (int bb = 0; bb < 3; ++bb) {
        std::vector<std::vector<int>> t = {{0, 1, 2}, {1, aa, ab}, {2, ab, bb}};
        // candidate extra order pairs among the nonzero elements
        const std::vector<std::vector<std::pair<int, int>>> orders = {
            {}, {{1, 2}}, {{2, 1}}};
        for (size_t oi = 0; oi < orders.size(); ++oi) {
          std::string name =
              "m3-" + std::to_string(aa * 9 + ab * 3 + bb) + "o" + std::to_string(oi);
          try {
            auto M = Instance::finite({"0", "a", "b"}, t, orders[oi], name);
            CatalogEntry e;
            e.name = name;
            e.construction = "enumerated commutative monoid of order 3";
            e.instance = instance_json(*M);
            out.push_back(std::move(e));
          } catch (const Error&) {
          }
        }
      }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v = curated_entries();
    for (auto& e : enumerated_entries()) v.push_back(std::move(e));
    return v;
  }();
  return entries;
}

const CatalogEntry* catalog_find(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

InstPtr catalog_instance(const std::string& name) {
  const CatalogEntry* e = catalog_find(name);
  if (!e) fail(Err::BadArgument, "unknown catalog instance: " + name);
  return parse_instance(e->instance);
}

Json catalog_listing() {
  Json out = Json::array();
  for (const auto& e : catalog()) {
    Json j;
    j["name"] = e.name;
    j["construction"] = e.construction;
    j["backend"] = e.instance.value("backend", "");
    if (!e.expected.empty()) {
      Json exp;
      for (const auto& [k, val] : e.expected) exp[k] = val;
      j["expected"] = exp;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace orderlab
