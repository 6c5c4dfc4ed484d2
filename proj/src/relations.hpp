#pragma once

#include <optional>

#include "nset.hpp"

namespace orderlab {

enum class PropertyId {
  Finiteness,
  StrongFiniteness,
  Preminimal,
  Separative,
  OrderSeparative,
  NearlySeparative,
  Cancellative,
  OrderCancellative,
  CancellationIntoIdeals,
  OrderCancellationIntoIdeals,
  StrongOrderCancellationIntoIdeals,
  Refinement,
  AlmostDivisible,
  WeaklyDivisible,
  AlmostUnperforated,
  NearlyUnperforated,
  AlgebraicallyOrdered,
  Simple,
};

const char* property_str(PropertyId p);
std::optional<PropertyId> property_from_str(const std::string& s);
const std::vector<PropertyId>& all_properties();

/// x <_s y : (n+1)x <= ny for some n
Verdict rel_s(const Instance& M, const Elem& x, const Elem& y, const Budget& b);
/// x <=_p y : nx <= ny and (n+1)x <= (n+1)y for some n
Verdict rel_p(const Instance& M, const Elem& x, const Elem& y, const Budget& b);
/// x <=_d y : x = x1+x2, y = y1+y2 with x1 <= y1 and x2 <_s y2
Verdict rel_d(const Instance& M, const Elem& x, const Elem& y, const Budget& b);
/// x <=_s y : x <= y or x <_s y
Verdict rel_s_or_leq(const Instance& M, const Elem& x, const Elem& y, const Budget& b);

Verdict check_property(const Instance& M, PropertyId p, const Budget& b);

/// decompositions x = z + w
struct Decomps {
  std::vector<std::pair<Elem, Elem>> parts;
  bool complete = false;
};
Decomps decompositions(const Instance& M, const Elem& x, const Budget& b);

/// PropertyId -> verdict map with stable key order
Json property_report(const Instance& M, const Budget& b);

/// evaluates the registered implications; statuses pass|fail|vacuous|undecided
Json implication_suite(const Instance& M, const Budget& b);
bool implication_suite_has_failure(const Json& suite);

}  // namespace orderlab
