#pragma once

#include <memory>
#include <variant>

#include "cuz.hpp"
#include "numeric.hpp"

namespace orderlab {

/// A backend-tagged element value. Composite backends (DirectSum) box a
/// pair; PrincipalIdeal/Quotient/MTensorOne elements reuse the parent
/// payload; AuCone elements are canonical Grothendieck representatives
/// (vector / kernel index / rational, possibly "negative").
struct Elem {
  struct Pair;
  using PairPtr = std::shared_ptr<const Pair>;
  using Payload = std::variant<int, VecZ, CuzVal, Rat, PairPtr>;

  Payload v;

  Elem() : v(0) {}
  explicit Elem(int idx) : v(idx) {}
  explicit Elem(VecZ vec) : v(std::move(vec)) {}
  explicit Elem(CuzVal z) : v(std::move(z)) {}
  explicit Elem(Rat q) : v(std::move(q)) {}
  static Elem pair(Elem a, Elem b);

  bool is_index() const { return std::holds_alternative<int>(v); }
  bool is_vec() const { return std::holds_alternative<VecZ>(v); }
  bool is_cuz() const { return std::holds_alternative<CuzVal>(v); }
  bool is_rat() const { return std::holds_alternative<Rat>(v); }
  bool is_pair() const { return std::holds_alternative<PairPtr>(v); }

  int index() const { return std::get<int>(v); }
  const VecZ& vec() const { return std::get<VecZ>(v); }
  const CuzVal& cuz() const { return std::get<CuzVal>(v); }
  const Rat& rat() const { return std::get<Rat>(v); }
  const Pair& as_pair() const;
};

struct Elem::Pair {
  Elem first, second;
};

inline Elem Elem::pair(Elem a, Elem b) {
  Elem e;
  e.v = std::make_shared<const Pair>(Pair{std::move(a), std::move(b)});
  return e;
}

inline const Elem::Pair& Elem::as_pair() const { return *std::get<PairPtr>(v); }

/// structural comparison (total order for canonical sorting); elements of
/// different payload kinds never arise within one instance.
int elem_cmp(const Elem& a, const Elem& b);
inline bool elem_eq_syntactic(const Elem& a, const Elem& b) { return elem_cmp(a, b) == 0; }

}  // namespace orderlab
