#pragma once

#include <optional>

#include "numeric.hpp"
#include "verdict.hpp"

namespace orderlab {

/// Static analysis of a generated submonoid of Z^d, computed once per
/// Vector instance. Functionals are integer covectors nonnegative on every
/// generator; a strictly positive one bounds all membership searches and
/// makes No certificates exact.
struct VecMono {
  int dim = 0;
  std::vector<VecZ> gens;

  std::optional<VecZ> positive_functional;  // phi(g) > 0 for every generator
  std::vector<VecZ> nonneg_functionals;     // phi(g) >= 0 for every generator
  bool std_unit_gens = false;               // generators are exactly the unit vectors

  // dim-1 data: the monoid is d * S' for a numerical semigroup S'
  bool dim1 = false;
  long long d1_gcd = 1;
  long long d1_conductor = 0;    // least c with [c,inf) subset of S'
  std::vector<char> d1_member;   // membership of S' on [0, conductor + max gen)

  /// v in the monoid? Yes carries the multiplicity combination; No carries
  /// either a separating functional or a completed-search record.
  Verdict contains(const VecZ& v, const Budget& b) const;

  /// all monoid elements with multiplicities <= box, deduplicated,
  /// sorted by (L1 norm, lex)
  std::vector<VecZ> enumerate(int box, size_t cap = 4096) const;

  static VecMono analyze(int dim, std::vector<VecZ> gens);
};

}  // namespace orderlab
