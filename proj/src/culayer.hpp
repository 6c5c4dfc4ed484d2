#pragma once

#include "tensorz.hpp"

namespace orderlab {

/// An algebraic Cu-semigroup presented by its compact layer: the completion
/// adds suprema of increasing compact sequences, so every question here is
/// answered through finitely described sequences over S_c.
struct AlgebraicCu {
  InstPtr compacts;
  std::string label;
};

/// finitely described increasing sequence of compacts
struct CuElem {
  std::vector<Elem> prefix;
  enum class Tail { Constant, RepeatLastPlusDelta, FormalSup } tail = Tail::Constant;
  Elem delta;  // RepeatLastPlusDelta only
};

enum class CuAxiom { O5, O6, WeakCancellation, AlmostDivisible };
const char* cu_axiom_str(CuAxiom a);
std::optional<CuAxiom> cu_axiom_from_str(const std::string& s);

AlgebraicCu make_cu(InstPtr compacts);

CuElem cu_parse_elem(const Instance& Sc, const Json& j);
Json cu_elem_json(const Instance& Sc, const CuElem& u);

/// the k-th term of the described sequence
Elem cu_term(const Instance& Sc, const CuElem& u, int k);

/// u <= v iff every term of u sits below some term of v; depth-bounded
Verdict cu_leq(const AlgebraicCu& S, const CuElem& u, const CuElem& v, int depth,
               const Budget& b);

/// compact-level reductions of the completion axioms
Verdict satisfies_axiom(const AlgebraicCu& S, CuAxiom which, const Budget& b);

/// x(.)1 <= y(.)1 at the Cu level via successive-power comparison of the
/// prefix compacts; needs the full hypothesis bundle on S_c
Verdict cu_unit_leq(const AlgebraicCu& S, const CuElem& u, const CuElem& v, const Budget& b);

/// the compact subsemigroup of S (x)_Cu Z
InstPtr tensor_compacts(const AlgebraicCu& S, const Budget& b);

/// the four-condition chain for unperforation of the tensor product
Json thm65_chain(const AlgebraicCu& S, const Budget& b);

}  // namespace orderlab
