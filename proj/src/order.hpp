#pragma once

#include "instance.hpp"

namespace orderlab {

/// shape-level element guard; throws BackendMismatch
void require_element(const Instance& M, const Elem& e);

Elem zero(const Instance& M);
Elem add(const Instance& M, const Elem& x, const Elem& y);
Elem mul(const Instance& M, long long n, const Elem& x);

/// instance equality; three-valued only where deciding it needs a bounded
/// search (Quotient over an infinite parent, MTensorOne)
Tri eq(const Instance& M, const Elem& x, const Elem& y, const Budget& b);

Verdict leq(const Instance& M, const Elem& x, const Elem& y, const Budget& b);

/// Vector-backend membership of an arbitrary integer vector
Verdict contains_vec(const Instance& M, const VecZ& v, const Budget& b);

/// z with x + z == y, when the backend can solve it exactly
struct Solve {
  Tri status = Tri::Unknown;  // Yes: z valid; No: provably none; Unknown
  Elem z;
};
Solve solve_add(const Instance& M, const Elem& x, const Elem& y, const Budget& b);

/// deterministic element samples (generation-ordered; see backend notes)
std::vector<Elem> samples(const Instance& M, const Budget& b);
std::vector<Elem> samples_box(const Instance& M, int box, size_t cap = 400);

/// membership in a PrincipalIdeal viewed as a subset of its parent
Verdict ideal_member(const Instance& I, const Elem& x, const Budget& b);
std::vector<Elem> ideal_samples(const Instance& I, const Budget& b);

// ---- cross-module hooks (resolved at link time) ----

/// order of M ⊗ 1 inside M ⊗ Z (tensorz module)
Verdict unit_leq(const Instance& M, const Elem& x, const Elem& y, const Budget& b);

/// derived AuCone semigroup operations (grothendieck module)
Verdict aucone_leq(const Instance& au, const Elem& g, const Elem& h, const Budget& b);
Elem aucone_add(const Instance& au, const Elem& g, const Elem& h);
Elem aucone_zero(const Instance& au);
Elem aucone_scale(const Instance& au, long long n, const Elem& g);
std::vector<Elem> aucone_samples(const Instance& au, const Budget& b);
bool aucone_elem_ok(const Instance& au, const Elem& g);

}  // namespace orderlab
