#pragma once

#include "relations.hpp"

namespace orderlab {

/// group completion descriptor
struct GroupDesc {
  enum class Kind { Lattice, FiniteAb, Rationals, Product, Trivial, Unknown } kind =
      Kind::Unknown;
  int rank = 0;
  std::vector<long long> invariants;  // torsion invariant factors, descending
  std::shared_ptr<GroupDesc> left, right;
  Json to_json() const;
};

/// formal difference iota(pos) - iota(neg)
struct GrElement {
  Elem pos, neg;
};

GroupDesc gr_group(const Instance& M);

/// canonical Grothendieck-carrier values (Elem-shaped per backend: integer
/// vector / kernel element index / rational / pair)
Elem gr_iota(const Instance& M, const Elem& x);
Elem gr_zero(const Instance& M);
Elem gr_add(const Instance& M, const Elem& g, const Elem& h);
Elem gr_neg(const Instance& M, const Elem& g);
Elem gr_scale(const Instance& M, long long n, const Elem& g);
Elem gr_sub(const Instance& M, const Elem& g, const Elem& h);
bool gr_eq(const Instance& M, const Elem& g, const Elem& h);
Elem gr_canonical(const Instance& M, const GrElement& g);
Json gr_json(const Instance& M, const Elem& g);
Elem gr_parse(const Instance& M, const Json& j);

/// cone membership over Gr(M); No certificates are exact per backend
Verdict cone_member(const Instance& M, ConeKind cone, const Elem& g, const Budget& b);

/// the almost-unperforated hull as a semigroup instance (AuCone backend);
/// base cone is Au(Gr+) for algebraically ordered M, else Au(Gr++)
InstPtr au_semigroup(InstPtr M, const Budget& b);
Elem au_iota(const Instance& au, const Elem& x);

/// sampled canonical elements of Gr(M)
std::vector<Elem> gr_samples(const Instance& M, const Budget& b);

struct GenMap {
  std::vector<std::pair<Elem, Elem>> pairs;  // (generator of M, image in N)
};

/// extends f additively from generators and factors it through the au hull;
/// verifies the factorization and cross-checks two construction routes
Json universal_factorization(InstPtr M, InstPtr N, const GenMap& f, const Budget& b);

/// induced map between au hulls, with the commuting square sampled
Json functorial_au(InstPtr M, InstPtr N, const GenMap& f, const Budget& b);

/// the projection-semigroup model after tensoring with the Jiang-Su algebra:
/// au hull plus transferred-property verdicts
Json z_stabilized(InstPtr M, const Budget& b, InstPtr* result = nullptr);

/// extend f from generators to an arbitrary monoid element (exact)
std::optional<Elem> apply_gen_map(const Instance& M, const Instance& N, const GenMap& f,
                                  const Elem& x, const Budget& b);

}  // namespace orderlab
