#pragma once

#include "grothendieck.hpp"

namespace orderlab {

/// one basis term x (.) t of the free semigroup on M^x Z^x
struct Term {
  Elem x;
  CuzVal t;
};

/// multiset of terms; zero components are never stored
struct FormalSum {
  std::vector<Term> terms;

  static FormalSum of(const Instance& M, std::vector<Term> ts);
  bool empty() const { return terms.empty(); }
};

FormalSum canonical(const Instance& M, const FormalSum& f);
bool fs_equal(const Instance& M, const FormalSum& f, const FormalSum& g);
Json fs_json(const Instance& M, const FormalSum& f);
FormalSum fs_parse(const Instance& M, const Json& j);

/// bounded search for a rewrite chain proving f <= g; Yes or Unknown only.
/// The certificate is a sequence of order links (LeqPrime) and congruence
/// rewrites (Split / Merge, binary); chain_depth bounds the order links.
Verdict oracle_leq(const Instance& M, const FormalSum& f, const FormalSum& g, const Budget& b);

/// step-by-step validation of a chain certificate
bool replay_chain(const Instance& M, const FormalSum& f, const FormalSum& g, const Json& cert,
                  const Budget& b, std::string* why = nullptr);

/// the order of M (.) 1 inside M (.) Z, decided by the rung ladder:
/// (1) leq / <_s, (2) not <=_p, (3) simple-or-refinement characterization,
/// (4) chain oracle
Verdict unit_leq(const Instance& M, const Elem& x, const Elem& y, const Budget& b);

InstPtr m_tensor_one(InstPtr M);

/// order-embedding test of M into M (.) 1 plus the order-cancellativity /
/// separativity / near-unperforation equivalence suite, on sample boxes
Json embedding_report(const Instance& M, const Budget& b);
Json prop57_report(const Instance& M, const Budget& b);

/// sampled isomorphism between the au hull of M and the strict-difference
/// cone of Gr(M (.) 1)
Json gr_plusplus_iso(InstPtr M, const Budget& b);

/// compact interpolation: n and y with x(.)s <= n y(.)1 <= x(.)t
Json interpolate_compact(const Instance& M, const Elem& x, const Rat& s, const Rat& t,
                         const Budget& b);

/// is f equal to some x (.) 1?
Verdict compact_test(const Instance& M, const FormalSum& f, const Budget& b);

}  // namespace orderlab
