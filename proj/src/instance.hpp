#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "elem.hpp"
#include "vecmono.hpp"
#include "verdict.hpp"

namespace orderlab {

enum class BackendKind {
  Finite,
  Vector,
  CuZ,
  QPlus,
  DirectSum,
  PrincipalIdeal,
  Quotient,
  AuCone,      // derived: au-hull semigroup over a parent's Grothendieck group
  MTensorOne,  // derived: carrier of the parent with the tensor-unit order
};

enum class OrderMode { Algebraic, Coordinatewise, Linear };
enum class ConeKind { GrPlus, GrPlusPlus, AuGrPlus, AuGrPlusPlus };

const char* backend_str(BackendKind k);
const char* cone_str(ConeKind k);

struct Instance;
using InstPtr = std::shared_ptr<const Instance>;

/// An executable positively ordered semigroup. Immutable after
/// construction; all operations are pure functions of (instance, arguments,
/// budget).
struct Instance : std::enable_shared_from_this<Instance> {
  BackendKind kind;
  std::string label;
  Budget defaults;
  unsigned long long uid = next_uid();  // stable cache key, never reused

  static unsigned long long next_uid();

  // Finite
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;  // addition, full square table
  std::vector<std::vector<char>> ord;   // reflexive-transitive order

  // Vector
  int dim = 0;
  OrderMode mode = OrderMode::Algebraic;
  std::vector<VecZ> gens;
  std::vector<Quad> weights;  // Linear mode: value of each coordinate
  VecMono mono;               // membership analysis

  // composite
  InstPtr left, right;   // DirectSum
  InstPtr parent;        // PrincipalIdeal / Quotient / AuCone / MTensorOne
  Elem pgen;             // PrincipalIdeal generator
  InstPtr ideal;         // Quotient
  ConeKind cone = ConeKind::AuGrPlusPlus;  // AuCone base cone

  // --- factories (validate and precompute) ---
  static InstPtr finite(std::vector<std::string> names, std::vector<std::vector<int>> table,
                        std::vector<std::pair<int, int>> order_pairs, std::string label = "");
  static InstPtr vector_backend(int dim, std::vector<VecZ> gens, OrderMode mode,
                                std::vector<Quad> weights = {}, std::string label = "");
  static InstPtr cuz();
  static InstPtr qplus();
  static InstPtr direct_sum(InstPtr a, InstPtr b);
  static InstPtr principal_ideal(InstPtr parent, Elem gen);
  /// Quotient by an order ideal; for Finite parents the quotient is
  /// materialized as a Finite instance (classes merged after
  /// antisymmetrization).
  static InstPtr quotient(InstPtr parent, InstPtr ideal, const Budget& b);
  static InstPtr au_cone(InstPtr parent, ConeKind base, std::string label = "");
  static InstPtr m_tensor_one(InstPtr parent);

  /// value of a Vector element under the Linear weights
  Quad value_of(const VecZ& v) const;
};

inline InstPtr self(const Instance& M) { return M.shared_from_this(); }

// ---- element JSON ----
Elem parse_elem(const Instance& M, const Json& j);
Json elem_json(const Instance& M, const Elem& e);
std::string elem_str(const Instance& M, const Elem& e);

// ---- instance JSON (the instance-file schema) ----
InstPtr parse_instance(const Json& j);
InstPtr parse_instance_text(const std::string& text);
Json instance_json(const Instance& M);

}  // namespace orderlab
