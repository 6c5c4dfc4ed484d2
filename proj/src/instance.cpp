#include "instance.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>

#include "order.hpp"

namespace orderlab {

unsigned long long Instance::next_uid() {
  static std::atomic<unsigned long long> counter{1};
  return counter.fetch_add(1);
}

const char* backend_str(BackendKind k) {
  switch (k) {
    case BackendKind::Finite: return "finite";
    case BackendKind::Vector: return "vector";
    case BackendKind::CuZ: return "cuz";
    case BackendKind::QPlus: return "qplus";
    case BackendKind::DirectSum: return "direct_sum";
    case BackendKind::PrincipalIdeal: return "principal_ideal";
    case BackendKind::Quotient: return "quotient";
    case BackendKind::AuCone: return "au_cone";
    case BackendKind::MTensorOne: return "m_tensor_one";
  }
  return "?";
}

const char* cone_str(ConeKind k) {
  switch (k) {
    case ConeKind::GrPlus: return "gr_plus";
    case ConeKind::GrPlusPlus: return "gr_plusplus";
    case ConeKind::AuGrPlus: return "au_gr_plus";
    case ConeKind::AuGrPlusPlus: return "au_gr_plusplus";
  }
  return "?";
}

Quad Instance::value_of(const VecZ& v) const {
  Quad s = Quad::of_int(0);
  for (int j = 0; j < dim; ++j) s = s + weights[j].scaled(Rat(v[j]));
  return s;
}

// ---------------------------------------------------------------- Finite

InstPtr Instance::finite(std::vector<std::string> names, std::vector<std::vector<int>> table,
                         std::vector<std::pair<int, int>> order_pairs, std::string label) {
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::Finite;
  M->label = std::move(label);
  const int n = (int)names.size();
  if (n == 0) fail(Err::Parse, "finite backend needs at least the neutral element");
  if ((int)table.size() != n) fail(Err::Parse, "addition table must be square of size |elements|");
  for (auto& row : table)
    if ((int)row.size() != n) fail(Err::Parse, "addition table must be square");

  // neutral element is index 0
  for (int j = 0; j < n; ++j)
    if (table[0][j] != j || table[j][0] != j)
      fail(Err::Parse, "element 0 must be neutral", Json{{"at", names[j]}});
  // commutativity + associativity, exhaustively
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (table[i][j] != table[j][i])
        fail(Err::Parse, "addition not commutative", Json{{"x", names[i]}, {"y", names[j]}});
      if (table[i][j] < 0 || table[i][j] >= n) fail(Err::Parse, "table entry out of range");
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          fail(Err::Parse, "addition not associative",
               Json{{"x", names[i]}, {"y", names[j]}, {"z", names[k]}});
  // conicality
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (table[i][j] == 0 && (i != 0 || j != 0))
        fail(Err::Parse, "not conical: x+y=0 with (x,y) != (0,0)",
             Json{{"x", names[i]}, {"y", names[j]}});

  // order: reflexive-transitive closure of the given pairs, then axioms
  std::vector<std::vector<char>> ord(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) ord[i][i] = 1;
  for (int i = 0; i < n; ++i) ord[0][i] = 1;  // 0 <= x
  for (auto& [a, b] : order_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) fail(Err::Parse, "order pair out of range");
    ord[a][b] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (ord[i][k] && ord[k][j]) ord[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && ord[i][j] && ord[j][i])
        fail(Err::Parse, "order not antisymmetric", Json{{"x", names[i]}, {"y", names[j]}});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (ord[i][j])
        for (int k = 0; k < n; ++k)
          if (!ord[table[i][k]][table[j][k]])
            fail(Err::Parse, "order not translation invariant",
                 Json{{"x", names[i]}, {"y", names[j]}, {"z", names[k]}});

  M->names = std::move(names);
  M->table = std::move(table);
  M->ord = std::move(ord);
  return M;
}

// ---------------------------------------------------------------- Vector

InstPtr Instance::vector_backend(int dim, std::vector<VecZ> gens, OrderMode mode,
                                 std::vector<Quad> weights, std::string label) {
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::Vector;
  M->label = std::move(label);
  if (dim <= 0) fail(Err::Parse, "vector backend needs positive dim");
  for (auto& g : gens)
    if ((int)g.size() != dim) fail(Err::Parse, "generator length != dim");
  M->dim = dim;
  M->mode = mode;
  M->gens = gens;
  M->mono = VecMono::analyze(dim, gens);

  if (mode == OrderMode::Linear) {
    if ((int)weights.size() != dim) fail(Err::Parse, "linear order needs one weight per coordinate");
    M->weights = std::move(weights);
    for (const auto& g : M->mono.gens) {
      int s = M->value_of(g).sign();
      if (s < 0) fail(Err::Parse, "linear order: generator with negative value");
      if (s == 0) fail(Err::Parse, "linear order: nonzero generator with zero value");
    }
    // antisymmetry needs value-injectivity; check a small enumeration
    auto sample = M->mono.enumerate(3, 256);
    for (size_t i = 0; i < sample.size(); ++i)
      for (size_t j = i + 1; j < sample.size(); ++j)
        if ((M->value_of(sample[i]) - M->value_of(sample[j])).sign() == 0)
          fail(Err::Parse, "linear order not antisymmetric: two elements share a value");
  } else if (mode == OrderMode::Coordinatewise) {
    for (const auto& g : M->mono.gens)
      for (long long c : g)
        if (c < 0) fail(Err::Parse, "coordinatewise order needs nonnegative generators");
  } else {
    // algebraic order: antisymmetry means no nonzero v with v and -v members
    auto sample = M->mono.enumerate(3, 128);
    Budget small;
    for (const auto& v : sample) {
      if (vec_is_zero(v)) continue;
      VecZ neg = vec_scale(-1, v);
      if (M->mono.contains(neg, small).is_yes())
        fail(Err::Parse, "algebraic order not antisymmetric: v and -v both belong");
    }
  }
  return M;
}

InstPtr Instance::cuz() {
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::CuZ;
  M->label = "Z";
  return M;
}

InstPtr Instance::qplus() {
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::QPlus;
  M->label = "Q+";
  return M;
}

InstPtr Instance::direct_sum(InstPtr a, InstPtr b) {
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::DirectSum;
  M->label = a->label + "+" + b->label;
  M->left = std::move(a);
  M->right = std::move(b);
  return M;
}

InstPtr Instance::principal_ideal(InstPtr parent, Elem gen) {
  require_element(*parent, gen);
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::PrincipalIdeal;
  M->label = "I(" + elem_str(*parent, gen) + ")";
  M->parent = std::move(parent);
  M->pgen = std::move(gen);
  return M;
}

namespace {

/// exact member set of a principal ideal inside a Finite parent
std::vector<char> finite_ideal_members(const Instance& P, const Elem& gen) {
  const int n = (int)P.names.size();
  std::vector<char> in(n, 0);
  // multiples of gen cycle; collect downward closures along the cycle
  int g = gen.index();
  int cur = 0;
  std::set<int> seen;
  while (!seen.count(cur)) {
    seen.insert(cur);
    cur = P.table[cur][g];
    for (int y = 0; y < n; ++y)
      if (P.ord[y][cur]) in[y] = 1;
  }
  in[0] = 1;
  return in;
}

}  // namespace

InstPtr Instance::quotient(InstPtr parent, InstPtr ideal, const Budget& b) {
  if (ideal->kind != BackendKind::PrincipalIdeal || ideal->parent.get() != parent.get())
    fail(Err::BadArgument, "quotient expects a principal ideal of the same parent");

  if (parent->kind == BackendKind::Finite) {
    // materialize: exact congruence, then antisymmetrized order
    const Instance& P = *parent;
    const int n = (int)P.names.size();
    std::vector<char> in = finite_ideal_members(P, ideal->pgen);
    // congruence x ~ y iff x+v = y+w for ideal members v,w
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = i;
    std::function<int(int)> find = [&](int x) { return cls[x] == x ? x : cls[x] = find(cls[x]); };
    auto unite = [&](int x, int y) { cls[find(x)] = find(y); };
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int v = 0; v < n; ++v) {
          if (!in[v]) continue;
          for (int w = 0; w < n; ++w)
            if (in[w] && P.table[x][v] == P.table[y][w]) unite(x, y);
        }
    // class preorder: [x] <= [y] iff x <= y+v for some ideal member v
    auto cls_leq = [&](int x, int y) {
      for (int v = 0; v < n; ++v)
        if (in[v] && P.ord[x][P.table[y][v]]) return true;
      return false;
    };
    // antisymmetrize: merge mutually comparable classes
    bool merged = true;
    while (merged) {
      merged = false;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (find(x) != find(y) && cls_leq(x, y) && cls_leq(y, x)) {
            unite(x, y);
            merged = true;
          }
    }
    // class of 0 first, remaining classes in element order
    std::vector<int> reps{find(0)};
    std::map<int, int> index_of{{find(0), 0}};
    for (int i = 0; i < n; ++i)
      if (find(i) == i && i != find(0)) {
        index_of[i] = (int)reps.size();
        reps.push_back(i);
      }
    const int m = (int)reps.size();
    std::vector<std::string> qnames(m);
    std::vector<std::vector<int>> qtable(m, std::vector<int>(m));
    std::vector<std::pair<int, int>> qorder;
    for (int i = 0; i < m; ++i) qnames[i] = "[" + P.names[reps[i]] + "]";
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        qtable[i][j] = index_of[find(P.table[reps[i]][reps[j]])];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (cls_leq(reps[i], reps[j])) qorder.push_back({i, j});
    return finite(qnames, qtable, qorder, parent->label + "/" + ideal->label);
  }

  // lazy quotient over an infinite parent: sampled ideal axioms
  {
    Budget sb = b;
    auto ideal_elems = ideal_samples(*ideal, sb);
    auto parent_elems = samples_box(*parent, std::min(3, b.sample_box), 64);
    for (const auto& i : ideal_elems)
      for (const auto& x : parent_elems) {
        Verdict below = leq(*parent, x, i, sb);
        if (below.is_yes() && ideal_member(*ideal, x, sb).is_no())
          fail(Err::NotAnIdeal, "ideal is not downward closed on samples",
               Json{{"element", elem_json(*parent, x)}, {"below", elem_json(*parent, i)}});
      }
  }
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::Quotient;
  M->label = parent->label + "/" + ideal->label;
  M->parent = std::move(parent);
  M->ideal = std::move(ideal);
  return M;
}

InstPtr Instance::au_cone(InstPtr parent, ConeKind base, std::string label) {
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::AuCone;
  M->label = label.empty() ? ("Au(" + parent->label + ")") : std::move(label);
  M->parent = std::move(parent);
  M->cone = base;
  return M;
}

InstPtr Instance::m_tensor_one(InstPtr parent) {
  auto M = std::make_shared<Instance>();
  M->kind = BackendKind::MTensorOne;
  M->label = parent->label + "(x)1";
  M->parent = std::move(parent);
  return M;
}

// ---------------------------------------------------------------- elem JSON

Elem parse_elem(const Instance& M, const Json& j) {
  switch (M.kind) {
    case BackendKind::Finite: {
      if (!j.is_string()) fail(Err::Parse, "finite element literal must be a name string");
      std::string s = j.get<std::string>();
      for (size_t i = 0; i < M.names.size(); ++i)
        if (M.names[i] == s) return Elem((int)i);
      fail(Err::Parse, "unknown element name: " + s);
    }
    case BackendKind::Vector: {
      if (!j.is_array() || (int)j.size() != M.dim)
        fail(Err::Parse, "vector element literal must be an integer array of length dim");
      VecZ v(M.dim);
      for (int i = 0; i < M.dim; ++i) v[i] = j[i].get<long long>();
      return Elem(std::move(v));
    }
    case BackendKind::CuZ: {
      if (!j.is_string()) fail(Err::Parse, "Z element literal must be a string");
      return Elem(parse_cuz(j.get<std::string>()));
    }
    case BackendKind::QPlus: {
      if (!j.is_string()) fail(Err::Parse, "Q+ element literal must be a string \"p/q\"");
      Rat r = parse_rat(j.get<std::string>());
      if (r.sign() < 0) fail(Err::Parse, "Q+ element must be nonnegative");
      return Elem(std::move(r));
    }
    case BackendKind::DirectSum: {
      if (!j.is_array() || j.size() != 2)
        fail(Err::Parse, "direct sum element literal must be a pair");
      return Elem::pair(parse_elem(*M.left, j[0]), parse_elem(*M.right, j[1]));
    }
    case BackendKind::PrincipalIdeal:
    case BackendKind::Quotient:
    case BackendKind::MTensorOne:
      return parse_elem(*M.parent, j);
    case BackendKind::AuCone: {
      const Instance& P = *M.parent;
      if (P.kind == BackendKind::Vector) {
        if (!j.is_array()) fail(Err::Parse, "au-cone element literal must be an integer array");
        VecZ v(P.dim);
        for (int i = 0; i < P.dim; ++i) v[i] = j[i].get<long long>();
        return Elem(std::move(v));
      }
      if (P.kind == BackendKind::QPlus) return Elem(parse_rat(j.get<std::string>()));
      fail(Err::UnsupportedBackend, "au-cone element parsing for this parent");
    }
  }
  fail(Err::Internal, "unreachable");
}

Json elem_json(const Instance& M, const Elem& e) {
  switch (M.kind) {
    case BackendKind::Finite: return M.names.at(e.index());
    case BackendKind::Vector: {
      Json a = Json::array();
      for (long long c : e.vec()) a.push_back(c);
      return a;
    }
    case BackendKind::CuZ: return e.cuz().str();
    case BackendKind::QPlus: return rat_str(e.rat());
    case BackendKind::DirectSum: {
      Json a = Json::array();
      a.push_back(elem_json(*M.left, e.as_pair().first));
      a.push_back(elem_json(*M.right, e.as_pair().second));
      return a;
    }
    case BackendKind::PrincipalIdeal:
    case BackendKind::Quotient:
    case BackendKind::MTensorOne: return elem_json(*M.parent, e);
    case BackendKind::AuCone: {
      const Instance& P = *M.parent;
      if (P.kind == BackendKind::Vector) {
        Json a = Json::array();
        for (long long c : e.vec()) a.push_back(c);
        return a;
      }
      if (P.kind == BackendKind::QPlus) return rat_str(e.rat());
      if (P.kind == BackendKind::Finite) return Json("k" + std::to_string(e.index()));
      return Json("?");
    }
  }
  return Json();
}

std::string elem_str(const Instance& M, const Elem& e) {
  Json j = elem_json(M, e);
  return j.is_string() ? j.get<std::string>() : j.dump();
}

// ---------------------------------------------------------------- instance JSON

namespace {

Quad parse_quad(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b"))
    fail(Err::Parse, "quadratic value must be {\"a\":\"p/q\",\"b\":\"r/s\"}");
  return Quad(parse_rat(j["a"].get<std::string>()), parse_rat(j["b"].get<std::string>()));
}

Json quad_json(const Quad& q) {
  return Json{{"a", rat_str(q.a)}, {"b", rat_str(q.b)}};
}

}  // namespace

InstPtr parse_instance(const Json& j) {
  if (!j.is_object() || !j.contains("backend"))
    fail(Err::Parse, "instance file must be an object with a \"backend\" field");
  std::string backend = j["backend"].get<std::string>();
  std::string label = j.value("name", "");
  Budget b;
  if (j.contains("budget_defaults")) b = Budget::from_json(j["budget_defaults"]);

  InstPtr M;
  if (backend == "finite") {
    if (!j.contains("elements") || !j.contains("addition"))
      fail(Err::Parse, "finite backend needs \"elements\" and \"addition\"");
    std::vector<std::string> names = j["elements"].get<std::vector<std::string>>();
    std::map<std::string, int> idx;
    for (size_t i = 0; i < names.size(); ++i) {
      if (idx.count(names[i])) fail(Err::Parse, "duplicate element name: " + names[i]);
      idx[names[i]] = (int)i;
    }
    auto lookup = [&](const Json& v) {
      std::string s = v.get<std::string>();
      auto it = idx.find(s);
      if (it == idx.end()) fail(Err::Parse, "unknown element name in table/order: " + s);
      return it->second;
    };
    std::vector<std::vector<int>> table;
    for (const auto& row : j["addition"]) {
      std::vector<int> r;
      for (const auto& v : row) r.push_back(lookup(v));
      table.push_back(std::move(r));
    }
    std::vector<std::pair<int, int>> order_pairs;
    if (j.contains("order"))
      for (const auto& p : j["order"]) {
        if (!p.is_array() || p.size() != 2) fail(Err::Parse, "order entries must be pairs");
        order_pairs.push_back({lookup(p[0]), lookup(p[1])});
      }
    M = Instance::finite(std::move(names), std::move(table), std::move(order_pairs), label);
  } else if (backend == "vector") {
    if (!j.contains("dim") || !j.contains("generators") || !j.contains("order_mode"))
      fail(Err::Parse, "vector backend needs \"dim\", \"generators\", \"order_mode\"");
    int dim = j["dim"].get<int>();
    std::vector<VecZ> gens;
    for (const auto& g : j["generators"]) gens.push_back(g.get<VecZ>());
    std::string om = j["order_mode"].get<std::string>();
    OrderMode mode;
    std::vector<Quad> weights;
    if (om == "algebraic")
      mode = OrderMode::Algebraic;
    else if (om == "coordinatewise")
      mode = OrderMode::Coordinatewise;
    else if (om == "linear") {
      mode = OrderMode::Linear;
      if (!j.contains("weights")) fail(Err::Parse, "linear order needs \"weights\"");
      for (const auto& w : j["weights"]) weights.push_back(parse_quad(w));
    } else
      fail(Err::Parse, "order_mode must be algebraic | coordinatewise | linear, got " + om);
    M = Instance::vector_backend(dim, std::move(gens), mode, std::move(weights), label);
  } else if (backend == "cuz") {
    M = Instance::cuz();
  } else if (backend == "qplus") {
    M = Instance::qplus();
  } else if (backend == "direct_sum") {
    if (!j.contains("left") || !j.contains("right"))
      fail(Err::Parse, "direct_sum needs \"left\" and \"right\"");
    M = Instance::direct_sum(parse_instance(j["left"]), parse_instance(j["right"]));
  } else if (backend == "principal_ideal") {
    if (!j.contains("parent") || !j.contains("generator"))
      fail(Err::Parse, "principal_ideal needs \"parent\" and \"generator\"");
    InstPtr P = parse_instance(j["parent"]);
    Elem g = parse_elem(*P, j["generator"]);
    M = Instance::principal_ideal(std::move(P), std::move(g));
  } else if (backend == "quotient") {
    if (!j.contains("parent") || !j.contains("ideal_generator"))
      fail(Err::Parse, "quotient needs \"parent\" and \"ideal_generator\"");
    InstPtr P = parse_instance(j["parent"]);
    Elem g = parse_elem(*P, j["ideal_generator"]);
    InstPtr I = Instance::principal_ideal(P, std::move(g));
    M = Instance::quotient(std::move(P), std::move(I), b);
  } else {
    fail(Err::Parse, "unknown backend: " + backend);
  }
  if (!label.empty() || j.contains("budget_defaults")) {
    auto N = std::make_shared<Instance>(*M);
    if (!label.empty()) N->label = label;
    N->defaults = b;
    return N;
  }
  return M;
}

InstPtr parse_instance_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Err::Parse, "invalid JSON");
  return parse_instance(j);
}

Json instance_json(const Instance& M) {
  Json j;
  j["backend"] = backend_str(M.kind);
  if (!M.label.empty()) j["name"] = M.label;
  switch (M.kind) {
    case BackendKind::Finite: {
      j["elements"] = M.names;
      Json tbl = Json::array();
      for (const auto& row : M.table) {
        Json r = Json::array();
        for (int v : row) r.push_back(M.names[v]);
        tbl.push_back(r);
      }
      j["addition"] = tbl;
      Json ord = Json::array();
      for (size_t a = 0; a < M.names.size(); ++a)
        for (size_t c = 0; c < M.names.size(); ++c)
          if (M.ord[a][c] && a != c) ord.push_back(Json::array({M.names[a], M.names[c]}));
      j["order"] = ord;
      break;
    }
    case BackendKind::Vector: {
      j["dim"] = M.dim;
      Json gs = Json::array();
      for (const auto& g : M.gens) {
        Json row = Json::array();
        for (long long c : g) row.push_back(c);
        gs.push_back(row);
      }
      j["generators"] = gs;
      j["order_mode"] = M.mode == OrderMode::Algebraic      ? "algebraic"
                        : M.mode == OrderMode::Coordinatewise ? "coordinatewise"
                                                              : "linear";
      if (M.mode == OrderMode::Linear) {
        Json ws = Json::array();
        for (const auto& w : M.weights) ws.push_back(quad_json(w));
        j["weights"] = ws;
      }
      break;
    }
    case BackendKind::CuZ:
    case BackendKind::QPlus: break;
    case BackendKind::DirectSum:
      j["left"] = instance_json(*M.left);
      j["right"] = instance_json(*M.right);
      break;
    case BackendKind::PrincipalIdeal:
      j["parent"] = instance_json(*M.parent);
      j["generator"] = elem_json(*M.parent, M.pgen);
      break;
    case BackendKind::Quotient:
      j["parent"] = instance_json(*M.parent);
      j["ideal_generator"] = elem_json(*M.parent, M.ideal->pgen);
      break;
    case BackendKind::AuCone:
      j["parent"] = instance_json(*M.parent);
      j["cone"] = cone_str(M.cone);
      j["derived"] = true;
      break;
    case BackendKind::MTensorOne:
      j["parent"] = instance_json(*M.parent);
      j["derived"] = true;
      break;
  }
  return j;
}

}  // namespace orderlab
