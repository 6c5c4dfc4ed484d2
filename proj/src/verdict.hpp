#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

namespace orderlab {

using Json = nlohmann::ordered_json;

enum class Tri { Yes, No, Unknown };

inline const char* tri_str(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "unknown";
  }
}

/// conjunction under "No dominates, Unknown contaminates"
inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::No || b == Tri::No) return Tri::No;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::Yes;
}

inline Tri tri_not(Tri a) {
  if (a == Tri::Yes) return Tri::No;
  if (a == Tri::No) return Tri::Yes;
  return Tri::Unknown;
}

/// Three-valued result with a replayable certificate. Yes/No certificates
/// carry witnesses or exhaustion proofs; Unknown records the bound hit.
struct Verdict {
  Tri value = Tri::Unknown;
  Json cert;
  Json budget_used;

  static Verdict yes(Json c = Json::object()) { return {Tri::Yes, std::move(c), Json::object()}; }
  static Verdict no(Json c = Json::object()) { return {Tri::No, std::move(c), Json::object()}; }
  static Verdict unknown(Json c = Json::object()) {
    return {Tri::Unknown, std::move(c), Json::object()};
  }

  bool is_yes() const { return value == Tri::Yes; }
  bool is_no() const { return value == Tri::No; }
  bool decided() const { return value != Tri::Unknown; }

  Json to_json() const {
    Json j;
    j["value"] = tri_str(value);
    j["certificate"] = cert;
    if (!budget_used.empty()) j["budget_used"] = budget_used;
    return j;
  }
};

/// Search bounds. Enlarging a budget may refine Unknown into Yes/No but can
/// never flip a decided verdict.
struct Budget {
  int sample_box = 6;
  int n_max = 24;
  int coeff_bound = 12;
  int chain_depth = 8;

  Json to_json() const {
    return Json{{"sample_box", sample_box},
                {"n_max", n_max},
                {"coeff_bound", coeff_bound},
                {"chain_depth", chain_depth}};
  }
  static Budget from_json(const Json& j);
  Budget with_box(int b) const {
    Budget c = *this;
    c.sample_box = b;
    return c;
  }
};

enum class Err {
  Parse,
  BackendMismatch,
  NotAnIdeal,
  UnsupportedProperty,
  UnsupportedBackend,
  HypothesisFailure,
  NotOrderPreserving,
  BadArgument,
  Internal,
};

const char* err_str(Err e);

struct Error : std::runtime_error {
  Err code;
  Json detail;
  Error(Err c, const std::string& msg, Json d = Json::object())
      : std::runtime_error(msg), code(c), detail(std::move(d)) {}
};

[[noreturn]] inline void fail(Err c, const std::string& msg, Json d = Json::object()) {
  throw Error(c, msg, std::move(d));
}

}  // namespace orderlab
