#include "verdict.hpp"

namespace orderlab {

const char* err_str(Err e) {
  switch (e) {
    case Err::Parse: return "parse-error";
    case Err::BackendMismatch: return "backend-mismatch";
    case Err::NotAnIdeal: return "not-an-ideal";
    case Err::UnsupportedProperty: return "unsupported-property";
    case Err::UnsupportedBackend: return "unsupported-backend";
    case Err::HypothesisFailure: return "hypothesis-failure";
    case Err::NotOrderPreserving: return "not-order-preserving";
    case Err::BadArgument: return "bad-argument";
    case Err::Internal: return "internal-error";
  }
  return "?";
}

Budget Budget::from_json(const Json& j) {
  Budget b;
  if (!j.is_object()) fail(Err::Parse, "budget must be an object");
  b.sample_box = j.value("sample_box", b.sample_box);
  b.n_max = j.value("n_max", b.n_max);
  b.coeff_bound = j.value("coeff_bound", b.coeff_bound);
  b.chain_depth = j.value("chain_depth", b.chain_depth);
  if (b.sample_box <= 0 || b.n_max <= 0 || b.coeff_bound <= 0 || b.chain_depth <= 0)
    fail(Err::Parse, "budget fields must be positive");
  return b;
}

}  // namespace orderlab
