#pragma once

#include "catalog.hpp"

namespace orderlab {

const std::vector<std::string>& all_theorem_ids();

/// runs the selected theorem wirings over the selected catalog instances;
/// section "summary" counts pass/fail/vacuous/undecided, any fail is fatal
Json verify_run(const std::vector<std::string>& thm_ids,
                const std::vector<std::string>& instance_names, const Budget& b);

bool verify_has_failure(const Json& report);

/// full property matrix plus group/tensor summaries for one instance
Json full_report(InstPtr M, const Budget& b);

}  // namespace orderlab
