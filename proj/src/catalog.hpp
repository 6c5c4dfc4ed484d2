#pragma once

#include "culayer.hpp"

namespace orderlab {

/// A shipped instance: construction note plus a frozen expected-verdict
/// table that every run must reproduce.
struct CatalogEntry {
  std::string name;
  std::string construction;
  Json instance;                         // instance document
  std::map<std::string, std::string> expected;  // property -> yes|no|unknown
};

/// curated entries followed by every commutative positively-orderable monoid
/// of order <= 3 (exhaustively enumerated) and curated order-4 entries
const std::vector<CatalogEntry>& catalog();

const CatalogEntry* catalog_find(const std::string& name);
InstPtr catalog_instance(const std::string& name);

Json catalog_listing();

}  // namespace orderlab
