#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crembed/cr_frame.hpp"
#include "crembed/lie_algebra.hpp"

namespace crembed {

/// Built-in fixture: a named algebra, optionally carrying a CR structure.
/// Every entry validates at load time (the constructors throw otherwise).
struct CatalogEntry {
  std::string name;
  std::string notes;
  LieAlgebra algebra;
  std::optional<GroupCRStructure> structure;
};

/// The shipped fixtures, spanning abelian / nilpotent / solvable /
/// semisimple algebras plus two CR structures.  Built once, cached.
const std::vector<CatalogEntry>& catalog();

/// Entry by name, or nullptr.  Names are case-sensitive.
const CatalogEntry* find_catalog_entry(std::string_view name);

std::vector<std::string> catalog_names();

}  // namespace crembed
