#include "crembed/catalog.hpp"

#include <array>

namespace crembed {

namespace {

LieAlgebra make_algebra(int dim, std::initializer_list<BracketTerm> terms,
                        std::vector<std::string> labels = {}) {
  return LieAlgebra(
      StructureConstants::from_brackets(dim, std::span(terms.begin(), terms.size())),
      std::move(labels));
}

GroupCRStructure make_structure(LieAlgebra algebra, int n, int k,
                                std::initializer_list<Complex> h_column_major) {
  const int s = algebra.dim();
  Matrix h(s, n);
  auto it = h_column_major.begin();
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < s; ++r) h(r, c) = *it++;
  return {std::move(algebra), std::move(h), n, k};
}

std::vector<CatalogEntry> build_catalog() {
  const Complex one(1);
  std::vector<CatalogEntry> entries;

  entries.push_back({"abelian3", "3-dimensional abelian algebra; every check is trivial",
                     make_algebra(3, {}), std::nullopt});

  entries.push_back({"abelian4", "4-dimensional abelian algebra", make_algebra(4, {}),
                     std::nullopt});

  entries.push_back({"heisenberg3",
                     "Heisenberg algebra: [xi1, xi2] = xi3; nilpotent of step 2",
                     make_algebra(3, {{0, 1, 2, one}}), std::nullopt});

  entries.push_back({"n4",
                     "filiform step-3 algebra: [xi1, xi2] = xi3, [xi1, xi3] = xi4",
                     make_algebra(4, {{0, 1, 2, one}, {0, 2, 3, one}}), std::nullopt});

  entries.push_back(
      {"n5",
       "step-4 algebra: [xi1, xi2] = xi3, [xi1, xi3] = xi4, [xi1, xi4] = xi5, "
       "[xi2, xi3] = xi5; gives genuinely multivariate coefficients",
       make_algebra(5, {{0, 1, 2, one}, {0, 2, 3, one}, {0, 3, 4, one}, {1, 2, 4, one}}),
       std::nullopt});

  entries.push_back({"axb",
                     "affine line algebra: [xi1, xi2] = xi2; solvable, not nilpotent; "
                     "coefficients are genuinely exponential",
                     make_algebra(2, {{0, 1, 1, one}}), std::nullopt});

  entries.push_back({"sl2",
                     "sl(2): [h, e] = 2e, [h, f] = -2f, [e, f] = h; semisimple",
                     make_algebra(3, {{0, 1, 1, Complex(2)}, {0, 2, 2, Complex(-2)},
                                      {1, 2, 0, one}},
                                  {"h", "e", "f"}),
                     std::nullopt});

  entries.push_back({"su2",
                     "su(2) rotations: [xi1, xi2] = xi3, [xi2, xi3] = xi1, [xi3, xi1] = xi2",
                     make_algebra(3, {{0, 1, 2, one}, {1, 2, 0, one}, {0, 2, 1, -one}}),
                     std::nullopt});

  {
    LieAlgebra h3 = make_algebra(3, {{0, 1, 2, one}});
    entries.push_back(
        {"heisenberg3-cr",
         "type (1,1) CR structure on the Heisenberg group: h spanned by xi1 + i xi2",
         h3, make_structure(h3, 1, 1, {one, Complex(0, 1), Complex(0)})});
  }

  {
    LieAlgebra r4 = make_algebra(4, {});
    entries.push_back(
        {"abelian4-cr",
         "type (1,2) CR structure on R^4: h spanned by xi1 + i xi2; extends to a "
         "complex structure",
         r4, make_structure(r4, 1, 2, {one, Complex(0, 1), Complex(0), Complex(0)})});
  }

  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* find_catalog_entry(std::string_view name) {
  for (const CatalogEntry& entry : catalog())
    if (entry.name == name) return &entry;
  return nullptr;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  names.reserve(catalog().size());
  for (const CatalogEntry& entry : catalog()) names.push_back(entry.name);
  return names;
}

}  // namespace crembed
