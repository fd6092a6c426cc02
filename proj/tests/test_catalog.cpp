#include <doctest.h>

#include "crembed/catalog.hpp"
#include "crembed/cr_frame.hpp"

using namespace crembed;

TEST_CASE("the catalog ships the documented entries in a stable order") {
  const auto names = catalog_names();
  const std::vector<std::string> expected{
      "abelian3", "abelian4", "heisenberg3", "n4",             "n5",
      "axb",      "sl2",      "su2",         "heisenberg3-cr", "abelian4-cr"};
  CHECK(names == expected);
  CHECK(catalog().size() == expected.size());
}

TEST_CASE("lookup is by exact name") {
  CHECK(find_catalog_entry("sl2") != nullptr);
  CHECK(find_catalog_entry("SL2") == nullptr);
  CHECK(find_catalog_entry("") == nullptr);
  CHECK(find_catalog_entry("heisenberg") == nullptr);
}

TEST_CASE("entry shapes and notes") {
  for (const CatalogEntry& entry : catalog()) {
    CHECK_FALSE(entry.notes.empty());
    CHECK(entry.algebra.dim() >= 2);
    if (entry.structure) {
      CHECK(entry.structure->algebra.dim() == entry.algebra.dim());
      CHECK(entry.structure->h_basis.cols() == entry.structure->n);
    }
  }
  CHECK(find_catalog_entry("n5")->algebra.dim() == 5);
  CHECK(find_catalog_entry("axb")->algebra.dim() == 2);
  CHECK(find_catalog_entry("sl2")->algebra.labels()[0] == "h");
}

TEST_CASE("only the CR entries carry structures, and they validate") {
  for (const CatalogEntry& entry : catalog()) {
    const bool is_cr = entry.name.size() > 3 &&
                       entry.name.compare(entry.name.size() - 3, 3, "-cr") == 0;
    CHECK(entry.structure.has_value() == is_cr);
  }
  const CatalogEntry* h3cr = find_catalog_entry("heisenberg3-cr");
  REQUIRE(h3cr != nullptr);
  REQUIRE(h3cr->structure.has_value());
  CHECK(h3cr->structure->n == 1);
  CHECK(h3cr->structure->k == 1);
  CHECK(validate_cr_structure(*h3cr->structure).passed);

  const CatalogEntry* r4cr = find_catalog_entry("abelian4-cr");
  REQUIRE(r4cr != nullptr);
  REQUIRE(r4cr->structure.has_value());
  CHECK(r4cr->structure->n == 1);
  CHECK(r4cr->structure->k == 2);
  CHECK(validate_cr_structure(*r4cr->structure).passed);
}
