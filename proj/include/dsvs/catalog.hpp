#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dsvs/solution.hpp"

namespace dsvs {

struct CatalogEntry {
  std::string name;
  std::string figure;  // figure label the parameters come from
  SolutionSpec spec;
  Window window;
  std::vector<double> reference_times;
  std::vector<double> degenerate_times;  // U = 0 identically at these times
  bool known_singular = false;  // f vanishes inside the default window
  std::string notes;
};

/// dromion, solitoff, resonant, breather, periodic, double_instanton.
const std::vector<std::string>& catalog_names();

/// Throws UsageError listing the valid names for an unknown name.
CatalogEntry build_case(std::string_view name);

}  // namespace dsvs
