#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dsvs/solution.hpp"

namespace dsvs {

/// A solution read from an INI spec file:
///
///   [coeffs]  a0, a1, a2, a3
///   [p], [q]  family = exp_sum | breather_p | breather_q | tan_cos |
///             instanton_p | instanton_q; exp_sum takes comma lists
///             A, K, L, theta0 (G, H accepted for K, L on the q side)
///   [funcs]   beta, gamma, c0, c3, c4 as TimeFunction text
///   [signs]   delta1, delta2
///   [window]  range = x0:x1:y0:y1, optional rotated_bound
///
/// Missing [funcs], [signs] and [window] keys take their defaults.
struct SpecFile {
  SolutionSpec spec;
  std::optional<Window> window;
};

/// Parses INI text. Each override "section.key=value" replaces or adds a
/// key before interpretation. Throws UsageError naming the offending key.
SpecFile parse_spec_text(const std::string& text, const std::vector<std::string>& overrides = {});
SpecFile load_spec_file(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// INI text for a spec; custom profiles cannot be written.
std::string format_spec(const SolutionSpec& spec, const std::optional<Window>& window = std::nullopt);

/// Applies "section.key=value" overrides to an existing spec by round-trip
/// through the INI form.
SpecFile apply_overrides(const SolutionSpec& spec, const std::optional<Window>& window,
                         const std::vector<std::string>& overrides);

}  // namespace dsvs
