#pragma once

// Published weight-enumerator families for self-dual [54,27,10], [60,30,12]
// and [66,33,12] codes, and recovery of a code's family and free parameter.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcforge/lincode.hpp"

namespace qcforge {

/// A_weight = base + slope * param.
struct TemplateTerm {
  std::size_t weight = 0;
  std::int64_t base = 0;
  std::int64_t slope = 0;
};

struct WenumTemplate {
  std::size_t length = 0;
  std::string label;  // "W1".."W4"
  std::vector<TemplateTerm> terms;
  /// "beta" / "alpha", empty when the family has no free parameter.
  std::string param_name;
  std::int64_t lo = 0, hi = 0;

  bool has_param() const { return !param_name.empty(); }
  std::size_t max_weight() const { return terms.empty() ? 0 : terms.back().weight; }
  /// A_i for a listed weight, nullopt for unlisted weights.
  std::optional<std::int64_t> coefficient(std::size_t weight, std::int64_t param = 0) const;
};

/// The nine published families, in order 54 W1, W2; 60 W1..W4; 66 W1..W3.
const std::vector<WenumTemplate>& builtin_templates();
std::vector<WenumTemplate> templates_for_length(std::size_t length);

/// Enumerator known through the template's last listed weight: A_0 = 1, the
/// listed coefficients, zeros elsewhere. Throws if a coefficient is negative.
WeightEnumerator evaluate_template(const WenumTemplate& t, std::int64_t param = 0);

struct TemplateMatch {
  enum class Status { Match, NoMatch, Ambiguous };
  Status status = Status::NoMatch;
  std::string label;
  std::string param_name;
  std::optional<std::int64_t> param;
  bool in_range = false;
  /// Labels of every template that fit (more than one when ambiguous).
  std::vector<std::string> candidates;
};

/// Finds the template of matching length whose listed coefficients all agree
/// with w for a single integer parameter, with A_i = 0 for 0 < i below the
/// first listed weight. w must be known through every listed weight.
TemplateMatch extract_parameter(const WeightEnumerator& w, std::span<const WenumTemplate> templates);

}  // namespace qcforge
