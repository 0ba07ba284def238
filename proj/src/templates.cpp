#include "qcforge/templates.hpp"

#include <algorithm>

#include "qcforge/error.hpp"

namespace qcforge {

std::optional<std::int64_t> WenumTemplate::coefficient(std::size_t weight, std::int64_t param) const {
  for (const TemplateTerm& t : terms)
    if (t.weight == weight) return t.base + t.slope * param;
  return std::nullopt;
}

const std::vector<WenumTemplate>& builtin_templates() {
  static const std::vector<WenumTemplate> all = {
      // [54,27,10]
      {54, "W1", {{10, 351, -8}, {12, 5031, 24}, {14, 48492, 32}}, "beta", 0, 43},
      {54, "W2", {{10, 351, -8}, {12, 5543, 24}, {14, 43884, 32}}, "beta", 12, 43},
      // [60,30,12]
      {60, "W1", {{12, 2555, 0}, {14, 33600, 0}, {16, 278865, 0}}, "", 0, 0},
      {60, "W2", {{12, 2619, 0}, {14, 33216, 0}, {16, 279441, 0}}, "", 0, 0},
      {60, "W3", {{12, 3195, 0}, {14, 29760, 0}, {16, 284625, 0}}, "", 0, 0},
      {60, "W4", {{12, 3451, 0}, {14, 24128, 0}, {16, 336081, 0}}, "", 0, 0},
      // [66,33,12]
      {66, "W1", {{12, 858, 8}, {14, 18678, 24}}, "alpha", 0, 778},
      {66, "W2", {{12, 858, 8}, {14, 18166, 24}}, "alpha", 14, 756},
      {66, "W3", {{12, 1690, 0}, {14, 7990, 0}}, "", 0, 0},
  };
  return all;
}

std::vector<WenumTemplate> templates_for_length(std::size_t length) {
  std::vector<WenumTemplate> out;
  for (const WenumTemplate& t : builtin_templates())
    if (t.length == length) out.push_back(t);
  return out;
}

WeightEnumerator evaluate_template(const WenumTemplate& t, std::int64_t param) {
  std::vector<std::uint64_t> a(t.length + 1, 0);
  a[0] = 1;
  for (const TemplateTerm& term : t.terms) {
    const std::int64_t v = term.base + term.slope * param;
    if (v < 0)
      throw PreconditionError("template " + t.label + " has a negative coefficient at " + t.param_name + "=" +
                              std::to_string(param));
    a[term.weight] = std::uint64_t(v);
  }
  return WeightEnumerator(t.length, std::move(a), t.max_weight());
}

namespace {

// Parameter consistent with every listed coefficient, if one exists.
std::optional<std::int64_t> fit(const WenumTemplate& t, const WeightEnumerator& w) {
  if (w[0] != 1) return std::nullopt;
  for (std::size_t i = 1; i < t.terms.front().weight; ++i)
    if (w[i] != 0) return std::nullopt;
  std::optional<std::int64_t> param;
  for (const TemplateTerm& term : t.terms) {
    const std::int64_t a = std::int64_t(w[term.weight]);
    if (term.slope == 0) {
      if (a != term.base) return std::nullopt;
      continue;
    }
    const std::int64_t diff = a - term.base;
    if (diff % term.slope != 0) return std::nullopt;
    const std::int64_t p = diff / term.slope;
    if (param && *param != p) return std::nullopt;
    param = p;
  }
  return t.has_param() ? param : std::optional<std::int64_t>(0);
}

}  // namespace

TemplateMatch extract_parameter(const WeightEnumerator& w, std::span<const WenumTemplate> templates) {
  TemplateMatch result;
  std::vector<std::pair<const WenumTemplate*, std::int64_t>> hits;
  for (const WenumTemplate& t : templates) {
    if (t.length != w.length() || t.terms.empty()) continue;
    if (w.known_through() < t.max_weight())
      throw PreconditionError("extract_parameter: enumerator not known through weight " +
                              std::to_string(t.max_weight()));
    if (auto p = fit(t, w)) hits.emplace_back(&t, *p);
  }
  for (const auto& [t, p] : hits) result.candidates.push_back(t->label);
  if (hits.empty()) return result;
  if (hits.size() > 1) {
    result.status = TemplateMatch::Status::Ambiguous;
    return result;
  }
  const auto& [t, p] = hits.front();
  result.status = TemplateMatch::Status::Match;
  result.label = t->label;
  result.param_name = t->param_name;
  if (t->has_param()) {
    result.param = p;
    result.in_range = p >= t->lo && p <= t->hi;
  } else {
    result.in_range = true;
  }
  return result;
}

}  // namespace qcforge
