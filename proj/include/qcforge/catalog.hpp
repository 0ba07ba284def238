#pragma once

// Search results: one record per constructed code, persisted one JSON object
// per line (metadata first), and the parameter coverage report.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcforge {

struct CodeRecord {
  std::size_t n = 0, k = 0, d = 0;
  /// Complete weight enumerator, "i:A_i" form.
  std::string wenum;
  /// A_i at the template weights of this length.
  std::map<std::size_t, std::uint64_t> template_coeffs;
  std::string template_label;  // empty when no template matched
  std::string param_name;
  std::optional<std::int64_t> param;
  bool param_in_range = false;
  std::string type;  // "TypeI" / "TypeII"
  std::string hash;  // 32 hex characters, canonical form
  /// Digest of the constructed generator matrix itself (replay check).
  std::string code_digest;
  bool canon_complete = false;
  std::string aut_order;  // decimal
  bool aut_complete = false;
  /// Invariant key shared by records that may be equivalent; empty when the
  /// canonical form is complete.
  std::string group;

  // Provenance.
  std::string c1, c2;
  std::size_t c1_index = 0, c2_index = 0;
  std::uint64_t sample = 0;
  std::vector<std::size_t> perm;
  std::string scaling;
  bool conjugate = false;
  std::uint64_t seed = 0;
};

struct SearchStats {
  std::uint64_t pairs = 0, pairs_skipped = 0, items = 0, rejected_distance = 0, survivors = 0, duplicates = 0,
                group_overflow = 0, canon_incomplete = 0, divisibility_failures = 0;
};

struct CatalogMeta {
  std::size_t ell = 0, length = 0, d_target = 0;
  std::uint64_t samples = 0, seed = 0;
  bool scalings = false, conjugation = false;
  std::string db;
  std::string command;
};

struct Catalog {
  CatalogMeta meta;
  SearchStats stats;
  /// Sorted by (c1_index, c2_index, sample).
  std::vector<CodeRecord> records;
};

void write_catalog(std::ostream& out, const Catalog& cat);
void write_catalog(const std::filesystem::path& path, const Catalog& cat);
/// Throws ParseError (with line number) on malformed lines.
Catalog read_catalog(std::istream& in);
Catalog read_catalog(const std::filesystem::path& path);

/// Parameter (or automorphism size) coverage for one length against the
/// published values.
std::string catalog_report(const Catalog& cat, std::size_t length);

}  // namespace qcforge
