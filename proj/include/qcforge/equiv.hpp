#pragma once

// Permutation equivalence of binary codes: canonical forms, automorphism group
// orders and equivalence decisions, all from one individualization-refinement
// backtrack over coordinate orderings.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcforge/lincode.hpp"

namespace qcforge {

struct Hash128 {
  std::uint64_t hi = 0, lo = 0;

  /// 32 lowercase hex characters, hi word first.
  std::string hex() const;
  static std::optional<Hash128> from_hex(std::string_view s);
  friend bool operator==(const Hash128&, const Hash128&) = default;
  friend auto operator<=>(const Hash128&, const Hash128&) = default;
};

/// MurmurHash3-style 128-bit digest of a word sequence.
Hash128 digest128(std::span<const std::uint64_t> words);

/// Digest of a code's (n, k, packed RREF rows).
Hash128 code_digest(const BinaryCode& c);

struct CanonOptions {
  /// Backtrack node limit; exceeding it yields complete = false.
  std::uint64_t node_budget = 10'000'000;
  /// Codewords of weight d..d+weight_window form the refinement blocks.
  std::size_t weight_window = 4;
  /// Weight classes stop being added once this many blocks are collected.
  std::size_t max_blocks = 1000;
  /// Codes with more information bits get no blocks (refinement by the trivial
  /// structure only), since collecting them would dominate the run time.
  std::size_t max_block_info_bits = 28;
};

struct CanonicalForm {
  /// RREF of the code after applying `labeling`.
  BinaryCode code;
  Hash128 hash;
  /// Coordinate i of the input moves to labeling[i].
  std::vector<std::size_t> labeling;
  bool complete = false;
};

struct AutInfo {
  boost::multiprecision::cpp_int order = 1;
  bool complete = false;
  /// Generators found by the search (images of each coordinate).
  std::vector<std::vector<std::size_t>> generators;
};

struct CanonResult {
  CanonicalForm form;
  AutInfo aut;
  std::uint64_t nodes = 0;
};

/// Canonical form and automorphism group together. Requires k >= 1.
CanonResult canonical_search(const BinaryCode& c, const CanonOptions& opts = {});
CanonicalForm canonicalize(const BinaryCode& c, const CanonOptions& opts = {});
AutInfo aut_order(const BinaryCode& c, const CanonOptions& opts = {});

enum class Equivalence { Yes, No, Unknown };
const char* to_string(Equivalence e);

/// Requires equal lengths. Cheap invariants first, then canonical forms.
Equivalence are_equivalent(const BinaryCode& a, const BinaryCode& b, const CanonOptions& opts = {});

}  // namespace qcforge
