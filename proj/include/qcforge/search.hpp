#pragma once

// Discovery pipeline for cubic self-dual codes: component databases, exhaustive
// enumeration of small self-dual codes, small-length classification, and the
// seeded permutation/scaling search feeding a catalog.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcforge/catalog.hpp"
#include "qcforge/codefile.hpp"
#include "qcforge/equiv.hpp"
#include "qcforge/lincode.hpp"
#include "qcforge/templates.hpp"

namespace qcforge {

// ------------------------------------------------------------ databases

template <class Code>
struct DbEntry {
  std::string name;
  Code code;
  std::optional<std::size_t> claimed_d;
  /// "<file>:<line>" or a caller-supplied label.
  std::string source;
};

struct ComponentDb {
  std::vector<DbEntry<BinaryCode>> binary;
  std::vector<DbEntry<QuaternaryCode>> quaternary;
  std::string source;

  /// Common length of every entry (0 for an empty database).
  std::size_t length() const;
};

/// Validates: every binary entry is Euclidean self-dual, every quaternary entry
/// Hermitian self-dual, all lengths agree, names are unique within a field,
/// and any claimed d equals the computed minimum distance. Throws
/// ValidationError naming the offending code.
ComponentDb make_component_db(const std::vector<NamedCode>& codes, const std::string& source);
ComponentDb load_component_db(const std::filesystem::path& path);

// ---------------------------------------------------------- enumeration

struct EnumerateLimits {
  /// BudgetExceeded once more codes than this would be produced.
  std::uint64_t max_codes = 2'000'000;
};

/// Every Euclidean self-dual binary code of even length n, each exactly once,
/// ordered by the depth-first extension.
std::vector<BinaryCode> enumerate_selfdual_gf2(std::size_t n, const EnumerateLimits& limits = {});
/// Every Hermitian self-dual quaternary code of even length n.
std::vector<QuaternaryCode> enumerate_selfdual_gf4(std::size_t n, const EnumerateLimits& limits = {});

/// Random self-dual code of even length n, grown by adding uniformly drawn
/// self-orthogonal vectors of C-perp outside C. Deterministic in seed.
BinaryCode random_selfdual_gf2(std::size_t n, std::uint64_t seed);
QuaternaryCode random_selfdual_gf4(std::size_t n, std::uint64_t seed);

// ------------------------------------------------------- classification

struct CensusClass {
  /// Canonical form of the class.
  BinaryCode code;
  Hash128 hash;
  boost::multiprecision::cpp_int aut_order;
  std::size_t d = 0;
  WeightEnumerator wenum;
  /// Indices into the enumerated component lists of the first member found.
  std::size_t c1_index = 0, c2_index = 0;
  /// Number of (C1 representative, C2) pairs landing in the class.
  std::uint64_t members = 0;
};

struct Census {
  std::size_t ell = 0;
  std::size_t binary_codes = 0, binary_reps = 0, quaternary_codes = 0;
  std::uint64_t pairs = 0;
  std::vector<CensusClass> classes;
  /// False when some canonicalization hit its budget (the count is then only
  /// an upper bound on the number of classes).
  bool complete = true;
};

struct ClassifyOptions {
  CanonOptions canon;
  EnumerateLimits limits;
  /// 0 = hardware concurrency capped by QCFORGE_THREADS.
  unsigned threads = 0;
};

/// Classes of cubic self-dual codes of length 3 ell. C1 runs over one
/// representative per coordinate-permutation class of self-dual binary codes
/// of length ell, C2 over all Hermitian self-dual quaternary codes of length
/// ell. This covers every pair, because permuting both components by the same
/// permutation permutes the cubic code.
Census classify_cubic(std::size_t ell, const ClassifyOptions& opts = {});

// --------------------------------------------------------------- search

/// Monomial transform of a quaternary component, applied in the order
/// conjugate, scale, permute.
struct Transform {
  /// Coordinate i moves to perm[i].
  std::vector<std::size_t> perm;
  /// Coordinate i is multiplied by scaling[i] (nonzero).
  std::vector<Gf4> scaling;
  bool conjugate = false;

  static Transform identity(std::size_t ell);
  /// Scalings rendered over {1,w,W}.
  std::string scaling_string() const;
};

/// Throws PreconditionError unless t is a valid transform of length ell.
void validate_transform(const Transform& t, std::size_t ell);
QuaternaryCode apply_transform(const QuaternaryCode& c, const Transform& t);

/// Deterministic sample: uniform permutation, optional uniform scalings from
/// {1, w, W}, optional fair-coin conjugation. Sample index 0 is the identity.
Transform sample_transform(std::size_t ell, std::uint64_t run_seed, std::size_t c1_index, std::size_t c2_index,
                           std::uint64_t sample, bool scalings, bool conjugation);

struct SearchConfig {
  std::size_t ell = 0;
  std::size_t d_target = 0;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  bool scalings = false;
  bool conjugation = false;
  /// Defaults to the built-in templates of length 3 ell.
  std::optional<std::vector<WenumTemplate>> templates;
  CanonOptions canon{.node_budget = 200'000};
  /// Codes in one "possibly equivalent" group beyond this are only counted.
  std::size_t max_group_records = 64;
  unsigned threads = 0;
  /// Command line recorded in the catalog metadata.
  std::string command;
};

/// Runs every (C1, C2, sample) work item whose distance bound reaches
/// d_target. Output depends only on (db, cfg), not on the thread count.
Catalog run_search(const ComponentDb& db, const SearchConfig& cfg);

/// Rebuilds a record's code from its provenance.
BinaryCode replay(const CodeRecord& rec, const ComponentDb& db);

}  // namespace qcforge
