#pragma once

// Text format for codes; one file may hold many:
//
//   # comment
//   code i2 q=2 n=2 k=1
//   11
//
//   code h2 q=4 n=2 k=1
//   1w
//
// Binary rows are strings over {0,1}; quaternary rows use {0,1,w,W} with
// W = w^2. A blank line ends a code. The header may end with an optional
// "d=<int>" recording a claimed minimum distance.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcforge/lincode.hpp"

namespace qcforge {

struct NamedCode {
  std::string name;
  std::variant<BinaryCode, QuaternaryCode> code;
  /// Line of the header in the source file (0 if not read from a file).
  std::size_t line = 0;
  std::optional<std::size_t> claimed_d;

  bool is_binary() const { return std::holds_alternative<BinaryCode>(code); }
  const BinaryCode& binary() const { return std::get<BinaryCode>(code); }
  const QuaternaryCode& quaternary() const { return std::get<QuaternaryCode>(code); }
};

/// Throws ParseError (with line number) on malformed input, including a
/// declared k that does not match the rank of the listed rows.
std::vector<NamedCode> parse_codes(std::istream& in);
std::vector<NamedCode> read_code_file(const std::filesystem::path& path);

void write_code(std::ostream& out, const std::string& name, const BinaryCode& c);
void write_code(std::ostream& out, const std::string& name, const QuaternaryCode& c);
void write_code(std::ostream& out, const NamedCode& c);

}  // namespace qcforge
