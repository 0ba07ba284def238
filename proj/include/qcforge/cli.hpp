#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Runs one qcforge command line (args excludes the program name). Tables go
/// to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcforge::cli
