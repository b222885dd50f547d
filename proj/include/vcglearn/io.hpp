#pragma once

#include <filesystem>
#include <string>

#include "vcglearn/harness.hpp"

namespace vcglearn {

/// Shortest decimal representation that parses back to exactly the same
/// double (std::to_chars round-trip mode).
std::string format_double(double value);

/// Writes via a temporary file in the same directory, then renames.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

/// Aggregate curve CSV: header
///   t,R_T,R_a,R_mech,R_max,R_agent_1..R_agent_n
/// followed by the matching *_se columns, one row per round.
std::string aggregate_curves_csv(const AggregateCurves& curves);

}  // namespace vcglearn
