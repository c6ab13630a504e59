#pragma once

// Command-line front end: flat key=value configuration, subcommand dispatch, and
// deterministic CSV + JSON emission.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace gpdo::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kPrecision = 3 };

// Every recognized key with its default value.
const std::map<std::string, std::string>& default_config();

// "key = value" lines; '#' starts a comment. Throws ArgumentError on unknown keys or bad lines.
std::map<std::string, std::string> parse_config(const std::string& text);

// Layers defaults, config file, GROUP_PDO_OUT (output directory only) and flags, later layers winning.
std::map<std::string, std::string> resolve_config(const std::map<std::string, std::string>& file,
                                                  const std::map<std::string, std::string>& flags,
                                                  const char* env_out);

// FNV-1a over the experiment name and the resolved keys, excluding `out` and `threads`.
std::uint64_t config_hash(const std::string& experiment, const std::map<std::string, std::string>& config);

// args excludes the program name. Verdict lines go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpdo::cli
