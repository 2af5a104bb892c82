#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "passcast/world.hpp"

namespace passcast {

struct LogWarning {
    std::size_t line = 0;
    std::string message;
};

struct ParsedLog {
    std::vector<Snapshot> snapshots;
    std::string left_team;
    std::string right_team;
    std::vector<LogWarning> warnings;
};

/// Parses text game-log lines (rcg v4/v5). In lenient mode problems become
/// warnings and the offending line is dropped; in strict mode a malformed
/// show line throws ParseError (syntax) or MalformedFrame (player count,
/// duplicates, non-finite values, ball outside the field margin).
ParsedLog parse_log(std::istream& in, bool lenient = true);
ParsedLog parse_log_text(std::string_view text, bool lenient = true);

/// Reads a log file, transparently inflating gzip input (magic 0x1f 0x8b).
/// Throws std::runtime_error if the file cannot be read.
std::string read_log_bytes(const std::filesystem::path& path);
ParsedLog parse_log_file(const std::filesystem::path& path, bool lenient = true);

/// Decodes a single `(show ...)` line into a Snapshot (playmode play_on).
Snapshot parse_show_line(std::string_view line, std::size_t line_no = 1);

/// Emits a v5 show line carrying the snapshot at full round-trip precision.
std::string format_show(const Snapshot& s);

}  // namespace passcast
