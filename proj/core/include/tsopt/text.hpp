#pragma once

#include <string>
#include <vector>

namespace tsopt {

/// Formats a double with %.<precision>g.  17 significant digits make the
/// decimal text round-trip to the exact same double on re-parse, which
/// the output files rely on.
std::string format_g(double value, int precision = 17);

/// Strips leading/trailing whitespace (spaces, tabs, \r).
std::string trim(const std::string& s);

/// Splits on a single character; keeps empty fields.
std::vector<std::string> split(const std::string& s, char sep);

/// Splits on runs of whitespace; drops empty tokens.
std::vector<std::string> split_ws(const std::string& s);

/// Strict numeric parsers: the whole token must be consumed.  `where` is
/// prefixed to the DataError message (typically "file:line").
double parse_double(const std::string& token, const std::string& where);
long parse_long(const std::string& token, const std::string& where);

/// Reads a whole file into memory; DataError if it cannot be opened.
std::string read_file(const std::string& path);

/// Writes a file atomically enough for our purposes (truncate + write);
/// DataError on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace tsopt
