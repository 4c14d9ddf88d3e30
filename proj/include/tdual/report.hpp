#pragma once

#include <string>
#include <vector>

namespace tdual {

inline constexpr const char* kVersion = "0.1.0";

/// Rows of string cells with named columns. TSV output prints the column
/// names first; plain output pads columns to a common width.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_tsv() const;
    std::string to_plain() const;
    std::string render(bool tsv) const { return tsv ? to_tsv() : to_plain(); }
};

/// "# tdual <version> <key>=<value> ..." on a single line.
std::string header_line(const std::vector<std::pair<std::string, std::string>>& fields);

} // namespace tdual
