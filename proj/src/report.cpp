#include "tdual/report.hpp"

#include <algorithm>

namespace tdual {

std::string Table::to_tsv() const
{
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out += (i ? "\t" : "") + cells[i];
        out += '\n';
    };
    line(columns);
    for (const auto& r : rows)
        line(r);
    return out;
}

std::string Table::to_plain() const
{
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i)
        width[i] = columns[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], r[i].size());
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        std::string l;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            l += cells[i];
            if (i + 1 < cells.size())
                l += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out += l + '\n';
    };
    line(columns);
    for (const auto& r : rows)
        line(r);
    return out;
}

std::string header_line(const std::vector<std::pair<std::string, std::string>>& fields)
{
    std::string out = std::string("# tdual ") + kVersion;
    for (const auto& [k, v] : fields)
        out += " " + k + "=" + v;
    return out;
}

} // namespace tdual
