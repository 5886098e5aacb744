#include "wqed/runner/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "wqed/types.hpp"

namespace wqed::runner {

void Table::add_row(std::vector<double> row)
{
    if (row.size() != columns.size())
        throw InputError("table '" + name + "': row has " + std::to_string(row.size()) + " values for " +
                         std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& column) const
{
    for (std::size_t k = 0; k < columns.size(); ++k)
        if (columns[k] == column) return k;
    throw InputError("table '" + name + "' has no column '" + column + "'");
}

std::vector<double> Table::column(const std::string& column) const
{
    const std::size_t k = column_index(column);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[k]);
    return out;
}

std::string format_value(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const Table& table)
{
    std::string out;
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        if (k) out += ',';
        out += table.columns[k];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += format_value(row[k]);
        }
        out += '\n';
    }
    return out;
}

std::vector<std::filesystem::path> write_tables(const std::vector<Table>& tables,
                                                const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> written;
    for (const auto& t : tables) {
        const auto path = dir / (t.name + ".csv");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << to_csv(t);
        if (!out) throw IoError("failed writing '" + path.string() + "'");
        written.push_back(path);
    }
    return written;
}

} // namespace wqed::runner
