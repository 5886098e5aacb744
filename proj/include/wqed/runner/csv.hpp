// csv.hpp: data tables and their CSV serialization

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace wqed::runner {

struct Table {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Throws InputError when a row length differs from the column count.
    void add_row(std::vector<double> row);
    std::size_t column_index(const std::string& column) const;
    std::vector<double> column(const std::string& column) const;
};

/// 12 significant digits, shortest form; -0 prints as 0, NaN as "nan", infinities as "inf"/"-inf".
std::string format_value(double v);

/// Header row plus one line per row, '\n' terminated.
std::string to_csv(const Table& table);

/// Writes <dir>/<name>.csv for each table, creating `dir`. Returns the written paths.
std::vector<std::filesystem::path> write_tables(const std::vector<Table>& tables,
                                                const std::filesystem::path& dir);

} // namespace wqed::runner
