#pragma once

#include <string>
#include <vector>

namespace ltlf::io {

/// Header plus rows of a delimiter-separated file. Fields may be quoted with
/// '"' (doubled quotes escape a quote).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name, or -1.
    int column(const std::string& name) const;
    /// Column index by name; throws IoError naming `context` when absent.
    std::size_t require(const std::string& name, const std::string& context) const;
};

CsvTable parse_csv(const std::string& text, char delimiter = ',');
CsvTable read_csv(const std::string& path, char delimiter = ',');

std::string format_csv(const CsvTable& table, char delimiter = ',');
void write_csv(const std::string& path, const CsvTable& table, char delimiter = ',');

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);
double parse_number(const std::string& text, const std::string& context);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ltlf::io
