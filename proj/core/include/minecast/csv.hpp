#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace minecast {

/// A parsed CSV file: header row plus data rows. Comma separated, optional
/// double quotes, '.' decimal separator. Blank lines are skipped.
class CsvTable
{
public:
    struct Row
    {
        std::size_t line = 0;
        std::vector<std::string> fields;
    };

    CsvTable(std::string source, std::vector<std::string> header, std::vector<Row> rows);

    const std::string& source() const noexcept
    {
        return _source;
    }

    const std::vector<std::string>& header() const noexcept
    {
        return _header;
    }

    const std::vector<Row>& rows() const noexcept
    {
        return _rows;
    }

    /// Index of a required column; throws DatasetError naming the file if absent.
    std::size_t column(std::string_view name) const;

    const std::string& field(const Row& row, std::size_t column) const;
    double number(const Row& row, std::size_t column) const;
    long long integer(const Row& row, std::size_t column) const;

private:
    std::string _source;
    std::vector<std::string> _header;
    std::vector<Row> _rows;
};

CsvTable parse_csv(std::string_view text, std::string source);
CsvTable read_csv(const std::filesystem::path& path);

/// Locale independent number parsing of a whole field.
bool parse_number(std::string_view text, double& value);

/// Six significant digits, '.' separator, no locale dependence.
std::string format_number(double value);

class CsvWriter
{
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& add_row(const std::vector<std::string>& fields);

    const std::string& str() const noexcept
    {
        return _text;
    }

private:
    std::size_t _columns;
    std::string _text;
};

}
