#include "minecast/csv.hpp"

#include "minecast/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace minecast {

CsvTable::CsvTable(std::string source, std::vector<std::string> header, std::vector<Row> rows)
: _source(std::move(source))
, _header(std::move(header))
, _rows(std::move(rows))
{
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < _header.size(); ++i) {
        if (_header[i] == name) {
            return i;
        }
    }
    throw DatasetError("{}: missing required column '{}'", _source, name);
}

const std::string& CsvTable::field(const Row& row, std::size_t column) const
{
    if (column >= row.fields.size()) {
        throw DatasetError("{}:{}: expected {} fields, found {}", _source, row.line, _header.size(), row.fields.size());
    }
    return row.fields[column];
}

double CsvTable::number(const Row& row, std::size_t column) const
{
    const auto& text = field(row, column);
    double value     = 0.0;
    if (!parse_number(text, value)) {
        throw DatasetError("{}:{}: column '{}' is not a number: '{}'", _source, row.line, _header[column], text);
    }
    return value;
}

long long CsvTable::integer(const Row& row, std::size_t column) const
{
    const auto& text = field(row, column);
    long long value  = 0;
    auto [ptr, ec]   = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw DatasetError("{}:{}: column '{}' is not an integer: '{}'", _source, row.line, _header[column], text);
    }
    return value;
}

bool parse_number(std::string_view text, double& value)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(value);
}

static std::vector<std::string> split_line(std::string_view line, const std::string& source, std::size_t lineNo)
{
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (quoted) {
        throw DatasetError("{}:{}: unterminated quoted field", source, lineNo);
    }
    fields.push_back(std::move(current));

    for (auto& f : fields) {
        const auto first = f.find_first_not_of(" \t");
        const auto last  = f.find_last_not_of(" \t");
        f = first == std::string::npos ? std::string() : f.substr(first, last - first + 1);
    }
    return fields;
}

CsvTable parse_csv(std::string_view text, std::string source)
{
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }

    std::vector<std::string> header;
    std::vector<CsvTable::Row> rows;
    std::size_t lineNo = 0;
    bool haveHeader    = false;

    while (!text.empty()) {
        const auto end = text.find('\n');
        auto line      = text.substr(0, end);
        text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
        ++lineNo;

        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.find_first_not_of(" \t") == std::string_view::npos) {
            continue;
        }

        auto fields = split_line(line, source, lineNo);
        if (!haveHeader) {
            header     = std::move(fields);
            haveHeader = true;
            continue;
        }
        if (fields.size() != header.size()) {
            throw DatasetError("{}:{}: expected {} fields, found {}", source, lineNo, header.size(), fields.size());
        }
        rows.push_back({lineNo, std::move(fields)});
    }

    if (!haveHeader) {
        throw DatasetError("{}: file is empty (a header row is required)", source);
    }
    return CsvTable(std::move(source), std::move(header), std::move(rows));
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DatasetError("cannot open '{}'", path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), path.string());
}

std::string format_number(double value)
{
    if (value == 0.0) {
        return "0";
    }
    return fmt::format("{:.6g}", value);
}

CsvWriter::CsvWriter(std::vector<std::string> header)
: _columns(header.size())
{
    add_row(header);
}

CsvWriter& CsvWriter::add_row(const std::vector<std::string>& fields)
{
    if (fields.size() != _columns) {
        throw std::logic_error(fmt::format("csv row has {} fields, header has {}", fields.size(), _columns));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            _text += ',';
        }
        const auto& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            _text += '"';
            for (char c : f) {
                if (c == '"') {
                    _text += '"';
                }
                _text += c;
            }
            _text += '"';
        } else {
            _text += f;
        }
    }
    _text += '\n';
    return *this;
}

}
