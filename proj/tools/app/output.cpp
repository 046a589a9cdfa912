#include "output.hpp"

#include "minecast/csv.hpp"
#include "minecast/error.hpp"

#include <fstream>
#include <system_error>

namespace minecast::app {

OutputSet::OutputSet(std::filesystem::path directory)
: _directory(std::move(directory))
{
}

void OutputSet::add(std::string fileName, std::string content)
{
    _files.push_back({std::move(fileName), std::move(content)});
}

std::vector<std::filesystem::path> OutputSet::commit() const
{
    std::error_code ec;
    std::filesystem::create_directories(_directory, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '{}': {}", _directory.string(), ec.message());
    }

    std::vector<std::filesystem::path> temporaries;
    auto cleanup = [&temporaries]() {
        std::error_code ignored;
        for (const auto& tmp : temporaries) {
            std::filesystem::remove(tmp, ignored);
        }
    };

    for (const auto& file : _files) {
        auto tmp = _directory / (file.name + ".tmp");
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        temporaries.push_back(tmp);
        out << file.content;
        out.close();
        if (!out) {
            cleanup();
            throw ConfigError("cannot write '{}'", tmp.string());
        }
    }

    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < _files.size(); ++i) {
        auto target = _directory / _files[i].name;
        std::filesystem::rename(temporaries[i], target, ec);
        if (ec) {
            cleanup();
            throw ConfigError("cannot move '{}' into place: {}", target.string(), ec.message());
        }
        written.push_back(std::move(target));
    }
    return written;
}

double round6(double value)
{
    double rounded = 0.0;
    parse_number(format_number(value), rounded);
    return rounded;
}

}
