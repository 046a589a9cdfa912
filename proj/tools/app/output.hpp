#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace minecast::app {

/// Files produced by one command. Nothing touches the disk until commit(),
/// which writes every file to a temporary name first and then renames them
/// into place, so a failed command leaves no partial outputs.
class OutputSet
{
public:
    explicit OutputSet(std::filesystem::path directory);

    void add(std::string fileName, std::string content);

    const std::filesystem::path& directory() const noexcept
    {
        return _directory;
    }

    std::vector<std::filesystem::path> commit() const;

private:
    struct File
    {
        std::string name;
        std::string content;
    };

    std::filesystem::path _directory;
    std::vector<File> _files;
};

/// Rounds to six significant digits so JSON output matches the CSV precision.
double round6(double value);

}
