#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace minecast::app {

/// Runs the command line. Returns the process exit code:
/// 0 success, 1 configuration error, 2 dataset error, 3 numeric error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}
