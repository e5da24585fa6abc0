#include <iostream>
#include <string>
#include <vector>

#include "fracmc/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fracmc::cli::run(args, std::cout, std::cerr);
}
