#include <iostream>
#include <vector>

#include "ccbil/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ccb::cli_run(args, std::cout, std::cerr);
}
