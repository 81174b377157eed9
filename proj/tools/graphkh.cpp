#include <iostream>
#include <string>
#include <vector>

#include "graphkh/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return graphkh::cli::run(std::move(args), std::cout, std::cerr);
}
