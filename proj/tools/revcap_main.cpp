#include <iostream>
#include <vector>

#include "revcap/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return revcap::cli::run(args, std::cout, std::cerr);
}
