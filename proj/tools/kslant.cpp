#include <iostream>

#include "kslant/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return kslant::cli::run(args, std::cout, std::cerr);
}
