#include <iostream>

#include "pgraph/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pgraph::cli::run(args, std::cout, std::cerr);
}
