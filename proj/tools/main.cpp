#include <iostream>
#include <string>
#include <vector>

#include "lagcorr/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return lagcorr::cli::run(args, std::cout, std::cerr);
}
