#include <iostream>
#include <string>
#include <vector>

#include "bachvol/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return bachvol::cli::run(args, std::cout, std::cerr);
}
