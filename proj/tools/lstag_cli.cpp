#include <iostream>
#include <string>
#include <vector>

#include "lstag/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lstag::run_cli(args, std::cout, std::cerr, lstag::color_from_env());
}
