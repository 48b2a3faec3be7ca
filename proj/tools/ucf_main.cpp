#include <iostream>
#include <string>
#include <vector>

#include "ucf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return ucf::run_cli(args, std::cout, std::cerr);
}
