#include <iostream>
#include <string>
#include <vector>

#include "gausscrit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return gausscrit::cli::run(args, std::cout, std::cerr);
}
