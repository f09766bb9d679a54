#include <iostream>
#include <string>
#include <vector>

#include "causalpath/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return causalpath::cli::run(args, std::cout, std::cerr);
}
