#include <iostream>
#include <string>
#include <vector>

#include "dagcons/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dagcons::run_cli(args, std::cout, std::cerr);
}
