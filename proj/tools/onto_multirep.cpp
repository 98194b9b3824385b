#include <iostream>

#include "ontorep/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ontorep::cli::run(args, std::cout, std::cerr);
}
