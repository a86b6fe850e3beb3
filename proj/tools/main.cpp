#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return pathwise::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
