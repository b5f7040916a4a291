#include <iostream>
#include <string>
#include <vector>

#include "leafpower/cli.hpp"

int main(int argc, char** argv) {
    return leafpower::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
