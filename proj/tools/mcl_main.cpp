#include "mcl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return mcl::cli::run(argc, argv, std::cout, std::cerr);
}
