#include "r0colloc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return r0colloc::cli::main_entry(argc, argv, std::cout, std::cerr);
}
