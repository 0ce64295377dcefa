#include <iostream>

#include "koszul/cli.hpp"

int main(int argc, char** argv) {
    return koszul::cli::main_from_argv(argc, argv, std::cout, std::cerr);
}
