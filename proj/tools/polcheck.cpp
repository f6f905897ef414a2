#include <iostream>

#include "polcheck/cli/cli.h"

int main(int argc, char** argv) {
    return polcheck::cli::run_cli(argc, argv, std::cout, std::cerr);
}
