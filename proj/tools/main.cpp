#include <iostream>

#include "sccsa/cli.hpp"

int main(int argc, char** argv) { return sccsa::cli::run_cli(argc, argv, std::cout, std::cerr); }
