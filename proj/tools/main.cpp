#include <iostream>

#include "latgauss/cli.hpp"

int main(int argc, char** argv) { return latgauss::run_cli(argc, argv, std::cout, std::cerr); }
