#include <iostream>

#include "equitile/cli.hpp"

int main(int argc, char** argv) { return equitile::run_cli(argc, argv, std::cout, std::cerr); }
