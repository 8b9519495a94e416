#include <iostream>

#include "orbitgauge/cli.hpp"

int main(int argc, char** argv) { return orbitgauge::cli::run(argc, argv, std::cout, std::cerr); }
