#include <iostream>

#include "ta/cli.hpp"

int main(int argc, char** argv) { return ta::cli::run(argc, argv, std::cout, std::cerr); }
