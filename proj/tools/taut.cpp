#include "taut/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return taut::cli::run(argc, argv, std::cout, std::cerr); }
