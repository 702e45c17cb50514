#include <iostream>

#include "binexceed/cli/cli.hpp"

int main(int argc, char** argv) { return binexceed::cli::run(argc, argv, std::cout, std::cerr); }
