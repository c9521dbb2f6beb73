#include <iostream>

#include "warptrend/cli/commands.hpp"

int main(int argc, char** argv) { return warptrend::cli::run(argc, argv, std::cout, std::cerr); }
