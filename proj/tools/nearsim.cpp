#include <iostream>

#include "nearsim/cli.hpp"

int main(int argc, char** argv) { return nearsim::cli::main(argc, argv, std::cout, std::cerr); }
