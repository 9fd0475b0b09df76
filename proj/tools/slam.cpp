#include <iostream>

#include "sizedtypes/cli.hpp"

int main(int argc, char** argv) { return st::run_cli(argc, argv, std::cout, std::cerr); }
