#include <iostream>

#include "eon/cli.hpp"

int main(int argc, char** argv) { return eon::run_cli(argc, argv, std::cout, std::cerr); }
