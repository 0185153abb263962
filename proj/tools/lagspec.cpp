#include "lagspec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lagspec::run_cli(argc, argv, std::cout, std::cerr); }
