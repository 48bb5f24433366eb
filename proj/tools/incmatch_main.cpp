#include <iostream>

#include "incmatch/cli.hpp"

int main(int argc, char** argv) { return incmatch::run_cli(argc, argv, std::cout, std::cerr); }
