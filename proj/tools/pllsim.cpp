#include <iostream>

#include "pll/cli.hpp"

int main(int argc, char** argv) { return pll::run_cli(argc, argv, std::cout, std::cerr); }
