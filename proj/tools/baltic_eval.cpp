#include <iostream>

#include "baltic/cli.hpp"

int main(int argc, char** argv) { return baltic::run_cli(argc, argv, std::cout, std::cerr); }
