#include <iostream>

#include "horpo/cli.hpp"

int main(int argc, char** argv) { return horpo::run_cli(argc, argv, std::cout, std::cerr); }
