#include <iostream>

#include "schwinger/cli.hpp"

int main(int argc, char** argv) { return schwinger::run_cli(argc, argv, std::cout, std::cerr); }
