#include <iostream>

#include "sdream/cli.hpp"

int main(int argc, char** argv) { return sdream::cli::run(argc, argv, std::cout, std::cerr); }
