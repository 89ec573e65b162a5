#include <iostream>

#include "seplen/cli.hpp"

int main(int argc, char** argv) { return seplen::cli::main_entry(argc, argv, std::cout, std::cerr); }
