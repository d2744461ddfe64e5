#include <iostream>

#include "nlgap/lab/cli.hpp"

int main(int argc, char** argv) { return nlgap::lab::cli_main(argc, argv, std::cout, std::cerr); }
