#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return eopctl::run(argc, argv, std::cout, std::cerr); }
