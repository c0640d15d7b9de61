#include "dbcoh_cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return dbcoh::cli::main_entry(argc, argv, std::cout, std::cerr); }
