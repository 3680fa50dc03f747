#include <iostream>

#include "ordspec/cli.hpp"

int main(int argc, char** argv) {
  return ordspec::cli::main_entry(argc, argv, std::cout, std::cerr);
}
