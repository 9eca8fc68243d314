#include <iostream>

#include "oscdecay/cli.hpp"

int main(int argc, char** argv) {
  return oscdecay::cli::run(argc, argv, std::cout, std::cerr);
}
