#include <iostream>

#include "meadow/cli.hpp"

int main(int argc, char** argv) {
  return meadow::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
