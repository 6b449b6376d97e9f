// Writes the shipped data files and their checksum manifest.

#include <iostream>

#include "hfbord/builtins.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: hfbord-gen-data <data-dir>\n";
    return 4;
  }
  hfb::write_builtins(argv[1]);
  return 0;
}
