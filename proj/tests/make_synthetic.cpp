// Writes the synthetic corpus: make_synthetic <output-dir>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "support/synthetic.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_synthetic <output-dir>\n";
    return 1;
  }
  const std::filesystem::path root = argv[1];
  for (const auto& [rel, body] : synthetic::corpus_files()) {
    const auto path = root / rel;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << body;
  }
  return 0;
}
