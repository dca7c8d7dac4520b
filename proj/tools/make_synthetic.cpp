// Writes a procedurally generated five-category dataset plus manifest, handy
// for trying the CLI without real photos.
#include <CLI11.hpp>

#include <iostream>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic weather dataset", "wxsp_synth"};
  std::string out_dir;
  int per_class = 100;
  int size = 64;
  std::uint64_t seed = 7;
  app.add_option("-o,--out", out_dir, "Output directory")->required();
  app.add_option("-n,--per-class", per_class, "Images per category")->check(CLI::PositiveNumber);
  app.add_option("-s,--size", size, "Image side length in pixels")->check(CLI::Range(8, 4096));
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);
  try {
    const auto manifest = wxsp::synthetic::write_dataset(out_dir, per_class, size, size, seed);
    std::cout << manifest.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
