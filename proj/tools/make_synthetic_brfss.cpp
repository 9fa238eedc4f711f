// Writes a BRFSS-shaped CSV for demos and timing when the survey file is not
// available.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "diabpred/dataset.hpp"
#include "diabpred/error.hpp"
#include "diabpred/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic BRFSS-shaped health-indicators CSV"};
  std::size_t rows = 253680;
  std::uint64_t seed = 42;
  std::string out;
  app.add_option("--rows", rows, "Number of rows")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("out", out, "Output CSV path")->required();
  CLI11_PARSE(app, argc, argv);
  try {
    diabpred::write_csv(diabpred::synthetic_brfss(rows, seed), out);
  } catch (const diabpred::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
