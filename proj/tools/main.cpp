#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hybridnoise/errors.hpp"

int main(int argc, char** argv) {
  using namespace hybridnoise;
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const cli::RunConfig cfg = cli::parse_args(args);
    return cli::run(cfg);
  } catch (const cli::HelpRequested& e) {
    std::cout << e.what();
    return 0;
  } catch (const cli::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedRateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // Numerical failures: inadequate truncation, quadrature non-convergence,
    // degenerate mixtures.
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
