// Runs the acceptance criteria; optional arguments select criteria by number.
#include <cstdlib>
#include <iostream>
#include <string>

#include "halfheat/acceptance.hpp"
#include "halfheat/config.hpp"
#include "halfheat/errors.hpp"

int main(int argc, char** argv) {
  using namespace halfheat;
  try {
    AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) opt.only.push_back(std::stoi(argv[i]));
    opt.threads = resolve_threads(0);
    opt.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
    int failed = 0;
    for (const auto& r : run_acceptance(opt))
      if (!r.passed) ++failed;
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
