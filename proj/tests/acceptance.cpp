// Acceptance gate: one PASS/FAIL line per criterion. Arguments select
// criteria by number (default: all); --quick reduces replicate counts,
// --no-long-tests skips the n = 5 enumeration, --workers=K sets threads.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "planarmap/experiments.hpp"

int main(int argc, char** argv) {
  planarmap::VerifyOptions opts;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") opts.full_scale = false;
    else if (a == "--no-long-tests") opts.long_tests = false;
    else if (a.rfind("--workers=", 0) == 0) opts.workers = std::stoul(a.substr(10));
    else if (a.rfind("--seed=", 0) == 0) opts.seed = std::stoull(a.substr(7));
    else only.push_back(std::stoi(a));
  }
  bool all = true;
  for (const auto& r : planarmap::run_verify_all(opts, only)) {
    all = all && r.passed();
    std::cout << (r.passed() ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title
              << " (" << r.seconds << " s)\n";
    for (const auto& c : r.checks)
      std::cout << "    " << (c.passed ? "ok   " : (c.gate ? "FAIL " : "info ")) << c.name
                << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
