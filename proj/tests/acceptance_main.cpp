// Acceptance driver: one pass/fail line per criterion, nonzero exit if any
// fail.  --criterion may repeat; no flags means the full suite.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "sse/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> which;
  std::uint64_t seed = 12345;
  int threads = 1;
  for (int i = 1; i < argc; ++i) {
    auto next = [&](const char* flag) -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "%s needs a value\n", flag);
        std::exit(2);
      }
      return argv[++i];
    };
    if (!std::strcmp(argv[i], "--criterion"))
      which.push_back(std::atoi(next("--criterion")));
    else if (!std::strcmp(argv[i], "--seed"))
      seed = std::strtoull(next("--seed"), nullptr, 10);
    else if (!std::strcmp(argv[i], "--threads"))
      threads = std::atoi(next("--threads"));
    else {
      std::fprintf(stderr,
                   "usage: sse_acceptance [--criterion k]... [--seed s] "
                   "[--threads n]\n");
      return 2;
    }
  }
  if (which.empty()) which = sse::all_criteria();

  bool all_pass = true;
  try {
    for (auto& r : sse::run_acceptance(which, seed, threads)) {
      all_pass = all_pass && r.pass;
      std::printf("criterion %2d  %-34s  %s  (%.1f s)  %s\n", r.id,
                  r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                  r.detail.c_str());
      std::fflush(stdout);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return all_pass ? 0 : 1;
}
