// Runs acceptance criteria by id (all ten when no id is given) and prints
// one pass/fail line per criterion. Exit status is nonzero if any fails.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "slowsound/acceptance.hpp"
#include "slowsound/parallel.hpp"

int main(int argc, char** argv) {
  using namespace slowsound;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > acceptance::kCriterionCount) {
      std::fprintf(stderr, "acceptance: criterion id must be 1..%d, got '%s'\n",
                   acceptance::kCriterionCount, argv[i]);
      return 2;
    }
    ids.push_back(id);
  }
  if (ids.empty()) {
    for (int id = 1; id <= acceptance::kCriterionCount; ++id) ids.push_back(id);
  }
  bool all = true;
  for (int id : ids) {
    const auto r = acceptance::run_criterion(id, parallel::default_threads());
    std::printf("%s\n", acceptance::summary_line(r).c_str());
    all = all && r.passed();
  }
  return all ? 0 : 1;
}
