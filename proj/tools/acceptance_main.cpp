#include <cstdio>
#include <cstdlib>
#include <string>

#include "rcm/acceptance.hpp"

int main(int argc, char** argv) {
    int threads = 1;
    if (const char* env = std::getenv("RCM_LAB_THREADS")) threads = std::atoi(env);
    if (argc > 1) threads = std::atoi(argv[1]);
    if (threads < 1) threads = 1;
    const auto results = rcm::run_acceptance(true, threads);
    const bool ok = rcm::all_passed(results);
    std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
    return ok ? 0 : 1;
}
