// Runs every acceptance criterion and prints one line per criterion.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "fminlab/verify.hpp"

#ifndef FMINLAB_CLI
#error "FMINLAB_CLI must name the fminlab executable"
#endif
#ifndef FMINLAB_CONFIGS
#error "FMINLAB_CONFIGS must name the shipped scenario directory"
#endif

namespace {

constexpr double kEndToEndBudgetSeconds = 120.0;

int exit_status(int raw) { return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1; }

}  // namespace

int main(int argc, char** argv) {
  const std::string report = argc > 1 ? argv[1] : "acceptance_verify_all.json";
  bool all = true;
  for (int id : fminlab::criterion_ids()) {
    const fminlab::CriterionResult r = fminlab::run_criterion(id);
    all = all && r.pass;
    std::cout << fminlab::summary_line(r) << std::endl;
  }

  // End to end: the binary runs criteria 1 to 11 plus the shipped scenarios.
  const std::string command = std::string("\"") + FMINLAB_CLI + "\" verify-all --config \"" + FMINLAB_CONFIGS +
                              "\" --out \"" + report + "\" 2> /dev/null";
  const auto start = std::chrono::steady_clock::now();
  const int status = exit_status(std::system(command.c_str()));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = status == 0 && seconds < kEndToEndBudgetSeconds;
  all = all && pass;
  std::cout << "criterion 12 " << (pass ? "PASS" : "FAIL") << " verify-all end to end (exit " << status << ", "
            << seconds << " s of " << kEndToEndBudgetSeconds << " s)" << std::endl;

  std::cout << (all ? "all acceptance criteria pass" : "acceptance FAILED") << std::endl;
  return all ? 0 : 1;
}
