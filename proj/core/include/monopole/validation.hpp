#pragma once

// Acceptance suites: each numbered criterion recomputes its quantities,
// compares them with independent oracles and reports the worst deviation.
// Shared by the command-line driver and the acceptance test binary.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "monopole/oracle.hpp"

namespace monopole {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured worst value and the bound it is compared with.
  double measured = 0;
  double threshold = 0;
  std::string detail;
  /// Parts of the criterion that are reported but never gate the result.
  std::vector<std::string> informational;
  double seconds = 0;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();
/// Criterion ids run by a suite. Throws DomainError for an unknown name.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs one criterion (1–12). Oracle comparisons are appended to `report`
/// when given. Criterion 12 reruns other criteria to check determinism and
/// compares `elapsed_before` plus its own time with the runtime budget.
/// Any error inside a criterion becomes a FAIL with the message in
/// `detail`; only an id outside 1..12 throws (DomainError).
CriterionResult run_criterion(int id, OracleReport* report = nullptr, double elapsed_before = 0);

struct SuiteResult {
  std::string suite;
  std::vector<CriterionResult> criteria;  // ascending id
  OracleReport report;
  bool pass() const;
  /// First failing criterion, or nullptr.
  const CriterionResult* first_failure() const;
};

/// Runs the suite's criteria on `threads` workers (criterion 12 last, after
/// the rest); results and report entries are ordered by criterion id.
SuiteResult run_suite(const std::string& suite, int threads);

/// Worker count from MONOPOLE_SPECTRA_THREADS (positive integer), else the
/// hardware concurrency. Throws DomainError for a malformed value.
int worker_count();

/// Calls f(i) for i in [0, n) on up to `threads` threads. The first
/// exception thrown by any call is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  const std::size_t workers = std::min<std::size_t>(n, threads > 1 ? static_cast<std::size_t>(threads) : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace monopole
