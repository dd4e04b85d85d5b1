#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "monopole/report.hpp"
#include "monopole/validation.hpp"

using namespace monopole;

TEST_CASE("suite names map to criteria") {
  CHECK(suite_criteria("roots") == std::vector<int>{1, 2});
  CHECK(suite_criteria("wigner") == std::vector<int>{3});
  CHECK(suite_criteria("lob-minj") == std::vector<int>{6, 7});
  CHECK(suite_criteria("heun") == std::vector<int>{10});
  const auto all = suite_criteria("all");
  REQUIRE(all.size() == 12);
  for (int i = 0; i < 12; ++i) CHECK(all[i] == i + 1);
  for (const auto& name : suite_names()) CHECK_NOTHROW(suite_criteria(name));
  CHECK_THROWS_AS(suite_criteria("nope"), DomainError);
  CHECK_THROWS_AS(run_suite("nope", 1), DomainError);
  CHECK_THROWS_AS(run_criterion(0), DomainError);
  CHECK_THROWS_AS(run_criterion(13), DomainError);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  for (int threads : {1, 3, 16}) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  std::atomic<int> done{0};
  CHECK_THROWS_AS(parallel_for(50, 4,
                               [&](std::size_t i) {
                                 ++done;
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  CHECK(done.load() == 50);
  parallel_for(0, 4, [](std::size_t) { FAIL("called on an empty range"); });
}

TEST_CASE("worker count follows the environment") {
  setenv("MONOPOLE_SPECTRA_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("MONOPOLE_SPECTRA_THREADS", "0", 1);
  CHECK_THROWS_AS(worker_count(), DomainError);
  setenv("MONOPOLE_SPECTRA_THREADS", "2x", 1);
  CHECK_THROWS_AS(worker_count(), DomainError);
  unsetenv("MONOPOLE_SPECTRA_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("root and parity criteria pass and runs are reproducible") {
  const auto a = run_suite("roots", 1);
  REQUIRE(a.criteria.size() == 2);
  CHECK(a.criteria[0].id == 1);
  CHECK(a.criteria[1].id == 2);
  CHECK(a.pass());
  CHECK(a.first_failure() == nullptr);
  CHECK(a.criteria[0].seconds < 10);

  const auto w1 = run_suite("wigner", 1), w4 = run_suite("wigner", 4);
  CHECK(w1.pass());
  CHECK(validation_table(w1) == validation_table(w4));
}

TEST_CASE("first_failure names the lowest failing id") {
  SuiteResult s;
  s.criteria.resize(3);
  for (int i = 0; i < 3; ++i) {
    s.criteria[i].id = i + 1;
    s.criteria[i].pass = i != 1;
  }
  CHECK_FALSE(s.pass());
  REQUIRE(s.first_failure() != nullptr);
  CHECK(s.first_failure()->id == 2);
}
