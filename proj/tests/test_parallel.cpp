#include "ppdyn/parallel.hpp"

#include <doctest.h>

#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

using namespace ppdyn;

TEST_CASE("every index is visited once") {
  for (unsigned w : {1u, 3u, 8u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, w);
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("the first exception is rethrown after the workers join") {
  CHECK_THROWS_AS(parallel_for(
                      100, [](std::size_t i) { if (i == 57) throw std::runtime_error("boom"); }, 4),
                  std::runtime_error);
}

TEST_CASE("TOOL_THREADS caps the worker count") {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  setenv("TOOL_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  setenv("TOOL_THREADS", "100000", 1);
  CHECK(worker_count() == hw);
  setenv("TOOL_THREADS", "junk", 1);
  CHECK(worker_count() == hw);
  unsetenv("TOOL_THREADS");
  CHECK(worker_count() == hw);
}
