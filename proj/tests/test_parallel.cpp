#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "nepcim/contour.hpp"
#include "nepcim/geometry.hpp"
#include "nepcim/parallel.hpp"
#include "nepcim/problems.hpp"

using nepcim::Complex;

TEST_CASE("parallel_map preserves input order") {
  std::vector<int> items = {1, 2, 3};
  auto out = nepcim::parallel_map(
      items, [](int x) { return x * x; }, 4);
  REQUIRE(out.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(out[i].value.has_value());
    CHECK(*out[i].value == items[i] * items[i]);
    CHECK(out[i].error.empty());
  }
}

TEST_CASE("parallel_map on an empty input returns an empty result") {
  std::vector<int> items;
  auto out = nepcim::parallel_map(
      items, [](int x) { return x; }, 8);
  CHECK(out.empty());
}

TEST_CASE("a throwing task fills its slot without aborting the rest") {
  std::vector<int> items = {0, 1, 2, 3, 4, 5, 6, 7};
  auto out = nepcim::parallel_map(
      items,
      [](int x) -> int {
        if (x == 3) throw std::runtime_error("boom at 3");
        return 10 * x;
      },
      4);
  REQUIRE(out.size() == items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i == 3) {
      CHECK_FALSE(out[i].value.has_value());
      CHECK(out[i].error == "boom at 3");
    } else {
      REQUIRE(out[i].value.has_value());
      CHECK(*out[i].value == 10 * static_cast<int>(i));
    }
  }
}

TEST_CASE("worker counts below two run sequentially") {
  std::vector<int> items = {5, 6};
  for (int workers : {0, 1}) {
    auto out = nepcim::parallel_map(
        items, [](int x) { return x + 1; }, workers);
    REQUIRE(out.size() == 2);
    CHECK(*out[0].value == 6);
    CHECK(*out[1].value == 7);
  }
}

TEST_CASE("indicator sweeps are bitwise identical across worker counts") {
  nepcim::PolynomialNEP qep = nepcim::appendix_qep();
  auto disks = nepcim::cover_rectangle(nepcim::Rectangle{-3, 3, -3, 3}, 15);
  nepcim::PortableRng rng(1);
  Eigen::VectorXcd f = rng.unit_vector(4);

  auto sweep = [&](int workers) {
    auto out = nepcim::parallel_map(
        disks,
        [&](const nepcim::Disk& d) {
          return nepcim::indicator(qep, d, f, 16);
        },
        workers);
    std::vector<double> vals;
    for (auto& o : out) {
      REQUIRE(o.value.has_value());
      vals.push_back(*o.value);
    }
    return vals;
  };

  auto base = sweep(1);
  REQUIRE(base.size() == 225);
  for (int workers : {4, 12}) {
    auto other = sweep(workers);
    REQUIRE(other.size() == base.size());
    CHECK(std::memcmp(base.data(), other.data(),
                      base.size() * sizeof(double)) == 0);
  }
}
