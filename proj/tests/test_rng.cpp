#include <doctest.h>

#include <vector>

#include "albsim/rng.hpp"

using albsim::Rng;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("different stream salts decorrelate") {
  Rng a(albsim::derive_seed(7, 1));
  Rng b(albsim::derive_seed(7, 2));
  int equal = 0;
  for (int i = 0; i < 1000; ++i)
    if (a.next() == b.next()) ++equal;
  CHECK(equal == 0);
}

TEST_CASE("uniform stays in [0,1) and covers the range") {
  Rng rng(1);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
}

TEST_CASE("uniform_int covers the inclusive range evenly") {
  Rng rng(3);
  std::vector<int> counts(101, 0);
  for (int i = 0; i < 101000; ++i) ++counts[rng.uniform_int(50, 150) - 50];
  for (int c : counts) {
    CHECK(c > 700);
    CHECK(c < 1300);
  }
}

TEST_CASE("categorical respects the probability masses") {
  Rng rng(9);
  const std::vector<double> pd = {0.5, 0.25, 0.25};
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 40000; ++i) ++counts[rng.categorical(pd)];
  CHECK(counts[0] > 19000);
  CHECK(counts[0] < 21000);
  CHECK(counts[1] > 9200);
  CHECK(counts[1] < 10800);
}
