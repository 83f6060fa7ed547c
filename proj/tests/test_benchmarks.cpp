#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "imann/benchmarks.hpp"

using namespace imann;

TEST_CASE("polynomial target values") {
  CHECK(poly_target(0.0) == 0.0);
  CHECK(poly_target(1.0) == doctest::Approx(-5.0).epsilon(1e-15));
  CHECK(poly_target(2.0) == doctest::Approx(-38.0).epsilon(1e-15));
}

TEST_CASE("modified rosenbrock values") {
  const double ones[2] = {1.0, 1.0};
  const double zeros[2] = {0.0, 0.0};
  const double mixed[2] = {2.0, 1.0};
  CHECK(rosenbrock_target(ones) == 0.0);
  CHECK(rosenbrock_target(zeros) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rosenbrock_target(mixed) == doctest::Approx(82.0).epsilon(1e-15));

  const double one[1] = {1.0};
  CHECK_THROWS_AS(rosenbrock_target(one), std::invalid_argument);

  // Generic N: three components, two bracket terms.
  const double three[3] = {1.0, 1.0, 2.0};
  CHECK(rosenbrock_target(three) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rosenbrock is nonnegative and zero at all ones") {
  std::mt19937_64 engine(99);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double x[2] = {coord(engine), coord(engine)};
    CHECK(rosenbrock_target(x) >= 0.0);
  }
  const double ones[4] = {1.0, 1.0, 1.0, 1.0};
  CHECK(rosenbrock_target(ones) == 0.0);
}

TEST_CASE("registry lists f1..f9 in order") {
  const auto& registry = formulation_registry();
  REQUIRE(registry.size() == 9);
  CHECK(registry[0].id == "f1");
  CHECK(registry[8].id == "f9");
  for (int i = 0; i < 9; ++i) {
    CHECK(registry[static_cast<std::size_t>(i)].id == "f" + std::to_string(i + 1));
  }
  for (int i = 0; i < 4; ++i) {
    CHECK(registry[static_cast<std::size_t>(i)].subfunction_count == 1);
  }
  for (int i = 4; i < 9; ++i) {
    CHECK(registry[static_cast<std::size_t>(i)].subfunction_count == 2);
  }
  CHECK(find_formulation("f4").id == "f4");
  CHECK_THROWS_AS(find_formulation("f10"), std::invalid_argument);
}

TEST_CASE("combine evaluates the documented formulas") {
  const double x1[1] = {1.0};
  const double x2[1] = {2.0};
  const double s5[1] = {5.0};
  const double s1[1] = {1.0};
  CHECK(combine(find_formulation("f4"), x1, s5) == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(combine(find_formulation("f1"), x2, s1) == doctest::Approx(-38.0).epsilon(1e-15));

  const double xy[2] = {0.3, -0.1};
  const double z2[2] = {0.0, 0.0};
  CHECK(combine(find_formulation("f9"), xy, z2) == 0.0);

  const double s2[2] = {1.0, 2.0};
  CHECK_THROWS_AS(combine(find_formulation("f1"), x1, s2), std::invalid_argument);
  CHECK_THROWS_AS(combine(find_formulation("f9"), x1, s2), std::invalid_argument);
}

TEST_CASE("ideal subfunctions reproduce the paper forms") {
  const double x2[1] = {2.0};
  CHECK(ideal_subfunctions(find_formulation("f3"), x2) == std::vector<double>{4.0});
  CHECK(ideal_subfunctions(find_formulation("f1"), x2) == std::vector<double>{1.0});

  const double xy[2] = {2.0, 1.0};
  CHECK(ideal_subfunctions(find_formulation("f9"), xy) ==
        std::vector<double>{-3.0, -1.0});

  const double x3[1] = {3.0};
  CHECK(ideal_subfunctions(find_formulation("f8"), x3) ==
        std::vector<double>{243.0, -432.0});
}

TEST_CASE("combining the ideal subfunctions reproduces the target") {
  std::mt19937_64 engine(20240818);
  for (const ModelFormulation& f : formulation_registry()) {
    std::vector<std::uniform_real_distribution<double>> coords;
    for (const Interval& b : f.domain().bounds()) {
      coords.emplace_back(b.lo, b.hi);
    }
    std::vector<double> x(f.domain().dimension());
    for (int rep = 0; rep < 1000; ++rep) {
      for (std::size_t d = 0; d < x.size(); ++d) x[d] = coords[d](engine);
      const std::vector<double> s = ideal_subfunctions(f, x);
      REQUIRE(static_cast<int>(s.size()) == f.subfunction_count);
      const double combined = combine(f, x, s);
      const double expected = f.target.evaluate(x);
      const double tol = 1e-12 * std::max(1.0, std::abs(expected));
      CHECK(std::abs(combined - expected) <= tol);
    }
  }
}

TEST_CASE("f1..f8 share the polynomial target") {
  std::mt19937_64 engine(5);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  for (int i = 0; i < 8; ++i) {
    const ModelFormulation& f = formulation_registry()[static_cast<std::size_t>(i)];
    CHECK(f.dimension() == 1);
    CHECK(f.domain().bound(0).lo == -4.0);
    CHECK(f.domain().bound(0).hi == 4.0);
    for (int rep = 0; rep < 50; ++rep) {
      const double x[1] = {coord(engine)};
      CHECK(f.target.evaluate(x) == poly_target(x[0]));
    }
  }
  const ModelFormulation& f9 = formulation_registry()[8];
  CHECK(f9.dimension() == 2);
  CHECK(f9.domain().bound(0).lo == -1.4);
  CHECK(f9.domain().bound(0).hi == 1.6);
  CHECK(f9.domain().bound(1).lo == -0.25);
  CHECK(f9.domain().bound(1).hi == 3.75);
}
