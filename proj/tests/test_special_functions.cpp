#include <doctest.h>

#include <cmath>
#include <limits>

#include "aivalue/special_functions.hpp"

using namespace aivalue;

// Reference values from scipy 1.15 / mpmath at 40 digits.
TEST_CASE("regularized incomplete beta") {
  CHECK(incomplete_beta(2, 3, 0.4) == doctest::Approx(0.5248).epsilon(1e-13));
  CHECK(incomplete_beta(0.5, 5, 0.2) == doctest::Approx(0.8550723945959195).epsilon(1e-13));
  CHECK(incomplete_beta(10, 0.5, 0.95) == doctest::Approx(0.31715157546554507).epsilon(1e-12));
  CHECK(incomplete_beta(3, 4, 0.0) == 0.0);
  CHECK(incomplete_beta(3, 4, 1.0) == 1.0);
}

TEST_CASE("student t") {
  CHECK(student_t_two_sided(2.0, 5) == doctest::Approx(0.10193947882985828).epsilon(1e-12));
  CHECK(student_t_two_sided(0.5, 1) == doctest::Approx(0.7048327646991336).epsilon(1e-12));
  CHECK(student_t_two_sided(-3.1, 12) == doctest::Approx(0.009189996378391328).epsilon(1e-11));
  CHECK(student_t_two_sided(10, 30) == doctest::Approx(4.5752514082296097e-11).epsilon(1e-10));
  CHECK(student_t_two_sided(1.96, 1000) == doctest::Approx(0.05027318495574871).epsilon(1e-11));
  CHECK(student_t_two_sided(0.0, 7) == 1.0);
  CHECK(student_t_two_sided(std::numeric_limits<double>::infinity(), 7) == 0.0);
  CHECK(student_t_cdf(2.0, 5) == doctest::Approx(0.9490302605850709).epsilon(1e-12));
  CHECK(student_t_cdf(-3.1, 12) == doctest::Approx(0.004594998189195664).epsilon(1e-11));
}

TEST_CASE("F upper tail") {
  CHECK(f_upper_tail(3.5, 2, 10) == doctest::Approx(0.07042962777237427).epsilon(1e-12));
  CHECK(f_upper_tail(1.0, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f_upper_tail(15.0, 1, 197) == doctest::Approx(0.00014624545238243152).epsilon(1e-11));
  CHECK(f_upper_tail(0.2, 4, 20) == doctest::Approx(0.9353965414511058).epsilon(1e-12));
  CHECK(f_upper_tail(0.0, 3, 9) == 1.0);
}

TEST_CASE("normal upper tail") {
  CHECK(normal_upper_tail(0.0) == 0.5);
  CHECK(normal_upper_tail(1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-14));
  CHECK(normal_upper_tail(1.959963984540054) == doctest::Approx(0.025).epsilon(1e-13));
  CHECK(normal_upper_tail(5.0) == doctest::Approx(2.866515718791933e-07).epsilon(1e-13));
}
