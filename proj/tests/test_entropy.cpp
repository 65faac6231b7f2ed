#include <doctest.h>

#include "bcs/entropy.hpp"

using namespace bcs;

TEST_CASE("zero-order entropy") {
  CHECK(zero_order_entropy(QuantIndexVector{5, -2}) == doctest::Approx(1.0));
  CHECK(zero_order_entropy(QuantIndexVector{3, 3, 3, 3}) == 0.0);
  CHECK(zero_order_entropy(QuantIndexVector{0, 1, 2, 3}) == doctest::Approx(2.0));
  // p = {1/2, 1/4, 1/4}
  CHECK(zero_order_entropy(QuantIndexVector{0, 0, 1, -1}) == doctest::Approx(1.5));
}

TEST_CASE("pooling ignores block boundaries") {
  const std::vector<QuantIndexVector> blocks{{0, 1}, {2, 3}, {0, 0}};
  CHECK(zero_order_entropy(blocks) == doctest::Approx(zero_order_entropy(QuantIndexVector{0, 1, 2, 3, 0, 0})));
  const std::vector<QuantIndexVector> other{{0}, {1, 2, 3, 0}, {0}};
  CHECK(zero_order_entropy(other) == doctest::Approx(zero_order_entropy(blocks)));
}

TEST_CASE("bits per pixel") {
  CHECK(bpp_from_entropy(1.0, 100, 100) == 1.0);
  CHECK(bpp_from_entropy(0.0, 100, 100) == 0.0);
  CHECK(bpp_from_entropy(2.0, 25, 100) == 0.5);
}
