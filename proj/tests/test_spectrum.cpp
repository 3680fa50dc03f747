#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ordspec/error.hpp"
#include "ordspec/spectrum.hpp"
#include "test_support.hpp"

using namespace ordspec;
using ordspec::testing::random_signal;

namespace {

double max_abs(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (auto c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("dft_naive hand-evaluated cases") {
  const auto dc = dft_naive(std::vector<double>{1, 1, 1, 1});
  CHECK(std::abs(dc[0] - std::complex<double>(4, 0)) < 1e-12);
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(dc[k]) < 1e-12);

  // [1,0,-1,0]: X_1 = 1 - e^{-j*pi} = 2, X_3 = 1 - e^{-j*3pi} = 2.
  const auto alt = dft_naive(std::vector<double>{1, 0, -1, 0});
  CHECK(std::abs(alt[0]) < 1e-12);
  CHECK(std::abs(alt[1] - std::complex<double>(2, 0)) < 1e-12);
  CHECK(std::abs(alt[2]) < 1e-12);
  CHECK(std::abs(alt[3] - std::complex<double>(2, 0)) < 1e-12);

  const auto zero = dft_naive(std::vector<double>{0, 0});
  CHECK(zero.size() == 2);
  CHECK(std::abs(zero[0]) == 0.0);
  CHECK(std::abs(zero[1]) == 0.0);
}

TEST_CASE("dft_naive agrees with the long-double definition") {
  std::mt19937_64 rng(11);
  for (std::size_t len : {2u, 6u, 10u, 32u, 50u}) {
    const auto s = random_signal(rng, len);
    const auto got = dft_naive(s);
    const auto want = ordspec::testing::dft_definition(s);
    const double scale = max_abs(want);
    for (std::size_t k = 0; k < len; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-12 * scale);
  }
}

TEST_CASE("dft_naive rejects bad input") {
  CHECK_THROWS_AS(dft_naive(std::vector<double>{}), DataError);
  CHECK_THROWS_AS(dft_naive(std::vector<double>{1, 2, 3}), DataError);
  CHECK_THROWS_AS(dft_naive(std::vector<double>{1, NAN}), DataError);
  CHECK_THROWS_AS(dft_naive(std::vector<double>{1, INFINITY}), DataError);
}

TEST_CASE("conjugate symmetry of real-input DFT") {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 128; n += 9) {
    const auto s = random_signal(rng, 2 * n);
    const auto x = dft_naive(s);
    for (std::size_t k = 1; k < n; ++k) {
      CHECK(std::abs(x[2 * n - k] - std::conj(x[k])) <= 1e-9);
    }
  }
}

TEST_CASE("fast transform matches the naive DFT for every even length 4..256") {
  std::mt19937_64 rng(5);
  for (std::size_t len = 4; len <= 256; len += 2) {
    const auto s = random_signal(rng, len);
    const auto fast = dft_fast(s);
    const auto slow = dft_naive(s);
    const double scale = max_abs(slow);
    double worst = 0.0;
    for (std::size_t k = 0; k < len; ++k) worst = std::max(worst, std::abs(fast[k] - slow[k]));
    CHECK_MESSAGE(worst <= 1e-9 * scale, "len=" << len);
  }
}

TEST_CASE("power_spectrum examples") {
  const auto dc = power_spectrum(std::vector<double>{1, 1, 1, 1});
  REQUIRE(dc.size() == 2);
  CHECK(dc.values[0] == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(dc.values[1] == doctest::Approx(0.0).epsilon(1e-14));

  const auto alt = power_spectrum(std::vector<double>{1, 0, -1, 0});
  CHECK(std::abs(alt.values[0]) < 1e-12);
  CHECK(alt.values[1] == doctest::Approx(4.0).epsilon(1e-14));

  CHECK(alt.grid_frequency(0) == 0.0);
  CHECK(alt.grid_frequency(1) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("power_spectrum preconditions") {
  CHECK_THROWS_AS(power_spectrum(std::vector<double>{1, 2}), DataError);
  CHECK_THROWS_AS(power_spectrum(std::vector<double>{1, 2, 3, 4, 5}), DataError);
  CHECK_THROWS_AS(power_spectrum(std::vector<double>{1, 2, NAN, 4}), DataError);
}

TEST_CASE("Parseval identity over the full transform") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t len = 4 + 2 * (rng() % 200);
    const auto s = random_signal(rng, len);
    const auto x = dft_fast(s);
    double lhs = 0.0;
    for (auto c : x) lhs += std::norm(c);
    double energy = 0.0;
    for (double v : s) energy += v * v;
    CHECK(ordspec::testing::rel_close(lhs, static_cast<double>(len) * energy, 1e-9));
  }
}

TEST_CASE("spectral_entropy examples") {
  CHECK(spectral_entropy(std::vector<double>{1, 1, 1, 1}) == doctest::Approx(std::log(4.0)));
  CHECK(spectral_entropy(std::vector<double>{0, 4}) == 0.0);
  CHECK(spectral_entropy(std::vector<double>{0.5, 0.5, 0, 0}) == doctest::Approx(std::log(2.0)));
  CHECK(spectral_entropy(std::vector<double>{1, 1, 1, 1}, LogBase::two) == doctest::Approx(2.0));
  CHECK(spectral_entropy(std::vector<double>{1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, LogBase::ten) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(spectral_entropy(std::vector<double>{0, 0, 0}), NumericError);
  CHECK_THROWS_AS(spectral_entropy(std::vector<double>{1, -1}), DataError);
}

TEST_CASE("spectral_entropy bounds, permutation and scale invariance") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = ordspec::testing::random_spectrum(rng, 2 + rng() % 100);
    const double h = spectral_entropy(p);
    CHECK(h >= 0.0);
    CHECK(h <= std::log(static_cast<double>(p.size())) + 1e-12);

    auto shuffled = p;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(std::abs(spectral_entropy(shuffled) - h) < 1e-12);

    auto scaled = p;
    const double alpha = std::exp(std::uniform_real_distribution<double>(-10, 10)(rng));
    for (auto& v : scaled) v *= alpha;
    CHECK(std::abs(spectral_entropy(scaled) - h) < 1e-12);
  }
}
