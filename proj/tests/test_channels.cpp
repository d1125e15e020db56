#include <doctest.h>

#include <algorithm>

#include "bicgrate/bound_states.hpp"

using namespace bicgrate;

namespace {

// Brute-force open channel list from the defining inequality.
std::vector<int> open_by_inequality(double k, double kx) {
  std::vector<int> out;
  for (int m = -20; m <= 20; ++m)
    if ((kx + kTwoPi * m) * (kx + kTwoPi * m) <= k * k) out.push_back(m);
  return out;
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("kx is reduced to (-pi, pi]") {
  CHECK(BlochPoint(1.0, kTwoPi + 0.3).kx() == doctest::Approx(0.3));
  CHECK(BlochPoint(1.0, -kPi).kx() == doctest::Approx(kPi));
  CHECK(std::abs(BlochPoint(1.0, 7.0).kx()) <= kPi);
  CHECK_THROWS_AS(BlochPoint(0.0, 0.1), std::invalid_argument);
}

TEST_CASE("channel wavenumbers follow the branch convention") {
  auto open = channel_wavenumber(BlochPoint(1.0, 0.5), 0);
  CHECK(open.is_open);
  CHECK(open.value.real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
  CHECK(open.value.imag() == 0.0);

  auto closed = channel_wavenumber(BlochPoint(0.5, 1.0), 0);
  CHECK_FALSE(closed.is_open);
  CHECK(closed.value.real() == 0.0);
  CHECK(closed.value.imag() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
  CHECK(closed.q == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));

  auto edge = channel_wavenumber(BlochPoint(9 * kPi / 5, kPi / 5), -1);
  CHECK(edge.is_open);
  CHECK(std::abs(edge.value) < 1e-6);
}

TEST_CASE("open channel lists") {
  CHECK(open_channels(BlochPoint(0.5, 1.0)).empty());
  CHECK(open_channels(BlochPoint(kPi, kPi / 5)) == std::vector<int>{0});
  CHECK(open_channels(BlochPoint(kTwoPi, kPi / 2)) == std::vector<int>{-1, 0});
}

TEST_CASE("open channels agree with the inequality at random points") {
  unsigned s = 12345;
  auto u = [&] {
    s = s * 1103515245u + 12345u;
    return double((s >> 8) & 0xFFFF) / 65536.0;
  };
  for (int i = 0; i < 200; ++i) {
    double k = 0.05 + 25.0 * u(), kx = kPi * (2.0 * u() - 1.0);
    auto got = open_channels(BlochPoint(k, kx));
    CHECK(got == open_by_inequality(k, kx));
    CHECK(classify(BlochPoint(k, kx)).open_count == int(got.size()));
  }
}

TEST_CASE("thresholds") {
  auto zero = thresholds(0.0, 2);
  REQUIRE(zero.size() == 5);
  CHECK(zero[0].energy == 0.0);
  CHECK(zero[1].energy == doctest::Approx(4 * kPi * kPi));
  CHECK(zero[2].energy == doctest::Approx(4 * kPi * kPi));
  CHECK(zero[3].energy == doctest::Approx(16 * kPi * kPi));
  CHECK(zero[4].energy == doctest::Approx(16 * kPi * kPi));

  auto edge = thresholds(kPi, 1);
  CHECK(edge[0].energy == doctest::Approx(kPi * kPi));
  CHECK(edge[1].energy == doctest::Approx(kPi * kPi));

  auto fig = thresholds(kPi / 5, 1);
  CHECK(fig[1].order == -1);
  CHECK(fig[1].energy == doctest::Approx(81 * kPi * kPi / 25));
  for (std::size_t i = 1; i < fig.size(); ++i) CHECK(fig[i - 1].energy <= fig[i].energy);
}

TEST_CASE("region classification") {
  CHECK(classify(BlochPoint(0.5, 1.0)).below());
  CHECK(region_name(classify(BlochPoint(0.5, 1.0))) == "below");
  auto one = classify(BlochPoint(kPi, kPi / 5));
  CHECK_FALSE(one.below());
  CHECK(one.open_count == 1);
  CHECK(region_name(one) == "continuum-1");
  auto t = diophantine_point({3, 2, 1});
  CHECK(classify(BlochPoint(t.k, t.kx)).open_count == 3);
  CHECK(classify(BlochPoint(7.5536, 3 * kPi / 13)).open_count == 3);
}

}  // TEST_SUITE
