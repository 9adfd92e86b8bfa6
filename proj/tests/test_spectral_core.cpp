#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "fracgs/error.hpp"
#include "fracgs/field_io.hpp"
#include "fracgs/spectral_field.hpp"
#include "test_support.hpp"

using namespace fracgs;
using fracgs::testing::random_band_limited;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an fracgs::Error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("make_grid layout") {
  const Grid1D g = make_grid(std::numbers::pi, 16);
  CHECK(g.spacing() == doctest::Approx(2.0 * std::numbers::pi / 16).epsilon(1e-15));
  CHECK(g.frequency_step() == doctest::Approx(1.0).epsilon(1e-15));
  std::set<long> modes;
  for (Eigen::Index m = 0; m < g.size(); ++m) modes.insert(std::lround(g.frequency(m)));
  CHECK(modes == std::set<long>{-8, -7, -6, -5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(g.frequency(0) == 0.0);
  CHECK(g.frequency(g.nyquist_index()) == doctest::Approx(-8.0));
  for (Eigen::Index m = 1; m < g.nyquist_index(); ++m) {
    CHECK(g.frequency(m) == -g.frequency(g.size() - m));
  }
  CHECK(g.point(0) == doctest::Approx(-std::numbers::pi));

  const Grid1D d = make_grid(64.0, 4096);
  CHECK(d.spacing() == 0.03125);
  CHECK(d.spacing() * static_cast<double>(d.size()) == 2.0 * d.half_width());
}

TEST_CASE("make_grid rejects bad parameters") {
  CHECK(code_of([] { make_grid(1.0, 15); }) == ErrorCode::OddN);
  CHECK(code_of([] { make_grid(1.0, 8); }) == ErrorCode::OddN);
  CHECK(code_of([] { make_grid(0.0, 16); }) == ErrorCode::NonPositiveL);
  CHECK(code_of([] { make_grid(-2.0, 16); }) == ErrorCode::NonPositiveL);
}

TEST_CASE("pure mode has spectrum on +-w1 only") {
  const Grid1D g = make_grid(64.0, 4096);
  const double w1 = 5.0 * g.frequency_step();
  const SpectralField u = SpectralField::sample(g, [&](double t) { return std::cos(w1 * t); });
  double off = 0.0;
  for (Eigen::Index m = 0; m < g.size(); ++m) {
    if (m == 5 || m == g.size() - 5) {
      // h * sum cos^2 = L at each of the two modes
      CHECK(std::abs(u.spectrum()[m]) == doctest::Approx(g.half_width()).epsilon(1e-12));
    } else {
      off = std::max(off, std::abs(u.spectrum()[m]));
    }
  }
  CHECK(off < 1e-10);

  const SpectralField z = SpectralField::zero(g);
  CHECK(z.spectrum().cwiseAbs().maxCoeff() == 0.0);
  CHECK(SpectralField::from_values(g, Eigen::VectorXd::Zero(g.size())).spectrum().norm() == 0.0);
}

TEST_CASE("Gaussian matches its analytic Fourier transform") {
  const Grid1D g = make_grid(64.0, 4096);
  const SpectralField u = SpectralField::sample(g, [](double t) { return std::exp(-0.5 * t * t); });
  double worst = 0.0;
  for (Eigen::Index m = 0; m < g.size(); ++m) {
    const double w = g.frequency(m);
    const std::complex<double> exact = std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * w * w);
    worst = std::max(worst, std::abs(u.spectrum()[m] - exact));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("non-finite values are rejected") {
  const Grid1D g = make_grid(1.0, 16);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(16);
  v[3] = std::nan("");
  CHECK(code_of([&] { SpectralField::from_values(g, v); }) == ErrorCode::NonFinite);
  v[3] = INFINITY;
  CHECK(code_of([&] { SpectralField::from_values(g, v); }) == ErrorCode::NonFinite);
}

TEST_CASE("round trip and Plancherel on random fields") {
  const Grid1D g = make_grid(64.0, 4096);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd v(g.size());
    for (auto& x : v) x = normal(rng);
    const SpectralField u = SpectralField::from_values(g, v);
    const double norm = lp_norm(u, 2.0);
    const SpectralField back = transform(u, Direction::inverse);
    CHECK(lp_norm(back - u, 2.0) / norm < 1e-12);
    const SpectralField again = transform(back, Direction::forward);
    CHECK((again.spectrum() - u.spectrum()).norm() / u.spectrum().norm() < 1e-12);
    CHECK(std::abs(spectral_l2_norm(u) - norm) / norm < 1e-12);
  }
}

TEST_CASE("lp_norm") {
  const Grid1D g = make_grid(64.0, 4096);
  const SpectralField gauss =
      SpectralField::sample(g, [](double t) { return std::exp(-0.5 * t * t); });
  CHECK(lp_norm(gauss, 2.0) == doctest::Approx(std::pow(std::numbers::pi, 0.25)).epsilon(1e-8));

  const SpectralField bump = SpectralField::sample(g, [](double t) {
    return 0.5 * (std::tanh(20.0 * (t + 0.5)) - std::tanh(20.0 * (t - 0.5)));
  });
  CHECK(lp_norm_inf(bump) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(code_of([&] { lp_norm(gauss, 1.5); }) == ErrorCode::InvalidInput);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralField u = random_band_limited(g, rng, 30);
    const double h = g.spacing();
    const double q4 = h * u.values().array().pow(4).sum();
    const double inf = lp_norm_inf(u);
    const double l2 = lp_norm(u, 2.0);
    CHECK(q4 <= inf * inf * l2 * l2 * (1.0 + 1e-14));
  }
}

TEST_CASE("L2 mass is additive over disjoint supports") {
  const Grid1D g = make_grid(64.0, 4096);
  const auto left = SpectralField::sample(g, [](double t) { return std::exp(-(t + 20) * (t + 20)); });
  const auto right = SpectralField::sample(g, [](double t) { return std::exp(-(t - 20) * (t - 20)); });
  const double sum = std::pow(lp_norm(left + right, 2.0), 2);
  const double parts = std::pow(lp_norm(left, 2.0), 2) + std::pow(lp_norm(right, 2.0), 2);
  CHECK(std::abs(sum - parts) < 1e-10);
}

TEST_CASE("field arithmetic keeps values and spectrum consistent") {
  const Grid1D g = make_grid(10.0, 256);
  std::mt19937_64 rng(3);
  const SpectralField a = random_band_limited(g, rng, 10);
  const SpectralField b = random_band_limited(g, rng, 10);
  const SpectralField c = 2.0 * a - b * 0.5;
  const SpectralField fresh = transform(c, Direction::forward);
  CHECK((fresh.spectrum() - c.spectrum()).norm() < 1e-12 * c.spectrum().norm());
  CHECK_THROWS_AS(a + SpectralField::zero(make_grid(10.0, 128)), Error);
}

TEST_CASE("cell shifts translate samples exactly") {
  const Grid1D g = make_grid(8.0, 64);
  const SpectralField u = SpectralField::sample(g, [](double t) { return std::exp(-t * t); });
  const SpectralField s = shift_cells(u, 5);
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    CHECK(s.values()[(j + 5) % g.size()] == u.values()[j]);
  }
  CHECK(shift_cells(u, -64).values() == u.values());
}

TEST_CASE("shared read-only fields are safe across threads") {
  const Grid1D g = make_grid(64.0, 4096);
  const SpectralField u = SpectralField::sample(g, [](double t) { return std::exp(-t * t); });
  std::vector<double> norms(4);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    pool.emplace_back([&, i] { norms[i] = lp_norm(transform(u, Direction::inverse), 2.0); });
  }
  for (auto& t : pool) t.join();
  for (double n : norms) CHECK(n == norms.front());
}

TEST_CASE("CSV and JSON serialization round trip bit-exactly") {
  const Grid1D g = make_grid(5.0, 32);
  std::mt19937_64 rng(5);
  const SpectralField u = random_band_limited(g, rng, 6);

  std::stringstream csv;
  write_field_csv(csv, u);
  CHECK(csv.str().rfind("t,u\n", 0) == 0);
  const SpectralField from_csv = read_field_csv(csv, g);
  CHECK(from_csv.values() == u.values());

  const SpectralField from_json = field_from_json(field_to_json(u));
  CHECK(from_json.values() == u.values());
  CHECK(from_json.grid() == g);

  std::stringstream bad("t,u\n0,1\n");
  CHECK_THROWS_AS(read_field_csv(bad, g), Error);
  CHECK_THROWS_AS(field_from_json(nlohmann::json{{"L", 1.0}}), Error);
}
