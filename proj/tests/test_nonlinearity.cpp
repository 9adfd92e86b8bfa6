#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fracgs/error.hpp"
#include "fracgs/nonlinearity.hpp"

using namespace fracgs;

TEST_CASE("built-in family values") {
  NonlinearitySpec spec;
  CHECK(eval_f(spec, 0.0, -2.0) == 0.0);
  CHECK(eval_F(spec, 0.0, -2.0) == 0.0);

  NonlinearitySpec plain;
  plain.a.kind = PerturbationKind::zero;
  CHECK(eval_f(plain, 3.0, 2.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(eval_F(plain, 3.0, 2.0) == doctest::Approx(4.0).epsilon(1e-15));

  // gaussian a with A = 0.5: 1 + a(0) = 1.5
  CHECK(eval_f(spec, 0.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(spec.a(1.0) == doctest::Approx(0.5 * std::exp(-1.0)));
  spec.a.kind = PerturbationKind::rational;
  CHECK(spec.a(1.0) == doctest::Approx(0.25));
}

TEST_CASE("F is the primitive and df the derivative of f") {
  NonlinearitySpec spec;
  spec.p = 2.6;
  spec.theta = 3.2;
  spec.p0 = 3.0;
  const double h = 1e-5;
  for (double t : {-2.0, 0.0, 0.7}) {
    for (double xi : {0.3, 1.3, 2.9}) {
      const double dF = (eval_F(spec, t, xi + h) - eval_F(spec, t, xi - h)) / (2.0 * h);
      CHECK(std::abs(dF - eval_f(spec, t, xi)) < 1e-8 * (1.0 + eval_f(spec, t, xi)));
      const double df = (eval_f(spec, t, xi + h) - eval_f(spec, t, xi - h)) / (2.0 * h);
      CHECK(std::abs(df - eval_df(spec, t, xi)) < 1e-7 * (1.0 + eval_df(spec, t, xi)));
    }
    CHECK(eval_df(spec, t, -1.0) == 0.0);
  }
}

TEST_CASE("perturbation weights on a sample vector") {
  NonlinearitySpec spec;
  Eigen::VectorXd t(3);
  t << -1.0, 0.0, 2.0;
  const Eigen::VectorXd w = perturbation_weights(spec, t);
  for (int j = 0; j < 3; ++j) CHECK(w[j] == doctest::Approx(1.0 + spec.a(t[j])));
  CHECK(perturbation_weights(spec.autonomous_part(), t).isOnes());
}

TEST_CASE("default spec passes every hypothesis") {
  const HypothesisReport report = validate_hypotheses(NonlinearitySpec{}, SampleBox{});
  CHECK(report.checks.size() == 6);
  for (const HypothesisCheck& c : report.checks) {
    INFO(c.name << " margin " << c.margin << " " << c.detail);
    CHECK(c.pass);
  }
  CHECK(report.all_pass());
  CHECK_THROWS_AS(report.get("f9"), Error);
}

TEST_CASE("theta above p + 1 breaks the AR condition with a witness") {
  NonlinearitySpec spec;
  spec.theta = spec.p + 1.5;
  spec.p0 = 6.0;
  const HypothesisReport report = validate_hypotheses(spec, SampleBox{});
  const HypothesisCheck& f1 = report.get("f1");
  CHECK_FALSE(f1.pass);
  CHECK(f1.margin < 0.0);
  CHECK(f1.witness_xi > 0.0);
  // the witness really violates theta F <= xi f
  const double lhs = spec.theta * eval_F(spec, f1.witness_t, f1.witness_xi);
  const double rhs = f1.witness_xi * eval_f(spec, f1.witness_t, f1.witness_xi);
  CHECK(lhs > rhs);
  CHECK_FALSE(report.all_pass());
}

TEST_CASE("A = 0 fails the measure condition") {
  NonlinearitySpec spec;
  spec.a.amplitude = 0.0;
  const HypothesisReport report = validate_hypotheses(spec, SampleBox{});
  CHECK_FALSE(report.get("f5").pass);
  CHECK(report.get("f0").pass);
  CHECK(report.get("f1").pass);
  CHECK(report.get("f4").pass);

  spec.a.kind = PerturbationKind::zero;
  spec.a.amplitude = 0.5;
  CHECK_FALSE(validate_hypotheses(spec, SampleBox{}).get("f5").pass);
}

TEST_CASE("family invariants") {
  CHECK(NonlinearitySpec{}.invariant_violations().empty());
  CHECK_NOTHROW(NonlinearitySpec{}.require_valid());

  auto first = [](NonlinearitySpec s) {
    auto v = s.invariant_violations();
    return v.empty() ? std::string() : v.front();
  };
  NonlinearitySpec s;
  s.p = 1.0;
  CHECK(first(s).rfind("p", 0) == 0);
  s = {};
  s.theta = 2.0;
  CHECK(first(s).rfind("theta", 0) == 0);
  s = {};
  s.theta = 4.5;
  CHECK_FALSE(s.invariant_violations().empty());
  s = {};
  s.p0 = 2.5;
  CHECK(first(s).rfind("p0", 0) == 0);
  s = {};
  s.a.amplitude = -0.1;
  CHECK(first(s).rfind("a.", 0) == 0);
  s = {};
  s.a.width = 0.0;
  CHECK_FALSE(s.invariant_violations().empty());
  try {
    s.require_valid();
    FAIL("expected Config error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
  }
  CHECK(parse_perturbation_kind("rational") == PerturbationKind::rational);
  CHECK_THROWS_AS(parse_perturbation_kind("cubic"), Error);
}

TEST_CASE("autonomous part solves the limit problem") {
  NonlinearitySpec spec;
  const NonlinearitySpec bar = spec.autonomous_part();
  CHECK(bar.a.vanishes());
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ut(-10.0, 10.0);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = ut(rng);
    const double xi = ux(rng);
    const double diff = eval_f(spec, t, xi) - eval_f(bar, t, xi);
    CHECK(diff >= 0.0);
    CHECK(diff <= spec.a(t) * (std::abs(xi) + std::pow(std::abs(xi), spec.p0)) + 1e-12);
    // sigma -> f(t, sigma xi) xi / sigma is nondecreasing
    double prev = -1.0;
    for (double sigma = 0.1; sigma < 4.0; sigma *= 1.3) {
      const double v = eval_f(spec, t, sigma * xi) * xi / sigma;
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("growth constant") {
  const NonlinearitySpec spec;
  const double eps = 0.1;
  const double c = growth_constant(spec, eps);
  CHECK(c > 0.0);
  const HypothesisReport report = validate_hypotheses(spec, SampleBox{});
  CHECK(report.growth_constant_sampled <= report.growth_constant_explicit * (1.0 + 1e-12));
  CHECK(report.growth_constant_explicit == doctest::Approx(growth_constant(spec, report.growth_epsilon)));

  // brute force sup over xi of ((1 + A) xi^p - eps xi) / xi^p0
  double brute = 0.0;
  for (double xi = 1e-3; xi < 1e3; xi *= 1.0005) {
    brute = std::max(brute, (1.5 * std::pow(xi, 3.0) - eps * xi) / std::pow(xi, 3.5));
  }
  CHECK(brute <= c * (1.0 + 1e-12));
  CHECK(brute == doctest::Approx(c).epsilon(1e-6));
  for (double t : {-3.0, 0.0, 1.0}) {
    for (double xi = 0.01; xi < 50.0; xi *= 1.7) {
      CHECK(eval_f(spec, t, xi) <= eps * xi + c * std::pow(xi, spec.p0) * (1.0 + 1e-12));
    }
  }
}
