#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace fracgs {

enum class PerturbationKind { zero, gaussian, rational };

// Nonnegative bump a(t) vanishing at infinity:
//   gaussian: A exp(-t^2 / s^2)
//   rational: A / (1 + t^2 / s^2)
struct Perturbation {
  PerturbationKind kind = PerturbationKind::gaussian;
  double amplitude = 0.5;
  double width = 1.0;

  double operator()(double t) const;
  double sup() const { return kind == PerturbationKind::zero ? 0.0 : amplitude; }
  bool vanishes() const { return kind == PerturbationKind::zero || amplitude == 0.0; }
};

// f(t, xi) = (1 + a(t)) * max(xi, 0)^p with autonomous part max(xi, 0)^p.
struct NonlinearitySpec {
  double p = 3.0;
  double theta = 4.0;
  double p0 = 3.5;
  Perturbation a;

  /// Same family with a == 0.
  NonlinearitySpec autonomous_part() const;

  /// Human-readable violations of the family invariants: p > 1, theta > 2,
  /// theta <= p + 1, p0 > p, p0 + 1 > theta and a admissible. Empty when
  /// these parameters may be handed to the solver.
  std::vector<std::string> invariant_violations() const;

  /// Throws Config with the first violation.
  void require_valid() const;
};

const char* to_string(PerturbationKind kind);
PerturbationKind parse_perturbation_kind(const std::string& name);

double eval_f(const NonlinearitySpec& spec, double t, double xi);
double eval_F(const NonlinearitySpec& spec, double t, double xi);
/// d f / d xi
double eval_df(const NonlinearitySpec& spec, double t, double xi);

/// Sampled 1 + a(t_j); the nonlinearity on a grid is weight * max(u, 0)^p.
Eigen::VectorXd perturbation_weights(const NonlinearitySpec& spec, const Eigen::VectorXd& t);

struct SampleBox {
  double t_min = -10.0;
  double t_max = 10.0;
  double xi_min = -5.0;
  double xi_max = 5.0;
  int n_samples = 64;
};

struct HypothesisCheck {
  std::string name;  // "f0" .. "f5"
  bool pass = true;
  double margin = 0.0;  // worst-case margin; negative means violated
  double witness_t = 0.0;
  double witness_xi = 0.0;
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  double growth_epsilon = 0.1;
  double growth_constant_sampled = 0.0;   // minimal C_eps over the samples
  double growth_constant_explicit = 0.0;  // closed-form sup for the family

  bool all_pass() const;
  const HypothesisCheck& get(const std::string& name) const;
};

/// Sampled verification of (f0)-(f5). Failures are reported, never thrown.
HypothesisReport validate_hypotheses(const NonlinearitySpec& spec, const SampleBox& box);

/// Smallest C with f(t, xi) <= eps |xi| + C |xi|^p0 for all t and xi,
/// computed from sup_xi ((1 + sup a) xi^p - eps xi) / xi^p0.
double growth_constant(const NonlinearitySpec& spec, double eps);

}  // namespace fracgs
