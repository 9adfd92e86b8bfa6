#include "fracgs/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracgs/error.hpp"

namespace fracgs {
namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

std::vector<double> logspace(double lo_exp, double hi_exp, int n) {
  std::vector<double> out = linspace(lo_exp, hi_exp, n);
  for (double& x : out) x = std::pow(10.0, x);
  return out;
}

struct Worst {
  double margin = std::numeric_limits<double>::infinity();
  double t = 0.0;
  double xi = 0.0;

  void offer(double m, double tt, double xx) {
    if (m < margin) {
      margin = m;
      t = tt;
      xi = xx;
    }
  }
};

HypothesisCheck make_check(const std::string& name, const Worst& worst, double tolerance,
                           std::string detail) {
  HypothesisCheck c;
  c.name = name;
  c.margin = std::isfinite(worst.margin) ? worst.margin : 0.0;
  c.pass = c.margin >= -tolerance;
  c.witness_t = worst.t;
  c.witness_xi = worst.xi;
  c.detail = std::move(detail);
  return c;
}

// Ratio sequence r_k along xi -> limit must be nonincreasing and drop by at
// least two decades; margin is 1e-2 - r_last / r_first.
HypothesisCheck decay_check(const std::string& name, const NonlinearitySpec& spec,
                            const std::vector<double>& ts, const std::vector<double>& xis,
                            double power, std::string detail) {
  std::vector<double> ratios;
  double worst_t = 0.0;
  for (double xi : xis) {
    double r = 0.0;
    for (double t : ts) {
      for (double sgn : {1.0, -1.0}) {
        const double v = std::abs(eval_f(spec, t, sgn * xi)) / std::pow(xi, power);
        if (v > r) {
          r = v;
          worst_t = t;
        }
      }
    }
    ratios.push_back(r);
  }
  Worst worst;
  if (ratios.front() == 0.0) {
    worst.offer(1e-2, worst_t, xis.back());
  } else {
    for (std::size_t k = 1; k < ratios.size(); ++k) {
      if (ratios[k] > ratios[k - 1] * (1.0 + 1e-12)) {
        worst.offer(-(ratios[k] - ratios[k - 1]) / ratios[k - 1], worst_t, xis[k]);
      }
    }
    worst.offer(1e-2 - ratios.back() / ratios.front(), worst_t, xis.back());
  }
  return make_check(name, worst, 0.0, std::move(detail));
}

}  // namespace

double Perturbation::operator()(double t) const {
  switch (kind) {
    case PerturbationKind::zero:
      return 0.0;
    case PerturbationKind::gaussian:
      return amplitude * std::exp(-(t * t) / (width * width));
    case PerturbationKind::rational:
      return amplitude / (1.0 + (t * t) / (width * width));
  }
  return 0.0;
}

const char* to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::zero: return "zero";
    case PerturbationKind::gaussian: return "gaussian";
    case PerturbationKind::rational: return "rational";
  }
  return "zero";
}

PerturbationKind parse_perturbation_kind(const std::string& name) {
  if (name == "zero") return PerturbationKind::zero;
  if (name == "gaussian") return PerturbationKind::gaussian;
  if (name == "rational") return PerturbationKind::rational;
  throw Error(ErrorCode::Config,
              "a.kind must be one of gaussian, rational, zero; got '" + name + "'");
}

NonlinearitySpec NonlinearitySpec::autonomous_part() const {
  NonlinearitySpec out = *this;
  out.a.kind = PerturbationKind::zero;
  out.a.amplitude = 0.0;
  return out;
}

std::vector<std::string> NonlinearitySpec::invariant_violations() const {
  std::vector<std::string> out;
  auto fmt = [](const char* what, double v) {
    std::ostringstream s;
    s << what << " (got " << v << ")";
    return s.str();
  };
  if (!(p > 1.0)) out.push_back(fmt("p must exceed 1", p));
  if (!(theta > 2.0)) out.push_back(fmt("theta must exceed 2", theta));
  if (!(theta <= p + 1.0)) out.push_back(fmt("theta must not exceed p + 1", theta));
  if (!(p0 > p)) out.push_back(fmt("p0 must exceed p", p0));
  if (!(p0 + 1.0 > theta)) out.push_back(fmt("p0 + 1 must exceed theta", p0));
  if (!(a.amplitude >= 0.0) || !std::isfinite(a.amplitude)) {
    out.push_back(fmt("a.amplitude must be finite and nonnegative", a.amplitude));
  }
  if (!(a.width > 0.0) || !std::isfinite(a.width)) {
    out.push_back(fmt("a.width must be positive", a.width));
  }
  return out;
}

void NonlinearitySpec::require_valid() const {
  const auto violations = invariant_violations();
  if (!violations.empty()) throw Error(ErrorCode::Config, violations.front());
}

double eval_f(const NonlinearitySpec& spec, double t, double xi) {
  if (xi <= 0.0) return 0.0;
  return (1.0 + spec.a(t)) * std::pow(xi, spec.p);
}

double eval_F(const NonlinearitySpec& spec, double t, double xi) {
  if (xi <= 0.0) return 0.0;
  return (1.0 + spec.a(t)) * std::pow(xi, spec.p + 1.0) / (spec.p + 1.0);
}

double eval_df(const NonlinearitySpec& spec, double t, double xi) {
  if (xi <= 0.0) return 0.0;
  return (1.0 + spec.a(t)) * spec.p * std::pow(xi, spec.p - 1.0);
}

Eigen::VectorXd perturbation_weights(const NonlinearitySpec& spec, const Eigen::VectorXd& t) {
  Eigen::VectorXd w(t.size());
  for (Eigen::Index j = 0; j < t.size(); ++j) w[j] = 1.0 + spec.a(t[j]);
  return w;
}

double growth_constant(const NonlinearitySpec& spec, double eps) {
  const double b = 1.0 + spec.a.sup();
  const double xi_star =
      std::pow(eps * (spec.p0 - 1.0) / (b * (spec.p0 - spec.p)), 1.0 / (spec.p - 1.0));
  const double c = (b * std::pow(xi_star, spec.p) - eps * xi_star) / std::pow(xi_star, spec.p0);
  return std::max(c, 0.0);
}

bool HypothesisReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const HypothesisCheck& HypothesisReport::get(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::InvalidInput, "no hypothesis named " + name);
}

namespace {

std::vector<HypothesisCheck> check_f0_to_f4(const NonlinearitySpec& spec, const SampleBox& box) {
  const auto ts = linspace(box.t_min, box.t_max, box.n_samples);
  auto xis = linspace(box.xi_min, box.xi_max, box.n_samples);
  xis.push_back(0.0);
  std::vector<HypothesisCheck> out;

  {
    Worst w;
    for (double t : ts) {
      for (double xi : xis) {
        const double f = eval_f(spec, t, xi);
        if (xi <= 0.0) w.offer(-std::abs(f), t, xi);
        if (xi >= 0.0) w.offer(f, t, xi);
      }
    }
    out.push_back(make_check("f0", w, 0.0, "f >= 0 for xi >= 0 and f = 0 for xi <= 0"));
  }

  {
    Worst w;
    for (double t : ts) {
      for (double xi : xis) {
        if (xi <= 0.0) continue;
        const double F = eval_F(spec, t, xi);
        const double xf = xi * eval_f(spec, t, xi);
        const double scale = std::max(std::abs(xf), std::numeric_limits<double>::min());
        w.offer((xf - spec.theta * F) / scale, t, xi);
        if (!(F > 0.0)) w.offer(-1.0, t, xi);
      }
    }
    out.push_back(make_check("f1", w, 1e-12, "0 < theta F <= xi f for xi > 0"));
  }

  out.push_back(decay_check("f2", spec, ts, logspace(-1.0, -12.0, 12), 1.0,
                            "sup_t f(t, xi) / |xi| -> 0 as xi -> 0"));

  {
    HypothesisCheck c = decay_check("f3", spec, ts, logspace(1.0, 12.0, 12), spec.p0,
                                    "sup_t f(t, xi) / |xi|^p0 -> 0 as |xi| -> inf");
    const double exponent_margin = spec.p0 + 1.0 - spec.theta;
    if (!(exponent_margin > 0.0)) {
      c.pass = false;
      c.margin = std::min(c.margin, exponent_margin);
      c.detail += "; requires p0 + 1 > theta";
    }
    out.push_back(c);
  }

  {
    Worst w;
    const auto sigmas = logspace(-3.0, 3.0, 61);
    for (double t : ts) {
      for (double xi : xis) {
        if (xi == 0.0) continue;
        double prev = eval_f(spec, t, sigmas[0] * xi) * xi / sigmas[0];
        for (std::size_t i = 1; i < sigmas.size(); ++i) {
          const double cur = eval_f(spec, t, sigmas[i] * xi) * xi / sigmas[i];
          w.offer((cur - prev) / (1.0 + std::abs(prev)), t, xi);
          prev = cur;
        }
      }
    }
    out.push_back(make_check("f4", w, 1e-12, "sigma -> f(t, sigma xi) xi / sigma nondecreasing"));
  }
  return out;
}

}  // namespace

HypothesisReport validate_hypotheses(const NonlinearitySpec& spec, const SampleBox& box) {
  if (box.n_samples < 2 || !(box.t_max > box.t_min) || !(box.xi_max > box.xi_min)) {
    throw Error(ErrorCode::InvalidInput, "hypothesis sample box is degenerate");
  }
  HypothesisReport report;
  report.checks = check_f0_to_f4(spec, box);

  const NonlinearitySpec bar = spec.autonomous_part();
  const auto ts = linspace(box.t_min, box.t_max, box.n_samples);
  const auto xis = linspace(box.xi_min, box.xi_max, box.n_samples);

  {
    HypothesisCheck c;
    c.name = "f5";
    c.detail = "autonomous part satisfies (f0)-(f4); 0 <= f - fbar <= a (|xi| + |xi|^p0); "
               "a -> 0 at infinity; m{f > fbar} > 0";
    Worst w;
    for (const auto& sub : check_f0_to_f4(bar, box)) {
      if (!sub.pass) w.offer(sub.margin, sub.witness_t, sub.witness_xi);
    }
    for (double t : ts) {
      for (double xi : xis) {
        const double diff = eval_f(spec, t, xi) - eval_f(bar, t, xi);
        const double bound = spec.a(t) * (std::abs(xi) + std::pow(std::abs(xi), spec.p0));
        w.offer(diff, t, xi);
        w.offer((bound - diff) / (1.0 + bound), t, xi);
      }
    }
    for (double far : {-1e8, 1e8}) {
      w.offer(1e-8 * (1.0 + spec.a.sup()) - spec.a(far), far, 1.0);
    }

    // Measure of {t : f(t, xi) > fbar(xi) for some xi}, estimated on the t samples.
    const double dt = (box.t_max - box.t_min) / (box.n_samples - 1);
    double measure = 0.0;
    double first_t = 0.0;
    bool found = false;
    for (double t : ts) {
      for (double xi : xis) {
        if (xi > 0.0 && eval_f(spec, t, xi) > eval_f(bar, t, xi)) {
          measure += dt;
          if (!found) first_t = t;
          found = true;
          break;
        }
      }
    }
    const bool bounded_ok = w.margin >= -1e-12;
    c.pass = bounded_ok && measure > 0.0;
    if (!bounded_ok) {
      c.margin = w.margin;
      c.witness_t = w.t;
      c.witness_xi = w.xi;
    } else {
      c.margin = measure;
      c.witness_t = found ? first_t : box.t_min;
      c.witness_xi = box.xi_max;
      if (!found) c.detail += " (f coincides with fbar on every sample: measure 0)";
    }
    report.checks.push_back(c);
  }

  report.growth_epsilon = 0.1;
  double sampled = 0.0;
  auto xi_probe = logspace(-3.0, 3.0, 121);
  for (double xi : xis) xi_probe.push_back(std::abs(xi));
  for (double t : ts) {
    for (double xi : xi_probe) {
      if (xi == 0.0) continue;
      const double c = (eval_f(spec, t, xi) - report.growth_epsilon * xi) / std::pow(xi, spec.p0);
      sampled = std::max(sampled, c);
    }
  }
  report.growth_constant_sampled = sampled;
  report.growth_constant_explicit = growth_constant(spec, report.growth_epsilon);
  return report;
}

}  // namespace fracgs
