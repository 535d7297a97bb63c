#include "gibbs/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gibbs/errors.hpp"
#include "gibbs/quadrature.hpp"

namespace gibbs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_nk(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw DomainError("posterior: need 1 <= k <= n");
}

// Draws one proposal from the untilted base; `log_weight` is log g at the proposal.
template <class Proposal, class Propose, class LogWeight>
Proposal draw_tilted(RngState& rng, const GibbsModel& model, const JointOptions& options, const Propose& propose,
                     const LogWeight& log_weight, std::optional<double>& ess, std::size_t& used) {
  const TiltFactor& tilt = model.tilt();
  if (tilt.g_is_one) {
    used = 1;
    ess.reset();
    return propose();
  }
  if (options.method == JointMethod::exact) {
    for (std::size_t i = 1; i <= kRejectionBudget; ++i) {
      Proposal proposal = propose();
      if (std::log(uniform(rng)) < log_weight(proposal)) {
        used = i;
        ess.reset();
        return proposal;
      }
    }
    throw RejectionBudgetError("posterior: joint rejection budget exhausted");
  }
  if (options.proposals < 1) throw DomainError("posterior: proposals must be positive");
  std::vector<Proposal> batch;
  std::vector<double> log_w;
  std::size_t target = options.proposals;
  for (;;) {
    while (batch.size() < target) {
      batch.push_back(propose());
      log_w.push_back(log_weight(batch.back()));
    }
    const double peak = *std::max_element(log_w.begin(), log_w.end());
    if (peak == -kInf) throw DegeneracyError("posterior: all importance weights vanish");
    std::vector<double> w(log_w.size());
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = std::exp(log_w[i] - peak);
      sum += w[i];
      sum_sq += w[i] * w[i];
    }
    const double current = sum * sum / sum_sq;
    if (current >= options.ess_floor) {
      used = batch.size();
      ess = current;
      return batch[discrete(rng, w.data(), w.size())];
    }
    if (target >= options.max_proposals) {
      throw DegeneracyError("posterior: effective sample size " + std::to_string(current) + " below floor");
    }
    target = std::min(2 * target, options.max_proposals);
  }
}

struct PairProposal {
  double b;
  double t;
};

struct FragmentProposal {
  double b;
  double log_t;
  // log X_i for the fresh segment (index 0) and each observed block.
  std::vector<double> log_x;
};

double log_sum_exp(const std::vector<double>& xs) {
  const double peak = *std::max_element(xs.begin(), xs.end());
  if (peak == -kInf) return -kInf;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - peak);
  return peak + std::log(sum);
}

}  // namespace

JointDraw sample_joint_rt_t1(RngState& rng, const GibbsModel& model, int n, int k, const JointOptions& options) {
  check_nk(n, k);
  const double alpha = model.alpha();
  const TiltFactor& tilt = model.tilt();
  const double shape_a = tilt.theta0 + k * alpha;
  const double shape_b = n - k * alpha;
  auto propose = [&]() {
    const double b = beta_variate(rng, shape_a, shape_b);
    return PairProposal{b, sample_tilted_stable(rng, model.params(), shape_a)};
  };
  auto log_weight = [&](const PairProposal& p) { return tilt.log_g(p.t / p.b); };
  JointDraw out;
  const PairProposal p = draw_tilted<PairProposal>(rng, model, options, propose, log_weight, out.ess, out.proposals);
  out.b = p.b;
  out.t = p.t;
  return out;
}

JointDrawT2 sample_joint_bt_t2(RngState& rng, const GibbsModel& model, const Partition& p,
                               const std::vector<double>& dirichlet, const JointOptions& options) {
  const int n = p.n();
  const int k = p.k();
  check_nk(n, k);
  if (static_cast<int>(dirichlet.size()) != k) throw DomainError("sample_joint_bt_t2: dirichlet size differs from k");
  const double alpha = model.alpha();
  const TiltFactor& tilt = model.tilt();
  const double shape_a = tilt.theta0 / alpha + k;
  const double shape_b = n / alpha - k;
  const double gamma_shape = (tilt.theta0 + n) / alpha;

  // Increments of a stable subordinator over segments of lengths (b, (1-b) d_j),
  // jointly tilted by t^{-(theta0+n)} through S^alpha ~ Gamma((theta0+n)/alpha).
  auto propose = [&]() {
    FragmentProposal prop;
    prop.b = beta_variate(rng, shape_a, shape_b);
    const double log_s = log_gamma_variate(rng, gamma_shape) / alpha;
    prop.log_x.resize(k + 1);
    for (int i = 0; i <= k; ++i) {
      const double log_len = i == 0 ? std::log(prop.b) : std::log1p(-prop.b) + std::log(dirichlet[i - 1]);
      const double log_scale = log_len / alpha;
      const double x = sample_exp_tilted_stable(rng, model.params(), std::exp(log_s + log_scale));
      prop.log_x[i] = log_scale + std::log(x);
    }
    prop.log_t = log_sum_exp(prop.log_x);
    return prop;
  };
  auto log_weight = [&](const FragmentProposal& prop) {
    return tilt.log_g(std::exp(prop.log_t - std::log(prop.b) / alpha));
  };
  JointDrawT2 out;
  const FragmentProposal prop =
      draw_tilted<FragmentProposal>(rng, model, options, propose, log_weight, out.joint.ess, out.joint.proposals);
  out.joint.b = prop.b;
  out.joint.t = std::exp(prop.log_t);
  out.continuous_mass = std::exp(prop.log_x[0] - prop.log_t);
  out.fixed_masses.resize(k);
  for (int j = 0; j < k; ++j) out.fixed_masses[j] = std::exp(prop.log_x[j + 1] - prop.log_t);
  return out;
}

double PosteriorMeasure::fixed_total() const { return std::accumulate(fixed_atoms.begin(), fixed_atoms.end(), 0.0); }

double PosteriorMeasure::continuous_total() const {
  return std::accumulate(continuous_part.weights.begin(), continuous_part.weights.end(), 0.0) +
         continuous_part.residual;
}

namespace {

// Sticks PD(alpha | total) scaled to absolute mass `mass`, truncated at absolute residual eps.
StickWeights scaled_sticks(RngState& rng, const StableParams& params, double total, double mass,
                           const PosteriorOptions& options) {
  StickWeights out;
  out.residual = mass;
  if (!options.continuous_sticks || mass <= options.eps) return out;
  const StickWeights sticks = sample_pd_given_total(rng, params, total, options.eps / mass, options.max_sticks);
  out.weights.reserve(sticks.weights.size());
  for (double w : sticks.weights) out.weights.push_back(mass * w);
  out.residual = mass * sticks.residual;
  return out;
}

}  // namespace

PosteriorMeasure sample_posterior_t1(RngState& rng, const GibbsModel& model, const Partition& p,
                                     const PosteriorOptions& options) {
  if (!(options.eps > 0.0 && options.eps < 1.0)) throw DomainError("sample_posterior_t1: eps must lie in (0, 1)");
  const double alpha = model.alpha();
  std::vector<double> shapes;
  for (int size : p.block_sizes()) shapes.push_back(size - alpha);
  const std::vector<double> d = sample_dirichlet(rng, shapes);
  const JointDraw joint = sample_joint_rt_t1(rng, model, p.n(), p.k(), options.joint);

  PosteriorMeasure out;
  out.representation = Representation::t1;
  out.scale_split = joint.b;
  out.t_draw = joint.t;
  out.ess = joint.ess;
  out.fixed_atoms.reserve(d.size());
  for (double dj : d) out.fixed_atoms.push_back((1.0 - joint.b) * dj);
  out.continuous_part = scaled_sticks(rng, model.params(), joint.t, joint.b, options);
  return out;
}

PosteriorMeasure sample_posterior_t2(RngState& rng, const GibbsModel& model, const Partition& p,
                                     const PosteriorOptions& options) {
  if (!(options.eps > 0.0 && options.eps < 1.0)) throw DomainError("sample_posterior_t2: eps must lie in (0, 1)");
  const double alpha = model.alpha();
  std::vector<double> shapes;
  for (int size : p.block_sizes()) shapes.push_back((size - alpha) / alpha);
  const std::vector<double> d = sample_dirichlet(rng, shapes);
  const JointDrawT2 draw = sample_joint_bt_t2(rng, model, p, d, options.joint);

  PosteriorMeasure out;
  out.representation = Representation::t2;
  out.scale_split = draw.joint.b;
  out.t_draw = draw.joint.t;
  out.ess = draw.joint.ess;
  out.fixed_atoms = draw.fixed_masses;
  // The fresh segment of length b carries PD(alpha | X_0 b^{-1/alpha}).
  const double total = draw.continuous_mass * draw.joint.t * std::pow(draw.joint.b, -1.0 / alpha);
  out.continuous_part = scaled_sticks(rng, model.params(), total, draw.continuous_mass, options);
  return out;
}

AtomMasses posterior_mean_atom_masses(const GibbsModel& model, const Partition& p) {
  const int n = p.n();
  const int k = p.k();
  const double alpha = model.alpha();
  const SpecialValue base = model.psi(n, k);
  // E[R_k] and E[1 - R_k] through the Beta shift identities.
  AtomMasses out;
  out.new_mass = (model.psi(n + 1, k + 1) / base).value() * k * alpha / n;
  const double fixed_total = (model.psi(n + 1, k) / base).value() * (n - k * alpha) / n;
  for (int size : p.block_sizes()) out.atom_masses.push_back(fixed_total * (size - alpha) / (n - k * alpha));
  return out;
}

IdentityCheck importance_identity_check(RngState& rng, const GibbsModel& model, int n,
                                        const StickFunctional& functional, std::size_t draws, double eps) {
  if (draws < 1) throw DomainError("importance_identity_check: draws must be positive");
  if (n < 0) throw DomainError("importance_identity_check: n must be nonnegative");
  const StableParams& params = model.params();
  auto evaluate = [&](double t) {
    LazySticks sticks = LazySticks::pd_given_total(params, t);
    std::vector<int> sizes;
    for (int i = 0; i < n; ++i) {
      const std::size_t index = sticks.draw_index(rng);
      if (index == sizes.size()) sizes.push_back(0);
      ++sizes[index];
    }
    sticks.reveal_until(rng, eps, std::numeric_limits<std::size_t>::max());
    return functional(StickWeights{sticks.weights(), sticks.residual()}, sizes);
  };
  double sum_l = 0.0;
  double sq_l = 0.0;
  double sum_r = 0.0;
  double sq_r = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double l = evaluate(sample_mixing_T(rng, model));
    const double t = sample_positive_stable(rng, params);
    const double r = evaluate(t) * model.h(t);
    sum_l += l;
    sq_l += l * l;
    sum_r += r;
    sq_r += r * r;
  }
  const double count = static_cast<double>(draws);
  IdentityCheck out;
  out.lhs = sum_l / count;
  out.rhs = sum_r / count;
  const double var_l = std::max(sq_l / count - out.lhs * out.lhs, 0.0);
  const double var_r = std::max(sq_r / count - out.rhs * out.rhs, 0.0);
  out.se = std::sqrt((var_l + var_r) / count);
  return out;
}

double h_hat_t1(const GibbsModel& model, int n, int k, double t) {
  check_nk(n, k);
  if (!(t > 0.0)) throw DomainError("h_hat_t1: t must be positive");
  const double alpha = model.alpha();
  const double a = k * alpha;
  const double b = n - k * alpha;
  auto inner = [&](double x, double) { return std::exp(model.log_h(t / x)); };
  const double mean_h = quad::beta_expectation(inner, a, b, 1e-10).value;
  const double log_norm = neg_moment_stable(model.params(), a).log_magnitude() + model.psi(n, k).log_magnitude();
  return mean_h * std::exp(-a * std::log(t) - log_norm);
}

double h_tilde_t2(const GibbsModel& model, int n, int k, double t) {
  check_nk(n, k);
  if (!(t > 0.0)) throw DomainError("h_tilde_t2: t must be positive");
  const double alpha = model.alpha();
  const double a = k;
  const double b = n / alpha - k;
  auto inner = [&](double x, double) { return std::exp(model.log_h(t * std::pow(x, -1.0 / alpha))); };
  const double mean_h = quad::beta_expectation(inner, a, b, 1e-10).value;
  const double log_norm = neg_moment_stable(model.params(), n).log_magnitude() + model.psi(n, k).log_magnitude();
  return mean_h * std::exp(-n * std::log(t) - log_norm);
}

}  // namespace gibbs
