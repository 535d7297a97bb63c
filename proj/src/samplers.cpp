#include "gibbs/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "gibbs/errors.hpp"
#include "gibbs/stable_table.hpp"

namespace gibbs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_theta(const StableParams& params, double theta, const char* where) {
  if (!(theta > -params.alpha())) throw DomainError(std::string(where) + ": theta must exceed -alpha");
}


}  // namespace

double sample_positive_stable(RngState& rng, const StableParams& params) {
  const double alpha = params.alpha();
  const double u = kPi * uniform(rng);
  const double e = exponential(rng);
  // T = (A(U) / E)^{(1-alpha)/alpha}.
  const double log_t = (1.0 - alpha) / alpha * (detail::kanter_log_a(alpha, u) - std::log(e));
  return std::exp(log_t);
}

double sample_exp_tilted_stable(RngState& rng, const StableParams& params, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("sample_exp_tilted_stable: lambda must be nonnegative");
  if (lambda == 0.0) return sample_positive_stable(rng, params);
  const double alpha = params.alpha();
  // Sum of m iid pieces m^{-1/alpha} X_i, X_i tilted by lambda m^{-1/alpha};
  // each piece is accepted with probability at least exp(-1).
  const double pieces = std::max(1.0, std::ceil(std::pow(lambda, alpha)));
  const double scale = std::pow(pieces, -1.0 / alpha);
  const double piece_lambda = lambda * scale;
  double total = 0.0;
  for (double i = 0; i < pieces; i += 1.0) {
    for (;;) {
      const double x = sample_positive_stable(rng, params);
      if (exponential(rng) > piece_lambda * x) {
        total += scale * x;
        break;
      }
    }
  }
  return total;
}

double sample_tilted_stable(RngState& rng, const StableParams& params, double theta) {
  check_theta(params, theta, "sample_tilted_stable");
  const double alpha = params.alpha();
  if (theta == 0.0) return sample_positive_stable(rng, params);
  if (theta < 0.0) {
    // T_{alpha,theta} = T_{alpha,theta+alpha} / B_{theta+alpha,1-alpha}.
    const double t = sample_tilted_stable(rng, params, theta + alpha);
    return t / beta_variate(rng, theta + alpha, 1.0 - alpha);
  }
  // t^{-theta} f_alpha(t) mixes exp tilts: S^alpha ~ Gamma(theta/alpha), T | S ~ tilt S.
  const double s = std::exp(log_gamma_variate(rng, theta / alpha) / alpha);
  return sample_exp_tilted_stable(rng, params, s);
}

std::vector<double> sample_dirichlet(RngState& rng, const std::vector<double>& params) {
  if (params.empty()) throw DomainError("sample_dirichlet: empty parameter vector");
  std::vector<double> logs(params.size());
  double peak = -kInf;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!(params[i] > 0.0)) throw DomainError("sample_dirichlet: parameters must be positive");
    logs[i] = log_gamma_variate(rng, params[i]);
    peak = std::max(peak, logs[i]);
  }
  double sum = 0.0;
  for (double& l : logs) {
    l = std::exp(l - peak);
    sum += l;
  }
  for (double& l : logs) l /= sum;
  return logs;
}

StickWeights sample_gem_py(RngState& rng, const StableParams& params, double theta, double eps,
                           std::size_t max_sticks) {
  check_theta(params, theta, "sample_gem_py");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("sample_gem_py: eps must lie in (0, 1)");
  LazySticks sticks = LazySticks::gem(params, theta);
  sticks.reveal_until(rng, eps, max_sticks);
  return {sticks.weights(), sticks.residual()};
}

// ---------------------------------------------------------------------------
// PD(alpha | t) picks
// ---------------------------------------------------------------------------

namespace {

double cached_mode(const StableParams& params) {
  static std::mutex mutex;
  static std::map<double, double> modes;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = modes.find(params.alpha());
    if (it != modes.end()) return it->second;
  }
  const double mode = stable_mode(params);
  std::lock_guard<std::mutex> lock(mutex);
  modes.emplace(params.alpha(), mode);
  return mode;
}

// Grid node: x = s / r and w = 1 - x, each held to full relative precision.
struct Node {
  double x;
  double w;
  double lf;
};

// Mass of (1-x)^{-alpha} between two nodes, times (1-alpha).
double log_cell_measure(double one_minus_alpha, const Node& a, const Node& b) {
  if (b.x <= 0.5) {
    // G(x) = 1 - (1-x)^{1-alpha}.
    auto g = [&](double x) { return -std::expm1(one_minus_alpha * std::log1p(-x)); };
    return std::log(g(b.x) - g(a.x));
  }
  return std::log(std::pow(a.w, one_minus_alpha) - std::pow(b.w, one_minus_alpha));
}

// Inverse of the (1-x)^{-alpha} cell distribution at probability u.
Node cell_draw(double one_minus_alpha, const Node& a, const Node& b, double u) {
  if (b.x <= 0.5) {
    auto g = [&](double x) { return -std::expm1(one_minus_alpha * std::log1p(-x)); };
    const double target = g(a.x) + u * (g(b.x) - g(a.x));
    double x = -std::expm1(std::log1p(-target) / one_minus_alpha);
    x = std::clamp(x, a.x, b.x);
    return {x, 1.0 - x, 0.0};
  }
  const double ha = std::pow(a.w, one_minus_alpha);
  const double hb = std::pow(b.w, one_minus_alpha);
  double w = std::pow(hb + u * (ha - hb), 1.0 / one_minus_alpha);
  w = std::clamp(w, b.w, a.w);
  return {1.0 - w, w, 0.0};
}

// Bisect cells from `first` on whose bound overshoots the smaller endpoint by more than a factor 2.
template <class LogF, class Sup>
void refine(std::vector<Node>& nodes, std::size_t first, const LogF& lf, const Sup& cell_sup) {
  constexpr std::size_t kMaxNodes = 800;
  for (int pass = 0; pass < 40 && nodes.size() < kMaxNodes; ++pass) {
    double global = -kInf;
    for (std::size_t i = first; i < nodes.size(); ++i) global = std::max(global, nodes[i].lf);
    std::vector<Node> refined(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(first));
    refined.reserve(2 * nodes.size());
    bool changed = false;
    for (std::size_t i = first; i + 1 < nodes.size(); ++i) {
      const Node& a = nodes[i];
      const Node& b = nodes[i + 1];
      refined.push_back(a);
      const double sup = cell_sup(a, b);
      const double inf = std::min(a.lf, b.lf);
      if (a.x == 0.0 || sup < global - 40.0 || sup - inf <= std::log(2.0)) continue;
      Node mid{};
      if (b.x <= 0.5) {
        mid.x = 0.5 * (a.x + b.x);
        mid.w = 1.0 - mid.x;
      } else {
        mid.w = 0.5 * (a.w + b.w);
        mid.x = 1.0 - mid.w;
      }
      if (!(mid.x > a.x && mid.x < b.x)) continue;
      mid.lf = lf(mid.x);
      refined.push_back(mid);
      changed = true;
    }
    refined.push_back(nodes.back());
    nodes.swap(refined);
    if (!changed) break;
  }
}

}  // namespace

PdPickSampler::PdPickSampler(const StableParams& params)
    : params_(params),
      mode_(cached_mode(params)),
      log_f_mode_(log_stable_pdf(params, mode_)),
      grid_(&StableGrid::get(params)) {}

PdPickSampler::Step PdPickSampler::next(RngState& rng, double r) const {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("PdPickSampler: total must be positive");
  const double alpha = params_.alpha();
  const double one_minus_alpha = 1.0 - alpha;
  const double log_r = std::log(r);
  auto lf = [&](double x) { return x > 0.0 ? log_stable_pdf(params_, r * x) : -kInf; };
  auto cell_sup = [&](const Node& a, const Node& b) {
    if (r * a.x <= mode_ && mode_ <= r * b.x) return log_f_mode_;
    return std::max(a.lf, b.lf);
  };

  const std::vector<double>& zs = grid_->log_t();
  const std::vector<double>& lzs = grid_->log_density_z();
  const Node top{1.0, 0.0, lf(1.0)};
  std::vector<Node> nodes{{0.0, 1.0, -kInf}};
  std::size_t first_refine = 0;

  if (zs.size() > 2 && log_r > zs[1] && log_r < zs.back()) {
    // Cells from the cached grid below r; exact values at the nodes make the bounds exact.
    auto lf_node = [&](std::size_t i) { return lzs[i] - zs[i]; };
    const auto upper = std::upper_bound(zs.begin(), zs.end(), log_r);
    std::size_t j = static_cast<std::size_t>(upper - zs.begin()) - 1;
    if (zs[j] >= log_r) --j;
    const double log_mode = std::log(mode_);
    const double ref = log_mode < log_r ? log_f_mode_ : top.lf;
    // The grid is increasing up to the mode: skip the negligible left tail.
    const std::size_t mode_index =
        static_cast<std::size_t>(std::upper_bound(zs.begin(), zs.end(), log_mode) - zs.begin());
    std::size_t lo = 0;
    std::size_t hi = std::min(j, mode_index);
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (lf_node(mid) < ref - 60.0) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    for (std::size_t i = lo; i <= j; ++i) {
      const double d = zs[i] - log_r;
      nodes.push_back({std::exp(d), -std::expm1(d), lf_node(i)});
    }
    // Dyadic subdivision of the top cell when f changes fast next to r.
    const Node last = nodes.back();
    const double span = log_r - zs[j];
    const double slope = span > 1e-3 ? (top.lf - last.lf) / span : (lf_node(j) - lf_node(j - 1)) / StableGrid::kSpacing;
    first_refine = nodes.size() - 1;
    double w = last.w;
    for (int m = 0; m < 60 && w * std::abs(slope) > 0.25; ++m) {
      w *= 0.5;
      nodes.push_back({1.0 - w, w, lf(1.0 - w)});
    }
  } else {
    // Outside the cached grid: dyadic nodes toward both ends.
    std::vector<Node> left;
    double lf_max = -kInf;
    for (int j = 1; j < 1070; ++j) {
      const double x = std::ldexp(1.0, -j);
      const Node node{x, 1.0 - x, lf(x)};
      left.push_back(node);
      lf_max = std::max(lf_max, node.lf);
      if (r * x < 0.5 * mode_ && (node.lf < lf_max - 50.0 || node.lf == -kInf)) break;
    }
    std::reverse(left.begin(), left.end());
    nodes.insert(nodes.end(), left.begin(), left.end());
    const double h = 1e-4;
    const double slope = (lf(1.0 + h) - lf(1.0 - h)) / (2.0 * h);
    const double steep = std::isfinite(slope) ? std::max(std::abs(slope), 1.0) : 1e15;
    const int depth = std::clamp(static_cast<int>(std::ceil(std::log2(steep))) + 4, 2, 60);
    for (int j = 2; j <= depth; ++j) {
      const double w = std::ldexp(1.0, -j);
      nodes.push_back({1.0 - w, w, lf(1.0 - w)});
    }
  }
  nodes.push_back(top);
  refine(nodes, first_refine, lf, cell_sup);

  const std::size_t cells = nodes.size() - 1;
  std::vector<double> log_weights(cells);
  std::vector<double> sups(cells);
  double peak = -kInf;
  for (std::size_t i = 0; i < cells; ++i) {
    sups[i] = cell_sup(nodes[i], nodes[i + 1]);
    log_weights[i] = sups[i] + log_cell_measure(one_minus_alpha, nodes[i], nodes[i + 1]);
    if (std::isnan(log_weights[i])) log_weights[i] = -kInf;
    peak = std::max(peak, log_weights[i]);
  }
  std::vector<double> weights(cells);
  for (std::size_t i = 0; i < cells; ++i) weights[i] = std::exp(log_weights[i] - peak);

  for (std::size_t attempt = 0; attempt < kRejectionBudget; ++attempt) {
    const std::size_t c = discrete(rng, weights.data(), cells);
    const Node draw = cell_draw(one_minus_alpha, nodes[c], nodes[c + 1], uniform(rng));
    if (!(draw.x > 0.0 && draw.w > 0.0)) continue;
    if (std::log(uniform(rng)) < lf(draw.x) - sups[c]) return {r * draw.x, r * draw.w};
  }
  throw RejectionBudgetError("PdPickSampler: rejection budget exhausted");
}

double pd_first_pick_density(const StableParams& params, double t, double v) {
  if (!(t > 0.0)) throw DomainError("pd_first_pick_density: t must be positive");
  if (!(v > 0.0 && v < 1.0)) return 0.0;
  const double alpha = params.alpha();
  // alpha t^{-alpha} v^{-alpha} f_alpha(t(1-v)) / (Gamma(1-alpha) f_alpha(t)).
  const double log_value = std::log(alpha) - alpha * std::log(t) - alpha * std::log(v) +
                           log_stable_pdf(params, t * (1.0 - v)) - std::lgamma(1.0 - alpha) -
                           log_stable_pdf(params, t);
  return std::exp(log_value);
}

StickWeights sample_pd_given_total(RngState& rng, const StableParams& params, double t, double eps,
                                   std::size_t max_sticks) {
  if (!(t > 0.0)) throw DomainError("sample_pd_given_total: t must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("sample_pd_given_total: eps must lie in (0, 1)");
  LazySticks sticks = LazySticks::pd_given_total(params, t);
  sticks.reveal_until(rng, eps, max_sticks);
  return {sticks.weights(), sticks.residual()};
}

// ---------------------------------------------------------------------------
// Lazy sticks
// ---------------------------------------------------------------------------

LazySticks LazySticks::gem(const StableParams& params, double theta) {
  check_theta(params, theta, "LazySticks::gem");
  LazySticks sticks;
  const double alpha = params.alpha();
  sticks.next_residual_ = [alpha, theta](RngState& rng, std::size_t index, double residual) {
    const double j = static_cast<double>(index + 1);
    // Residual factor 1 - V_j with V_j ~ Beta(1-alpha, theta+j alpha).
    return residual * beta_variate(rng, theta + j * alpha, 1.0 - alpha);
  };
  return sticks;
}

LazySticks LazySticks::pd_given_total(const StableParams& params, double t) {
  if (!(t > 0.0)) throw DomainError("LazySticks::pd_given_total: t must be positive");
  LazySticks sticks;
  auto sampler = std::make_shared<PdPickSampler>(params);
  sticks.next_residual_ = [sampler, t](RngState& rng, std::size_t, double residual) {
    const PdPickSampler::Step step = sampler->next(rng, residual * t);
    return step.remaining / t;
  };
  return sticks;
}

void LazySticks::reveal_next(RngState& rng) {
  const double next = next_residual_(rng, weights_.size(), residual_);
  weights_.push_back(residual_ - next);
  residual_ = next;
  cumulative_.push_back(1.0 - residual_);
}

void LazySticks::reveal_until(RngState& rng, double eps, std::size_t max_sticks) {
  while (residual_ > eps) {
    if (weights_.size() >= max_sticks) {
      throw TruncationError("stick residual " + std::to_string(residual_) + " above " + std::to_string(eps) +
                            " after " + std::to_string(max_sticks) + " sticks");
    }
    reveal_next(rng);
  }
}

std::size_t LazySticks::draw_index(RngState& rng) {
  const double u = uniform(rng);
  if (!cumulative_.empty() && u < cumulative_.back()) {
    return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                                    cumulative_.begin());
  }
  // A draw landing in the unrevealed mass picks the next size-biased stick.
  reveal_next(rng);
  return weights_.size() - 1;
}

// ---------------------------------------------------------------------------
// Mixing variable
// ---------------------------------------------------------------------------

double sample_mixing_T(RngState& rng, const GibbsModel& model) {
  const StableParams& params = model.params();
  const double alpha = params.alpha();
  if (const auto* py = std::get_if<PitmanYor>(&model.family())) {
    return sample_tilted_stable(rng, params, py->theta);
  }
  if (const auto* gg = std::get_if<GeneralizedGamma>(&model.family())) {
    return sample_exp_tilted_stable(rng, params, gg->lambda);
  }
  if (const auto* ml = std::get_if<MittagLefflerTilt>(&model.family())) {
    const double theta = ml_effective_theta(params, *ml);
    for (std::size_t i = 0; i < kRejectionBudget; ++i) {
      const double t = sample_tilted_stable(rng, params, theta);
      if (exponential(rng) > ml->lambda * std::pow(t, -alpha)) return t;
    }
    throw RejectionBudgetError("sample_mixing_T: Mittag-Leffler rejection budget exhausted");
  }
  const auto& custom = std::get<Custom>(model.family());
  if (!(custom.sup_h > 0.0)) throw DomainError("sample_mixing_T: custom family needs sup_h");
  for (std::size_t i = 0; i < kRejectionBudget; ++i) {
    const double t = sample_positive_stable(rng, params);
    const double value = custom.h(t);
    if (value > custom.sup_h) throw InvalidBoundError("custom h exceeds its declared sup_h");
    if (uniform(rng) * custom.sup_h < value) return t;
  }
  throw RejectionBudgetError("sample_mixing_T: custom rejection budget exhausted");
}

}  // namespace gibbs
