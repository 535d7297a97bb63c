#include "gibbs/species.hpp"

#include <cmath>

#include "gibbs/errors.hpp"
#include "gibbs/posterior.hpp"
#include "gibbs/samplers.hpp"

namespace gibbs {

namespace {

void check_inputs(const std::vector<long>& m_values, int reps) {
  if (reps < 1) throw DomainError("species_discovery_sim: reps must be positive");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] < 0) throw DomainError("species_discovery_sim: m values must be nonnegative");
    if (i > 0 && m_values[i] <= m_values[i - 1]) throw DomainError("species_discovery_sim: m values must increase");
  }
}

// Seats m_max customers; each goes to the continuous part with probability `mass`.
void count_new_species(RngState& rng, const StableParams& params, double mass, double t,
                       const std::vector<long>& m_values, std::vector<std::vector<double>>& scaled, int rep) {
  LazySticks sticks = LazySticks::pd_given_total(params, t);
  long seated = 0;
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    for (; seated < m_values[i]; ++seated) {
      if (mass < 1.0 && uniform(rng) >= mass) continue;
      sticks.draw_index(rng);
    }
    const double m = static_cast<double>(m_values[i]);
    scaled[i][rep] = m == 0.0 ? 0.0 : static_cast<double>(sticks.revealed()) * std::pow(m, -params.alpha());
  }
}

SpeciesSamples allocate(const std::vector<long>& m_values, int reps) {
  SpeciesSamples out;
  out.m_values = m_values;
  out.scaled.assign(m_values.size(), std::vector<double>(reps, 0.0));
  out.limit.resize(reps);
  return out;
}

}  // namespace

SpeciesSamples species_discovery_sim(const RngState& rng, const GibbsModel& model, const Partition& p,
                                     const std::vector<long>& m_values, int reps) {
  check_inputs(m_values, reps);
  const double alpha = model.alpha();
  SpeciesSamples out = allocate(m_values, reps);
  PosteriorOptions options;
  options.continuous_sticks = false;
  for (int r = 0; r < reps; ++r) {
    RngState path = rng.split(2 * static_cast<std::uint64_t>(r));
    const PosteriorMeasure post = sample_posterior_t1(path, model, p, options);
    count_new_species(path, model.params(), post.scale_split, post.t_draw, m_values, out.scaled, r);
    RngState limit = rng.split(2 * static_cast<std::uint64_t>(r) + 1);
    const JointDraw joint = sample_joint_rt_t1(limit, model, p.n(), p.k(), options.joint);
    out.limit[r] = std::pow(joint.b, alpha) * std::pow(joint.t, -alpha);
  }
  return out;
}

SpeciesSamples species_discovery_prior(const RngState& rng, const GibbsModel& model,
                                       const std::vector<long>& m_values, int reps) {
  check_inputs(m_values, reps);
  const double alpha = model.alpha();
  SpeciesSamples out = allocate(m_values, reps);
  for (int r = 0; r < reps; ++r) {
    RngState path = rng.split(2 * static_cast<std::uint64_t>(r));
    count_new_species(path, model.params(), 1.0, sample_mixing_T(path, model), m_values, out.scaled, r);
    RngState limit = rng.split(2 * static_cast<std::uint64_t>(r) + 1);
    out.limit[r] = std::pow(sample_mixing_T(limit, model), -alpha);
  }
  return out;
}

}  // namespace gibbs
