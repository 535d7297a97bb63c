#ifndef GIBBS_SPECIES_HPP
#define GIBBS_SPECIES_HPP

#include <vector>

#include "gibbs/gibbs_model.hpp"
#include "gibbs/rng.hpp"

namespace gibbs {

struct SpeciesSamples {
  std::vector<long> m_values;
  /// scaled[i][r] = m_i^{-alpha} K_{m_i} in replicate r (zero when m_i = 0).
  std::vector<std::vector<double>> scaled;
  /// Independent draws of the almost sure limit of m^{-alpha} K_m.
  std::vector<double> limit;
};

/// New species among m further customers given the observed partition; the
/// limit draws are R^alpha T^{-alpha} from the first posterior representation.
SpeciesSamples species_discovery_sim(const RngState& rng, const GibbsModel& model, const Partition& p,
                                     const std::vector<long>& m_values, int reps);

/// The same with no observations: m^{-alpha} K_m against its limit T^{-alpha}.
SpeciesSamples species_discovery_prior(const RngState& rng, const GibbsModel& model,
                                       const std::vector<long>& m_values, int reps);

}  // namespace gibbs

#endif  // GIBBS_SPECIES_HPP
