#ifndef GIBBS_POSTERIOR_HPP
#define GIBBS_POSTERIOR_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gibbs/gibbs_model.hpp"
#include "gibbs/rng.hpp"
#include "gibbs/samplers.hpp"

namespace gibbs {

enum class Representation { t1, t2 };

/// How the pair (b, t) is drawn for families with a nontrivial tilt.
///
/// `exact` samples the untilted base pair and accepts with probability
/// g <= 1 from the model's TiltFactor. `sir` resamples one pair from
/// `proposals` weighted base draws, doubling the batch while the effective
/// sample size is below `ess_floor`.
enum class JointMethod { exact, sir };

struct JointOptions {
  JointMethod method = JointMethod::exact;
  std::size_t proposals = 4096;
  double ess_floor = 64.0;
  std::size_t max_proposals = std::size_t{1} << 20;
};

struct JointDraw {
  double b = 0.0;
  double t = 0.0;
  /// Effective sample size of the SIR batch; empty for exact draws.
  std::optional<double> ess;
  /// Base draws consumed.
  std::size_t proposals = 0;
};

/// (R_k, T_{alpha,k alpha}) with density proportional to h(t/b) f_{R_k}(b) f_{alpha,k alpha}(t).
JointDraw sample_joint_rt_t1(RngState& rng, const GibbsModel& model, int n, int k, const JointOptions& options = {});

/// T2 draw: (beta_k, T_{alpha,n}) plus the fixed-atom masses it induces.
struct JointDrawT2 {
  JointDraw joint;
  /// X_0 / t, the mass of the fresh-atom part.
  double continuous_mass = 0.0;
  /// X_j / t for each observed block.
  std::vector<double> fixed_masses;
};

/// (beta_k, T_{alpha,n}) with density proportional to h(t/b^{1/alpha}) f_{beta_k}(b) f_{alpha,n}(t);
/// `dirichlet` holds (d_1, ..., d_k).
JointDrawT2 sample_joint_bt_t2(RngState& rng, const GibbsModel& model, const Partition& p,
                               const std::vector<double>& dirichlet, const JointOptions& options = {});

struct PosteriorOptions {
  double eps = kDefaultStickEps;
  std::size_t max_sticks = kDefaultStickCap;
  /// Draw the continuous part's sticks; off leaves them as residual mass.
  bool continuous_sticks = true;
  JointOptions joint;
};

/// One draw of the posterior random probability measure.
struct PosteriorMeasure {
  Representation representation = Representation::t1;
  /// Weight on observed unique value j (label j+1 in order of appearance).
  std::vector<double> fixed_atoms;
  /// Masses on fresh atoms, labeled by draw order; residual is unassigned fresh mass.
  StickWeights continuous_part;
  double scale_split = 0.0;
  double t_draw = 0.0;
  std::optional<double> ess;

  double fixed_total() const;
  double continuous_total() const;
  double total_mass() const { return fixed_total() + continuous_total(); }
};

PosteriorMeasure sample_posterior_t1(RngState& rng, const GibbsModel& model, const Partition& p,
                                     const PosteriorOptions& options = {});
PosteriorMeasure sample_posterior_t2(RngState& rng, const GibbsModel& model, const Partition& p,
                                     const PosteriorOptions& options = {});

struct AtomMasses {
  double new_mass = 0.0;
  std::vector<double> atom_masses;
};

/// E[P | X_1..X_n] split into fresh and observed atoms.
AtomMasses posterior_mean_atom_masses(const GibbsModel& model, const Partition& p);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double se = 0.0;
};

/// Bounded functional of revealed sticks and the block sizes of n draws from them.
using StickFunctional = std::function<double(const StickWeights&, const std::vector<int>&)>;

/// MC estimates of E[Omega(P)] and E[Omega(P_{alpha,0}) h(T_alpha)].
///
/// Each draw reveals sticks until the residual is at most `eps` or the
/// sticks needed to seat n customers, whichever is more.
IdentityCheck importance_identity_check(RngState& rng, const GibbsModel& model, int n,
                                        const StickFunctional& functional, std::size_t draws, double eps = 1e-3);

/// Density factor of the T1 inverse local time: T-hat has density h_hat(t) f_alpha(t).
double h_hat_t1(const GibbsModel& model, int n, int k, double t);

/// Density factor of the T2 inverse local time: T-hat has density h_tilde(t) f_alpha(t).
double h_tilde_t2(const GibbsModel& model, int n, int k, double t);

}  // namespace gibbs

#endif  // GIBBS_POSTERIOR_HPP
