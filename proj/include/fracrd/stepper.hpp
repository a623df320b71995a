#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracrd/dst.hpp"
#include "fracrd/phi.hpp"

namespace fracrd {

/// Update-weight variant for the four-stage exponential scheme. Both use
/// the same half-step stages
///   a = E_half u + phi1_half N(u)
///   b = E_half u + phi1_half N(a)
///   c = E_half a + phi1_half (2 N(b) - N(u))
/// and differ only in the final combination:
///   phi_direct:   u+ = E u + Phi1 N(u) + 2 Phi2 (N(a)+N(b)) + Phi3 N(c)
///                 (plain phi-weights; first-order accurate, kept for
///                 reproducing runs that used it)
///   cox_matthews: u+ = E u + dt(phi1-3phi2+4phi3) N(u)
///                        + 2 dt(phi2-2phi3) (N(a)+N(b))
///                        + dt(4phi3-phi2) N(c)
///                 (classical fourth-order combination; the default)
enum class Scheme { phi_direct, cox_matthews };

/// Pointwise reaction evaluated jointly on all components:
/// out[c][n] = R_c(phys[0][n], ..., phys[C-1][n]).
/// Must not resize the vectors; sizes match the grid.
using ReactionFn = std::function<void(const std::vector<std::vector<double>>& phys,
                                      std::vector<std::vector<double>>& out)>;

/// Thrown when a stage produces NaN/Inf or the sup norm of the state
/// exceeds divergence_limit; what() names the failing step index.
class solver_divergence : public std::runtime_error {
 public:
  solver_divergence(long step, const std::string& why);
  long step() const { return step_; }

 private:
  long step_;
};

inline constexpr double divergence_limit = 1e6;

/// Everything fixed across steps: scheme, dt, and per-component tables.
/// Build validates dt > 0 and that all operators share one grid.
struct StepperConfig {
  Scheme scheme = Scheme::cox_matthews;
  double dt = 0.0;
  Grid2D grid{};
  std::vector<PhiTable> tables;  ///< one per component

  static StepperConfig build(Scheme scheme, double dt,
                             const std::vector<FractionalDiffusion>& ops);
};

/// Scratch buffers + transform plans reused across steps (one per
/// integration; not shared between threads).
class StepWorkspace {
 public:
  StepWorkspace(const StepperConfig& cfg, int components);
  const SineTransform& transform() const { return tf_; }

 private:
  friend void etdrk4_step(std::vector<std::vector<double>>&, const ReactionFn&,
                          const StepperConfig&, StepWorkspace&, long);
  SineTransform tf_;
  // per component: physical stage values, reaction values, and the four
  // spectral nonlinearity slots + two spectral stage slots
  std::vector<std::vector<double>> phys_, react_, Nn_, Na_, Nb_, Nc_, a_, b_;
};

/// One step of the exponential scheme, in place on the spectral state
/// (one vector<double> of grid.size() coefficients per component).
/// step_index only labels divergence errors.
void etdrk4_step(std::vector<std::vector<double>>& spectral_state,
                 const ReactionFn& reaction, const StepperConfig& cfg,
                 StepWorkspace& ws, long step_index);

/// Snapshot delivered to hooks: time plus physical-space components
/// (still in the lifted/homogeneous variables the solver works in).
struct Snapshot {
  double t = 0.0;
  std::vector<Field> state;
};

using SnapshotHook = std::function<void(const Snapshot&)>;

struct IntegrateResult {
  std::vector<Field> final_state;  ///< physical space, lifted variables
  long steps = 0;
};

/// March state0 (physical, lifted variables) from t = 0 to t_end, invoking
/// hook at every schedule time in increasing order (schedule times must be
/// nonnegative multiples of dt up to rounding; they are snapped to the
/// nearest step). An empty schedule yields no hook calls; the final state
/// is always returned. Hook exceptions abort the run. Sequential and
/// deterministic: identical inputs give bit-identical trajectories.
IntegrateResult integrate(const std::vector<Field>& state0,
                          const ReactionFn& reaction, const StepperConfig& cfg,
                          double t_end, const std::vector<double>& schedule,
                          const SnapshotHook& hook);

}  // namespace fracrd
