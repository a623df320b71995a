#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fracrd/grid.hpp"
#include "fracrd/stepper.hpp"

namespace fracrd {

/// Scalar bistable reaction in lifted variables w = u - u_minus. With
/// rt1 = u_mid - u_minus and rt2 = u_plus - u_minus the derivative of the
/// double-well density is
///   N(w) = (1/delta) * w (w - rt1)(w - rt2),
/// the evolution reads w' = -r(-Laplace)^alpha w - N(w), and the well
/// density is W(w) = int_0^w N. Requires u_minus < u_mid < u_plus and
/// delta != 0 (negative delta flips the well orientation, giving the
/// u - u^3 cubic for roots (-1, 0, 1), delta = -1).
struct BistableModel {
  double u_minus = 0.0;
  double u_mid = 0.0;
  double u_plus = 0.0;
  double delta = 1.0;

  double rt1() const { return u_mid - u_minus; }
  double rt2() const { return u_plus - u_minus; }

  /// Factored form: exactly zero at w in {0, rt1, rt2}.
  double nonlinearity(double w) const {
    return w * (w - rt1()) * (w - rt2()) / delta;
  }
  double reaction(double w) const { return -nonlinearity(w); }

  /// W(w) = (1/delta) [w^4/4 - (rt1+rt2) w^3/3 + rt1 rt2 w^2/2], W(0) = 0.
  double potential(double w) const;

  static BistableModel make(double u_minus, double u_mid, double u_plus,
                            double delta);
  static BistableModel nagumo(double a, double delta);  ///< roots (0, a, 1)
  static BistableModel allen_cahn();                    ///< roots (-1, 0, 1), delta = -1
};

/// Two-component Gray-Scott kinetics in lifted variables u = u_orig - 1,
/// v = v_orig (boundary feed u_orig = 1, v = 0):
///   R_u = -(u+1) v^2 - F u
///   R_v =  (u+1) v^2 - (F + kappa) v
/// so R_u + R_v = -F u - (F+kappa) v (the quadratic terms cancel).
struct GrayScottModel {
  double feed = 0.0;   ///< F
  double kill = 0.0;   ///< kappa
  double r_u = 0.0;    ///< u diffusion coefficient
  double r_v = 0.0;    ///< v diffusion coefficient

  void reaction(double u, double v, double& ru, double& rv) const {
    const double q = (u + 1.0) * v * v;
    ru = -q - feed * u;
    rv = q - (kill + feed) * v;
  }

  static GrayScottModel make(double feed, double kill, double r_u, double r_v);
};

/// Variant wrapper the stepper and diagnostics are generic over.
struct ReactionModel {
  std::variant<BistableModel, GrayScottModel> model;

  int components() const {
    return std::holds_alternative<BistableModel>(model) ? 1 : 2;
  }
  bool is_bistable() const { return std::holds_alternative<BistableModel>(model); }
  const BistableModel& bistable() const { return std::get<BistableModel>(model); }
  const GrayScottModel& gray_scott() const { return std::get<GrayScottModel>(model); }

  /// Pointwise reaction on all components; see ReactionFn for the layout.
  ReactionFn reaction_fn() const;
};

/// Runtime bounds implied by the invariant-region results, instantiated
/// from the initial data (lifted variables). Each constraint carries its
/// own applicability flag: a constraint whose hypothesis fails at t = 0 is
/// reported "not applicable" rather than enforced.
struct InvariantBounds {
  struct Component {
    std::string name;
    // static two-sided bounds (lower may be -inf, upper +inf)
    double lower;
    double upper;
    bool lower_applicable = true;
    bool upper_applicable = true;
    // optional decaying upper envelope coeff * e^{-rate t}, tighter than
    // `upper` when applicable (Gray-Scott u component)
    bool has_envelope = false;
    double env_coeff = 0.0;
    double env_rate = 0.0;
    std::string note;  ///< why something is not applicable, if it is

    double upper_at(double t) const;
  };
  std::vector<Component> components;
};

/// Bounds for the lifted system given the lifted initial state:
///  - bistable: w in [0, u_plus - u_minus], applicable when w0 starts inside;
///  - Gray-Scott: u >= -1 and u <= e^{-F t}(1 - ||u0||_inf) when -1 <= u0 <= 1;
///    v >= 0 when v0 >= 0; v <= (F+kappa)/(2 - ||u0||_inf) only when v0
///    already satisfies it (otherwise that clause is not applicable).
InvariantBounds invariant_bounds(const ReactionModel& m,
                                 const std::vector<Field>& initial_state);

}  // namespace fracrd
