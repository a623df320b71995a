#include "fracrd/models.hpp"

#include <cmath>
#include <limits>

namespace fracrd {

double BistableModel::potential(double w) const {
  const double s = rt1() + rt2(), p = rt1() * rt2();
  const double w2 = w * w;
  return (0.25 * w2 * w2 - s * w2 * w / 3.0 + 0.5 * p * w2) / delta;
}

BistableModel BistableModel::make(double u_minus, double u_mid, double u_plus,
                                  double delta) {
  if (!(u_minus < u_mid && u_mid < u_plus))
    throw std::invalid_argument("bistable roots must satisfy u_minus < u_mid < u_plus");
  if (delta == 0.0 || !std::isfinite(delta))
    throw std::invalid_argument("bistable delta must be finite and nonzero");
  return BistableModel{u_minus, u_mid, u_plus, delta};
}

BistableModel BistableModel::nagumo(double a, double delta) {
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("nagumo threshold a must lie in (0,1)");
  if (!(delta > 0.0))
    throw std::invalid_argument("nagumo delta must be positive");
  return make(0.0, a, 1.0, delta);
}

BistableModel BistableModel::allen_cahn() { return make(-1.0, 0.0, 1.0, -1.0); }

GrayScottModel GrayScottModel::make(double feed, double kill, double r_u,
                                    double r_v) {
  if (!(feed > 0.0) || !(kill > 0.0))
    throw std::invalid_argument("gray-scott feed/kill rates must be positive");
  if (!(r_u >= 0.0) || !(r_v >= 0.0))
    throw std::invalid_argument("gray-scott diffusion coefficients must be >= 0");
  return GrayScottModel{feed, kill, r_u, r_v};
}

ReactionFn ReactionModel::reaction_fn() const {
  if (is_bistable()) {
    const BistableModel m = bistable();
    return [m](const std::vector<std::vector<double>>& phys,
               std::vector<std::vector<double>>& out) {
      const std::vector<double>& w = phys[0];
      std::vector<double>& r = out[0];
      for (std::size_t k = 0; k < w.size(); ++k) r[k] = m.reaction(w[k]);
    };
  }
  const GrayScottModel m = gray_scott();
  return [m](const std::vector<std::vector<double>>& phys,
             std::vector<std::vector<double>>& out) {
    const std::vector<double>& u = phys[0];
    const std::vector<double>& v = phys[1];
    for (std::size_t k = 0; k < u.size(); ++k)
      m.reaction(u[k], v[k], out[0][k], out[1][k]);
  };
}

double InvariantBounds::Component::upper_at(double t) const {
  if (!has_envelope) return upper;
  return std::min(upper, env_coeff * std::exp(-env_rate * t));
}

namespace {

void min_max(const Field& f, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
}

}  // namespace

InvariantBounds invariant_bounds(const ReactionModel& m,
                                 const std::vector<Field>& state0) {
  if (static_cast<int>(state0.size()) != m.components())
    throw std::invalid_argument("invariant_bounds: component count mismatch");
  InvariantBounds b;
  if (m.is_bistable()) {
    const BistableModel& bm = m.bistable();
    double lo, hi;
    min_max(state0[0], lo, hi);
    InvariantBounds::Component c;
    c.name = "u";
    c.lower = 0.0;
    c.upper = bm.rt2();
    const bool inside = lo >= 0.0 && hi <= bm.rt2();
    c.lower_applicable = c.upper_applicable = inside;
    if (!inside)
      c.note = "initial data leaves [0, u_plus - u_minus]; interval monitor not applicable";
    b.components.push_back(std::move(c));
    return b;
  }

  const GrayScottModel& gs = m.gray_scott();
  double ulo, uhi, vlo, vhi;
  min_max(state0[0], ulo, uhi);
  min_max(state0[1], vlo, vhi);
  const double unorm = std::max(std::abs(ulo), std::abs(uhi));

  InvariantBounds::Component cu;
  cu.name = "u";
  cu.lower = -1.0;
  cu.upper = 1.0;
  const bool u_hyp = ulo >= -1.0 && uhi <= 1.0;  // original variable in [0, 2]
  cu.lower_applicable = cu.upper_applicable = u_hyp;
  if (u_hyp) {
    // u(t) <= e^{-F t} (1 - ||u0||_inf) pointwise once -1 <= u0 <= 1
    cu.has_envelope = true;
    cu.env_coeff = 1.0 - unorm;
    cu.env_rate = gs.feed;
  } else {
    cu.note = "initial u leaves [-1, 1]; interval monitor not applicable";
  }
  b.components.push_back(std::move(cu));

  InvariantBounds::Component cv;
  cv.name = "v";
  cv.lower = 0.0;
  cv.lower_applicable = vlo >= 0.0;
  if (!cv.lower_applicable) cv.note = "initial v is not nonnegative; ";
  const double vbound = (gs.feed + gs.kill) / (2.0 - unorm);
  cv.upper = vbound;
  cv.upper_applicable = u_hyp && unorm < 2.0 && vhi <= vbound;
  if (!cv.upper_applicable)
    cv.note += "initial v exceeds (F+kappa)/(2-||u0||); upper bound not applicable";
  b.components.push_back(std::move(cv));
  return b;
}

}  // namespace fracrd
