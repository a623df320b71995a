#include "fracrd/fractional.hpp"

#include <cmath>

#include "fracrd/dst.hpp"

namespace fracrd {

FractionalDiffusion FractionalDiffusion::make(const Grid2D& g, double alpha,
                                              double r, double boundary) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in (0,1]");
  if (!(r >= 0.0))
    throw std::invalid_argument("diffusion coefficient r must be >= 0");
  FractionalDiffusion op;
  op.grid = g;
  op.alpha = alpha;
  op.r = r;
  op.g = boundary;
  const EigenvalueTable tab = eigenvalues(g);
  op.lambda1 = tab.min();
  op.lambda_alpha.resize(g.size());
  op.mu.resize(g.size());
  for (std::size_t n = 0; n < tab.lambda.size(); ++n) {
    op.lambda_alpha[n] = std::pow(tab.lambda[n], alpha);
    op.mu[n] = r * op.lambda_alpha[n];
  }
  return op;
}

namespace {

// Multiply the spectral coefficients of f by `w`, preserving the input's
// space (transform in and back out as needed).
Field spectral_multiply(const FractionalDiffusion& op, const Field& f,
                        const std::vector<double>& w) {
  if (!(f.grid == op.grid))
    throw std::invalid_argument("operator and field grids differ");
  if (f.space == Space::spectral) {
    Field out = f;
    for (std::size_t n = 0; n < out.values.size(); ++n) out.values[n] *= w[n];
    return out;
  }
  Field spec = dst1_forward(f);
  for (std::size_t n = 0; n < spec.values.size(); ++n) spec.values[n] *= w[n];
  return dst1_inverse(spec);
}

}  // namespace

Field apply(const FractionalDiffusion& op, const Field& f) {
  return spectral_multiply(op, f, op.lambda_alpha);
}

Field scaled_apply(const FractionalDiffusion& op, const Field& f) {
  return spectral_multiply(op, f, op.mu);
}

Field semigroup_apply(const FractionalDiffusion& op, double t, const Field& f) {
  if (!(t >= 0.0))
    throw std::invalid_argument("semigroup_apply: t must be >= 0");
  if (t == 0.0) return f;  // exact identity, no transform roundtrip
  std::vector<double> w(op.mu.size());
  for (std::size_t n = 0; n < w.size(); ++n) w[n] = std::exp(-t * op.mu[n]);
  return spectral_multiply(op, f, w);
}

Field lift_to_homogeneous(const Field& u, double g) {
  if (u.space != Space::physical)
    throw std::invalid_argument("lift_to_homogeneous: field must be physical");
  Field w = u;
  for (double& v : w.values) v -= g;
  return w;
}

Field unlift(const Field& w, double g) {
  if (w.space != Space::physical)
    throw std::invalid_argument("unlift: field must be physical");
  Field u = w;
  for (double& v : u.values) v += g;
  return u;
}

}  // namespace fracrd
