#include "fracrd/dst.hpp"

#include <fftw3.h>

#include <list>
#include <mutex>

namespace fracrd {

namespace {
// The FFTW planner mutates global state; creation/destruction must be
// serialized (execution on distinct buffers is thread-safe).
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

SineTransform::SineTransform(const Grid2D& g) : grid_(g) {
  if (g.nx < 1 || g.ny < 1 || !(g.Lx > 0.0) || !(g.Ly > 0.0))
    throw std::invalid_argument("SineTransform: invalid grid");
  std::vector<double> in(g.size()), out(g.size());
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_ESTIMATE keeps planning deterministic (no timing-based choices);
  // FFTW_UNALIGNED lets us execute on arbitrary caller buffers.
  plan_ = fftw_plan_r2r_2d(g.nx, g.ny, in.data(), out.data(), FFTW_RODFT00,
                           FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_) throw std::runtime_error("SineTransform: FFTW planning failed");
}

SineTransform::~SineTransform() {
  if (plan_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

SineTransform::SineTransform(SineTransform&& o) noexcept
    : grid_(o.grid_), plan_(o.plan_) {
  o.plan_ = nullptr;
}

SineTransform& SineTransform::operator=(SineTransform&& o) noexcept {
  if (this != &o) {
    if (plan_) {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
    grid_ = o.grid_;
    plan_ = o.plan_;
    o.plan_ = nullptr;
  }
  return *this;
}

void SineTransform::raw(const double* in, double* out) const {
  // RODFT00 in d dims returns prod_d (2 * sine sum); new-array execution is
  // safe because the plan was created UNALIGNED and out-of-place.
  fftw_execute_r2r(static_cast<fftw_plan>(plan_), const_cast<double*>(in), out);
}

void SineTransform::forward(const double* phys, double* spec) const {
  raw(phys, spec);
  const std::size_t n = grid_.size();
  for (std::size_t i = 0; i < n; ++i) spec[i] *= 0.25;
}

void SineTransform::inverse(const double* spec, double* phys) const {
  raw(spec, phys);
  const double scale =
      1.0 / (static_cast<double>(grid_.nx + 1) * (grid_.ny + 1));
  const std::size_t n = grid_.size();
  for (std::size_t i = 0; i < n; ++i) phys[i] *= scale;
}

namespace {

// Plan cache for the free-function API (the stepper holds its own
// SineTransform; these are for one-off transforms in library calls/tests).
// std::list keeps references stable as entries are added.
const SineTransform& cached_transform(const Grid2D& g) {
  static std::mutex m;
  static std::list<SineTransform> cache;
  std::lock_guard<std::mutex> lock(m);
  for (const auto& t : cache)
    if (t.grid() == g) return t;
  cache.emplace_back(g);
  return cache.back();
}

void check_input(const Field& f, Space expected, const char* op) {
  if (f.space != expected)
    throw std::invalid_argument(std::string(op) + ": input is tagged with the wrong space");
  if (f.values.size() != f.grid.size())
    throw std::invalid_argument(std::string(op) + ": value count does not match grid");
  if (!all_finite(f))
    throw std::invalid_argument(std::string(op) + ": input has non-finite entries");
}

}  // namespace

Field dst1_forward(const Field& f) {
  check_input(f, Space::physical, "dst1_forward");
  Field out = Field::zeros(f.grid, Space::spectral);
  cached_transform(f.grid).forward(f.values.data(), out.values.data());
  return out;
}

Field dst1_inverse(const Field& f) {
  check_input(f, Space::spectral, "dst1_inverse");
  Field out = Field::zeros(f.grid, Space::physical);
  cached_transform(f.grid).inverse(f.values.data(), out.values.data());
  return out;
}

}  // namespace fracrd
