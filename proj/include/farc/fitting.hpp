#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "farc/measurement.hpp"
#include "farc/reflection.hpp"

namespace farc {

struct Bounds {
  double lower;
  double upper;
};

struct FitConfig {
  Bounds a{-20.0, -10.0};
  Bounds b{2.0, 8.0};
  Bounds c{2.0, 6.0};
  Bounds d{1e-4, 1.0};  // searched in log10 space, so lower must stay > 0
  int grid_points_per_dim = 3;
  double tolerance = 1e-14;  // on the mean squared error
  int max_iterations = 4000;  // per local search
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct FitReport {
  std::string material;
  StatFarcParams params;
  double rmse = 0.0;
  std::vector<double> residuals;  // modeled - measured |Gamma|, dataset order
  int starts_tried = 0;
  bool converged = false;
  int iterations = 0;  // of the winning local search
};

/// sqrt(mean((|statfarc_eval| - gamma_mag)^2)) over all samples.
double rmse(const StatFarcParams& params, const Dataset& dataset);

/// Start points of the multistart in start-index order: a grid of cell
/// centers with seeded jitter inside each cell.
std::vector<StatFarcParams> multistart_points(const FitConfig& config, MaterialClass cls);

/// Best of multistart simplex searches minimising RMSE. Deterministic for a
/// given dataset and config, independent of thread scheduling.
FitReport fit_statfarc(const Dataset& dataset, const FitConfig& config = {});

/// |statfarc_eval| on every grid point plus Gaussian(0, noise_std), clipped
/// at zero from below. Deterministic given seed.
Dataset synth_dataset(const StatFarcParams& params, const Grid& grid, double noise_std,
                      std::uint64_t seed, std::string material_name = "synthetic");

}  // namespace farc
