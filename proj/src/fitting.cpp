#include "farc/fitting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace farc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The std distributions are implementation-defined; these are not, so a
// seed reproduces the same numbers on every toolchain.
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& gen) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1]
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Search space: (a, b, [c,] log10 d).
using Point = std::vector<double>;

struct SearchSpace {
  MaterialClass cls;
  std::vector<Bounds> bounds;

  SearchSpace(const FitConfig& config, MaterialClass material_class) : cls(material_class) {
    bounds.push_back(config.a);
    bounds.push_back(config.b);
    if (cls == MaterialClass::NonMetallic) bounds.push_back(config.c);
    bounds.push_back({std::log10(config.d.lower), std::log10(config.d.upper)});
  }

  std::size_t dim() const { return bounds.size(); }

  void clamp(Point& x) const {
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = std::clamp(x[i], bounds[i].lower, bounds[i].upper);
  }

  StatFarcParams to_params(const Point& x) const {
    const double d = std::pow(10.0, x.back());
    if (cls == MaterialClass::NonMetallic) return StatFarcParams::non_metallic(x[0], x[1], x[2], d);
    return StatFarcParams::metallic(x[0], x[1], d);
  }
};

double mean_squared_error(const StatFarcParams& params, const Dataset& dataset) {
  double sum = 0.0;
  for (const auto& s : dataset.samples()) {
    const double r = statfarc_eval(params, s.theta_deg, s.frequency_ghz).magnitude() - s.gamma_mag;
    sum += r * r;
  }
  return sum / static_cast<double>(dataset.size());
}

struct LocalResult {
  Point x;
  double value = kInf;
  int iterations = 0;
  bool converged = false;
};

class NelderMead {
 public:
  NelderMead(const SearchSpace& space, const Dataset& dataset, const FitConfig& config)
      : space_(space), dataset_(dataset), config_(config) {}

  // Simplex descent, restarted from the incumbent until a restart no longer
  // improves the objective by more than the tolerance.
  LocalResult minimize(Point start) const {
    space_.clamp(start);
    LocalResult best{start, objective(start), 0, false};
    double step_scale = 0.1;
    for (int restart = 0; restart < kMaxRestarts; ++restart) {
      const double before = best.value;
      const bool settled = descend(best, step_scale);
      if (!settled) return best;  // iteration budget exhausted
      if (before - best.value <= config_.tolerance) {
        best.converged = true;
        return best;
      }
      step_scale = std::max(step_scale * 0.5, 1e-4);
    }
    best.converged = true;
    return best;
  }

  double objective(const Point& x) const {
    const double v = mean_squared_error(space_.to_params(x), dataset_);
    return std::isfinite(v) ? v : kInf;
  }

 private:
  static constexpr int kMaxRestarts = 12;

  // Returns false if the iteration budget ran out before convergence.
  bool descend(LocalResult& best, double step_scale) const {
    const std::size_t n = space_.dim();
    std::vector<Point> simplex(n + 1, best.x);
    std::vector<double> values(n + 1, best.value);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& bd = space_.bounds[i];
      const double step = step_scale * (bd.upper - bd.lower);
      Point& v = simplex[i + 1];
      v[i] = v[i] + step <= bd.upper ? v[i] + step : v[i] - step;
      space_.clamp(v);
      values[i + 1] = objective(v);
    }

    std::vector<std::size_t> order(n + 1);
    auto point_at = [&](const Point& centroid, const Point& worst, double t) {
      Point p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (worst[k] - centroid[k]);
      space_.clamp(p);
      return p;
    };

    while (best.iterations < config_.max_iterations) {
      for (std::size_t i = 0; i <= n; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];

      if (values[lo] < best.value) {
        best.value = values[lo];
        best.x = simplex[lo];
      }
      if (values[hi] - values[lo] <= config_.tolerance) return true;
      ++best.iterations;

      Point centroid(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i)
        if (i != hi)
          for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);

      const Point reflected = point_at(centroid, simplex[hi], -1.0);
      const double fr = objective(reflected);
      if (fr < values[lo]) {
        const Point expanded = point_at(centroid, simplex[hi], -2.0);
        const double fe = objective(expanded);
        if (fe < fr) {
          simplex[hi] = expanded;
          values[hi] = fe;
        } else {
          simplex[hi] = reflected;
          values[hi] = fr;
        }
        continue;
      }
      if (fr < values[second]) {
        simplex[hi] = reflected;
        values[hi] = fr;
        continue;
      }
      const bool outside = fr < values[hi];
      const Point contracted = point_at(centroid, simplex[hi], outside ? -0.5 : 0.5);
      const double fc = objective(contracted);
      if (fc < (outside ? fr : values[hi])) {
        simplex[hi] = contracted;
        values[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == lo) continue;
        for (std::size_t k = 0; k < n; ++k)
          simplex[i][k] = simplex[lo][k] + 0.5 * (simplex[i][k] - simplex[lo][k]);
        values[i] = objective(simplex[i]);
      }
    }
    for (std::size_t i = 0; i <= n; ++i)
      if (values[i] < best.value) {
        best.value = values[i];
        best.x = simplex[i];
      }
    return false;
  }

  const SearchSpace& space_;
  const Dataset& dataset_;
  const FitConfig& config_;
};

std::vector<Point> start_grid(const FitConfig& config, const SearchSpace& space) {
  const std::size_t n = space.dim();
  const int per_dim = config.grid_points_per_dim;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(per_dim);

  std::mt19937_64 gen(config.seed);
  std::vector<Point> starts;
  starts.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point x(n);
    std::size_t rest = idx;
    for (std::size_t k = n; k-- > 0;) {
      const auto cell = static_cast<double>(rest % static_cast<std::size_t>(per_dim));
      rest /= static_cast<std::size_t>(per_dim);
      const auto& bd = space.bounds[k];
      const double width = (bd.upper - bd.lower) / per_dim;
      x[k] = bd.lower + (cell + 0.5) * width;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto& bd = space.bounds[k];
      const double width = (bd.upper - bd.lower) / per_dim;
      x[k] += (uniform01(gen) - 0.5) * 0.5 * width;
    }
    space.clamp(x);
    starts.push_back(std::move(x));
  }
  return starts;
}

void check_identifiable(const Dataset& dataset) {
  if (dataset.size() < 4)
    throw std::invalid_argument("under-determined fit: need at least 4 samples, have " +
                                std::to_string(dataset.size()));
  std::vector<double> freqs, angles;
  for (const auto& s : dataset.samples()) {
    freqs.push_back(s.frequency_ghz);
    angles.push_back(s.theta_deg);
  }
  for (auto* v : {&freqs, &angles}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  if (freqs.size() < 2 || angles.size() < 2)
    throw std::invalid_argument(
        "under-determined fit: samples must span at least 2 frequencies and 2 angles");
}

}  // namespace

void FitConfig::validate() const {
  for (const Bounds* bd : {&a, &b, &c, &d})
    if (!(bd->lower < bd->upper) || !std::isfinite(bd->lower) || !std::isfinite(bd->upper))
      throw std::invalid_argument("fit config: every bound needs finite lower < upper");
  if (!(d.lower > 0.0)) throw std::invalid_argument("fit config: d lower bound must be > 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("fit config: tolerance must be > 0");
  if (grid_points_per_dim < 1)
    throw std::invalid_argument("fit config: grid_points_per_dim must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("fit config: max_iterations must be >= 1");
}

double rmse(const StatFarcParams& params, const Dataset& dataset) {
  if (dataset.empty()) throw std::domain_error("rmse: dataset is empty");
  if (params.material_class != dataset.material_class())
    throw std::invalid_argument("rmse: parameter class does not match dataset class");
  return std::sqrt(mean_squared_error(params, dataset));
}

std::vector<StatFarcParams> multistart_points(const FitConfig& config, MaterialClass cls) {
  config.validate();
  const SearchSpace space(config, cls);
  std::vector<StatFarcParams> out;
  for (const auto& x : start_grid(config, space)) out.push_back(space.to_params(x));
  return out;
}

FitReport fit_statfarc(const Dataset& dataset, const FitConfig& config) {
  config.validate();
  check_identifiable(dataset);
  const SearchSpace space(config, dataset.material_class());
  const auto starts = start_grid(config, space);
  const NelderMead optimizer(space, dataset, config);

  std::vector<LocalResult> results(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < starts.size(); i = next++)
      results[i] = optimizer.minimize(starts[i]);
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(starts.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  // Lowest objective wins; ties go to the lowest start index.
  std::size_t winner = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].value < results[winner].value) winner = i;
  const LocalResult& best = results[winner];

  FitReport report;
  report.material = dataset.material_name();
  report.params = space.to_params(best.x);
  report.starts_tried = static_cast<int>(starts.size());
  report.converged = best.converged;
  report.iterations = best.iterations;
  report.residuals.reserve(dataset.size());
  for (const auto& s : dataset.samples())
    report.residuals.push_back(
        statfarc_eval(report.params, s.theta_deg, s.frequency_ghz).magnitude() - s.gamma_mag);
  report.rmse = rmse(report.params, dataset);
  return report;
}

Dataset synth_dataset(const StatFarcParams& params, const Grid& grid, double noise_std,
                      std::uint64_t seed, std::string material_name) {
  if (!(noise_std >= 0.0)) throw std::invalid_argument("synth_dataset: noise_std must be >= 0");
  validate(params);
  std::mt19937_64 gen(seed);
  std::vector<ReflectionSample> samples;
  samples.reserve(grid.size());
  for (double f : grid.frequencies_ghz) {
    for (double theta : grid.angles_deg) {
      double mag = statfarc_eval(params, theta, f).magnitude();
      if (noise_std > 0.0) mag = std::max(0.0, mag + noise_std * standard_normal(gen));
      samples.push_back({f, theta, mag});
    }
  }
  return Dataset(std::move(material_name), params.material_class, std::move(samples), grid);
}

}  // namespace farc
