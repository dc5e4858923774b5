#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "farc/reflection.hpp"

namespace farc {

/// Calibrated, snapshot-averaged linear powers plus link geometry (meters).
struct PowerRecord {
  double frequency_ghz;
  double theta_deg;
  double p_r;
  double p_ref;
  double d_t;
  double d_r;
  double d_ref;
};

struct ReflectionSample {
  double frequency_ghz;
  double theta_deg;
  double gamma_mag;

  /// Measurement noise can push |Gamma| above one; such samples are kept.
  bool exceeds_unity() const { return gamma_mag > 1.0; }
};

using WarningSink = std::function<void(std::string_view)>;

/// |Gamma| = (d_t + d_r) / d_ref * sqrt(p_r / p_ref).
ReflectionSample gamma_from_powers(const PowerRecord& record, const WarningSink& warn = {});

double db_to_linear(double db);

struct Grid {
  std::vector<double> frequencies_ghz;
  std::vector<double> angles_deg;

  std::size_t size() const { return frequencies_ghz.size() * angles_deg.size(); }
};

/// 220..320 GHz in 10 GHz steps without 270 and 310; 10..80 degrees in 10 degree steps.
Grid measurement_grid();

enum class GridMode { Strict, Permissive };

enum class DatasetIssueKind { Parse, MissingColumn, DuplicateKey, OffGrid, InvalidValue };

struct DatasetIssue {
  std::size_t line;  // 1-based line in the source, 0 when not tied to a line
  DatasetIssueKind kind;
  std::string message;
};

class DatasetError : public std::runtime_error {
 public:
  explicit DatasetError(std::vector<DatasetIssue> issues);
  const std::vector<DatasetIssue>& issues() const { return issues_; }

 private:
  std::vector<DatasetIssue> issues_;
};

/// Measured |Gamma| samples of one material. Immutable after construction;
/// (frequency, angle) pairs are unique and lie on `grid()`.
class Dataset {
 public:
  /// Strict mode rejects samples off `grid`. Permissive mode replaces the
  /// grid by the distinct frequencies and angles actually present.
  Dataset(std::string material_name, MaterialClass material_class,
          std::vector<ReflectionSample> samples, Grid grid, GridMode mode = GridMode::Strict);

  const std::string& material_name() const { return name_; }
  MaterialClass material_class() const { return class_; }
  const std::vector<ReflectionSample>& samples() const { return samples_; }
  const Grid& grid() const { return grid_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

 private:
  std::string name_;
  MaterialClass class_;
  std::vector<ReflectionSample> samples_;
  Grid grid_;
};

struct LoadOptions {
  GridMode mode = GridMode::Strict;
  Grid grid = measurement_grid();
  std::string material_name = "unnamed";
};

/// Reads the `frequency_ghz,theta_deg,gamma_mag` CSV schema. Throws
/// DatasetError listing every offending row.
Dataset load_dataset(std::istream& in, MaterialClass material_class,
                     const LoadOptions& options = {});

/// Canonical samples CSV: header plus one row per sample in stored order,
/// numbers at 9 significant digits.
void write_samples_csv(std::ostream& out, const std::vector<ReflectionSample>& samples);

/// Reads the `frequency_ghz,theta_deg,p_r,p_ref,d_t_m,d_r_m,d_ref_m` schema.
/// With `powers_in_db` the power columns are converted to linear first.
std::vector<PowerRecord> load_power_records(std::istream& in, bool powers_in_db = false);

struct AngleAverage {
  double frequency_ghz;
  double mean_gamma;
  std::size_t count;
};

/// Mean |Gamma| over angles per frequency, ascending in frequency. Strict mode
/// requires every grid angle at every grid frequency.
std::vector<AngleAverage> average_over_angles(const Dataset& dataset,
                                              GridMode mode = GridMode::Strict);

std::string format_number(double value, int significant_digits);

}  // namespace farc
