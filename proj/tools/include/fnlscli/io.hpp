#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/model.hpp"
#include "fnls/observables.hpp"

namespace fnlscli {

struct SeriesRow {
  double t;
  double mass;
  double momentum;
  double energy;
  double x_peak;
  double amplitude;
  double speed;
};

// Accumulates one row per cadence sample; speeds are a windowed regression
// over neighboring samples, so the column is filled in write() once the
// whole track is known. A flat (all-zero) sample records zero position and
// amplitude.
class SeriesRecorder {
public:
  SeriesRecorder(fnls::ModelParams model, int speed_window = 11);

  void record(double t, const fnls::ComplexField& u);
  // Computes speeds and returns the finished rows.
  std::vector<SeriesRow> finish();

private:
  fnls::ModelParams model_;
  int speed_window_;
  fnls::PeakTracker tracker_;
  std::vector<SeriesRow> rows_;
  std::vector<std::size_t> tracked_rows_;  // rows with a located peak
};

// series.csv: t,I1,I2,H,x_peak,amplitude,speed
void write_series_csv(const std::filesystem::path& path,
                      const std::vector<SeriesRow>& rows);

// Snapshot CSV: x,v,w,rho
void write_snapshot_csv(const std::filesystem::path& path,
                        const fnls::ComplexField& u);
fnls::ComplexField read_snapshot_csv(const std::filesystem::path& path,
                                     fnls::GridPtr grid);

// manifest.txt: sorted key = value lines; doubles at full precision.
class Manifest {
public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::size_t value);
  void note(const std::string& text);
  void write(const std::filesystem::path& path) const;

private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::size_t notes_ = 0;
};

}  // namespace fnlscli
