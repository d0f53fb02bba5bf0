#include "fnlscli/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fnls/errors.hpp"
#include "fnls/format.hpp"
#include "fnlscli/config.hpp"

namespace fnlscli {

using fnls::format_full;
using fnls::format_shortest;

SeriesRecorder::SeriesRecorder(fnls::ModelParams model, int speed_window)
    : model_(model), speed_window_(speed_window) {}

void SeriesRecorder::record(double t, const fnls::ComplexField& u) {
  const fnls::InvariantSet inv = fnls::invariants(u, model_);
  SeriesRow row{t, inv.mass, inv.momentum, inv.energy, 0.0, 0.0, 0.0};
  try {
    tracker_.observe(t, u);
    const fnls::PeakTrack& tr = tracker_.track();
    row.x_peak = tr.positions.back();
    row.amplitude = tr.amplitudes.back();
    tracked_rows_.push_back(rows_.size());
  } catch (const fnls::NoPeak&) {
    // Flat sample: keep the zero placeholders.
  }
  rows_.push_back(row);
}

std::vector<SeriesRow> SeriesRecorder::finish() {
  const std::vector<double> speeds =
      fnls::speed_estimate(tracker_.track(), speed_window_);
  for (std::size_t i = 0; i < tracked_rows_.size(); ++i)
    rows_[tracked_rows_[i]].speed = speeds[i];
  return std::move(rows_);
}

void write_series_csv(const std::filesystem::path& path,
                      const std::vector<SeriesRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t,I1,I2,H,x_peak,amplitude,speed\n";
  for (const SeriesRow& r : rows) {
    out << format_shortest(r.t) << ',' << format_shortest(r.mass) << ','
        << format_shortest(r.momentum) << ',' << format_shortest(r.energy)
        << ',' << format_shortest(r.x_peak) << ','
        << format_shortest(r.amplitude) << ',' << format_shortest(r.speed)
        << '\n';
  }
}

void write_snapshot_csv(const std::filesystem::path& path,
                        const fnls::ComplexField& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "x,v,w,rho\n";
  const fnls::SpectralGrid& g = u.grid();
  for (std::size_t j = 0; j < u.size(); ++j) {
    out << format_shortest(g.node(j)) << ',' << format_shortest(u[j].real())
        << ',' << format_shortest(u[j].imag()) << ','
        << format_shortest(std::abs(u[j])) << '\n';
  }
}

fnls::ComplexField read_snapshot_csv(const std::filesystem::path& path,
                                     fnls::GridPtr grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,v,w,rho", 0) != 0)
    throw std::runtime_error("snapshot header mismatch in " + path.string());

  std::vector<fnls::Complex> samples;
  samples.reserve(grid->points());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double cols[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(row, cell, ','))
        throw std::runtime_error("short snapshot row in " + path.string());
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc())
        throw std::runtime_error("bad number in " + path.string());
      cols[c] = v;
    }
    samples.emplace_back(cols[1], cols[2]);
  }
  if (samples.size() != grid->points())
    throw std::runtime_error("snapshot row count does not match the grid");
  return fnls::ComplexField(std::move(grid), std::move(samples));
}

void Manifest::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) {
  entries_.emplace_back(key, format_full(value));
}

void Manifest::set(const std::string& key, std::size_t value) {
  entries_.emplace_back(key, std::to_string(value));
}

void Manifest::note(const std::string& text) {
  entries_.emplace_back("note." + std::to_string(notes_++), text);
}

void Manifest::write(const std::filesystem::path& path) const {
  std::vector<std::pair<std::string, std::string>> sorted = entries_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [key, value] : sorted) out << key << " = " << value << '\n';
}

}  // namespace fnlscli
