#include "fnls/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace fnls {

DispersionParams::DispersionParams(double cs, double s) : cs(cs), s(s) {
  if (!(s > 0.5) || s > 1.0)
    throw std::invalid_argument("dispersion analysis requires s in (1/2, 1]");
  if (!(cs > 0.0))
    throw std::invalid_argument("frame speed cs must be positive");
}

namespace {

double branch_sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

}  // namespace

double omega(double k, Branch branch, const DispersionParams& p) {
  return -p.cs * k + branch_sign(branch) * std::pow(std::abs(k), 2.0 * p.s);
}

double phase_velocity(double k, Branch branch, const DispersionParams& p) {
  if (k == 0.0) return -p.cs;  // |k|^{2s} / k -> 0 for s > 1/2
  const double frac = std::pow(std::abs(k), 2.0 * p.s) / k;
  return -p.cs + branch_sign(branch) * frac;
}

double group_velocity(double k, Branch branch, const DispersionParams& p) {
  if (k == 0.0)
    throw std::invalid_argument(
        "group velocity is undefined at k = 0 for s < 1");
  const double d =
      2.0 * p.s * std::pow(std::abs(k), 2.0 * p.s - 1.0) * (k > 0 ? 1.0 : -1.0);
  return -p.cs + branch_sign(branch) * d;
}

double phase_threshold(const DispersionParams& p) {
  return std::pow(p.cs, 1.0 / (2.0 * p.s - 1.0));
}

double group_threshold(const DispersionParams& p) {
  return std::pow(p.cs / (2.0 * p.s), 1.0 / (2.0 * p.s - 1.0));
}

double essential_spectrum(double xi, Branch branch, double lambda1,
                          double lambda2, double s) {
  if (!(s > 0.5) || s > 1.0)
    throw std::invalid_argument("essential spectrum requires s in (1/2, 1]");
  if (!(lambda1 > 0.0))
    throw std::invalid_argument("lambda1 must be positive");
  return -(std::pow(std::abs(xi), 2.0 * s) + lambda1) +
         branch_sign(branch) * xi * lambda2;
}

std::vector<TailRow> tail_report(const DispersionParams& p,
                                 std::span<const double> k_grid) {
  std::vector<TailRow> rows;
  rows.reserve(k_grid.size());
  for (double k : k_grid) {
    if (!(k > 0.0))
      throw std::invalid_argument("tail report needs strictly positive k");
    TailRow r{};
    r.k = k;
    r.omega_plus = omega(k, Branch::plus, p);
    r.omega_minus = omega(k, Branch::minus, p);
    r.phase_plus = phase_velocity(k, Branch::plus, p);
    r.phase_minus = phase_velocity(k, Branch::minus, p);
    r.group_plus = group_velocity(k, Branch::plus, p);
    r.group_minus = group_velocity(k, Branch::minus, p);
    r.plus_leads = r.phase_plus > 0.0 && r.group_plus > 0.0;
    r.minus_trails = r.phase_minus < 0.0 && r.group_minus < 0.0;
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> uniform_grid(double k_lo, double k_hi, std::size_t count) {
  if (!(k_lo > 0.0) || !(k_hi > k_lo))
    throw std::invalid_argument("grid needs 0 < k_lo < k_hi");
  if (count < 2) throw std::invalid_argument("grid needs at least 2 samples");
  std::vector<double> out(count);
  const double step = (k_hi - k_lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = k_lo + step * static_cast<double>(i);
  out.back() = k_hi;
  return out;
}

}  // namespace fnls
