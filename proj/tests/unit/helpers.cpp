#include "helpers.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

namespace testutil {

TempDir::TempDir() {
  std::string tmpl =
      (std::filesystem::temp_directory_path() / "fnls-test-XXXXXX").string();
  if (!mkdtemp(tmpl.data()))
    throw std::runtime_error("mkdtemp failed for " + tmpl);
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

CliResult run_cli(const std::string& args) {
  REQUIRE_MESSAGE(!g_cli_path.empty(),
                  "test binary needs --fnls-cli=<path to executable>");
  const std::string cmd = "'" + g_cli_path + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return CliResult{code, std::move(out)};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open " << p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

fnls::Spectrum random_spectrum(fnls::GridPtr grid, unsigned seed,
                               double decay) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid->modes());
  std::vector<fnls::Complex> c(grid->coeff_count());
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    const double w = std::pow(decay, std::abs(static_cast<double>(k)));
    c[static_cast<std::size_t>(k + n)] =
        w * fnls::Complex(box(rng), box(rng));
  }
  return fnls::Spectrum(std::move(grid), std::move(c));
}

std::vector<fnls::Complex> dense_synthesize(const fnls::Spectrum& c,
                                            std::size_t m) {
  const auto& g = c.grid();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.modes());
  std::vector<fnls::Complex> out(m);
  const double h = 2.0 * g.half_length() / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double x = -g.half_length() + h * static_cast<double>(j);
    fnls::Complex acc = 0.0;
    for (std::ptrdiff_t k = -n; k <= n; ++k)
      acc += c.coeff(k) * std::polar(1.0, g.wavenumber(k) * x);
    out[j] = acc;
  }
  return out;
}

std::vector<fnls::Complex> dense_analyze(const fnls::SpectralGrid& grid,
                                         std::span<const fnls::Complex> u,
                                         std::size_t m) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.modes());
  std::vector<fnls::Complex> out(grid.coeff_count());
  const double h = 2.0 * grid.half_length() / static_cast<double>(m);
  for (std::ptrdiff_t k = -n; k <= n; ++k) {
    fnls::Complex acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double x = -grid.half_length() + h * static_cast<double>(j);
      acc += u[j] * std::polar(1.0, -grid.wavenumber(k) * x);
    }
    out[static_cast<std::size_t>(k + n)] = acc / static_cast<double>(m);
  }
  return out;
}

const fnls::Profile& unit_profile() {
  static const fnls::Profile prof = [] {
    fnls::ModelParams model(0.8, 1.0);
    fnls::WaveParams wave = fnls::WaveParams::traveling(model, 1.0, 0.25);
    return fnls::solve_profile(wave, fnls::make_grid(256.0, 512), 1e-10);
  }();
  return prof;
}

const fnls::Profile& classical_soliton() {
  static const fnls::Profile prof = [] {
    fnls::ModelParams model(1.0, 1.0);
    fnls::WaveParams wave = fnls::WaveParams::traveling(model, 1.0, 0.25);
    return fnls::exact_soliton(wave, fnls::make_grid(128.0, 2048));
  }();
  return prof;
}

}  // namespace testutil
