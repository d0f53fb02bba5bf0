#pragma once

#include <complex>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/waves.hpp"

// Set by main() from --fnls-cli=<path>; empty when the harness did not
// provide the executable.
extern std::string g_cli_path;

namespace testutil {

// Unique directory under the system temp root, removed on destruction.
class TempDir {
public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
};

struct CliResult {
  int exit_code;
  std::string output;  // stdout and stderr interleaved
};

// Runs the command-line binary with the given argument string. Fails the
// calling test if the binary path was not provided.
CliResult run_cli(const std::string& args);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);

// Deterministic spectrum with coefficients decay^|k| * (unit box noise).
fnls::Spectrum random_spectrum(fnls::GridPtr grid, unsigned seed,
                               double decay = 1.0);

// Direct O(N m) evaluation of sum c_k e^{i k tilde x_j}; the oracle the FFT
// paths are checked against.
std::vector<fnls::Complex> dense_synthesize(const fnls::Spectrum& c,
                                            std::size_t m);

// Direct projection c_k = (1/m) sum_j u_j e^{-i k tilde x_j}.
std::vector<fnls::Complex> dense_analyze(const fnls::SpectralGrid& grid,
                                         std::span<const fnls::Complex> u,
                                         std::size_t m);

// Shared slow-to-build fixtures, solved once per test-binary run.
const fnls::Profile& unit_profile();            // s = 0.8 on N=512, L=256
const fnls::Profile& classical_soliton();       // s = 1 closed form, N=2048, L=128

}  // namespace testutil
