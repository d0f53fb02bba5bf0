#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fnls/format.hpp"
#include "fnls/grid.hpp"
#include "fnls/model.hpp"
#include "fnls/transforms.hpp"
#include "fnlscli/config.hpp"
#include "fnlscli/io.hpp"
#include "helpers.hpp"

using namespace fnlscli;
namespace fs = std::filesystem;
using testutil::read_file;
using testutil::run_cli;
using testutil::TempDir;
using testutil::write_file;

namespace {

double parse_back(const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  REQUIRE(res.ec == std::errc());
  return v;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

// Splits one CSV data line into doubles; flag columns parse as 0/1.
std::vector<double> csv_row(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(parse_back(cell));
  return out;
}

}  // namespace

TEST_CASE("config parses comments, blanks, and typed values") {
  const Config cfg = Config::parse_text(
      "# leading comment\n"
      "model.s = 0.8   # trailing comment\n"
      "\n"
      "run.modes = 512\n"
      "run.trace = on\n"
      "run.snapshots = 0, 0.5, 1.25\n"
      "name = fancy wave\n"
      "count = -3\n");
  CHECK(cfg.has("model.s"));
  CHECK_FALSE(cfg.has("model.sigma"));
  CHECK(cfg.get_double("model.s") == 0.8);
  CHECK(cfg.get_size("run.modes") == 512);
  CHECK(cfg.get_bool("run.trace"));
  CHECK(cfg.get_string("name") == "fancy wave");
  CHECK(cfg.get_int("count") == -3);
  const auto snaps = cfg.get_double_list("run.snapshots");
  REQUIRE(snaps.size() == 3);
  CHECK(snaps[0] == 0.0);
  CHECK(snaps[1] == 0.5);
  CHECK(snaps[2] == 1.25);
  CHECK_NOTHROW(cfg.require_fully_consumed());
}

TEST_CASE("config getters fall back and reject junk") {
  const Config cfg = Config::parse_text(
      "alpha = not-a-number\n"
      "beta = 2.5\n"
      "flag = maybe\n");
  CHECK(cfg.get_double("missing", 7.5) == 7.5);
  CHECK(cfg.get_string("missing", std::string("dflt")) == "dflt");
  CHECK(cfg.get_bool("missing", true));
  CHECK_THROWS_AS(cfg.get_double("absent"), ConfigError);
  CHECK_THROWS_AS(cfg.get_double("alpha"), ConfigError);
  CHECK_THROWS_AS(cfg.get_size("beta"), ConfigError);    // not an integer
  CHECK_THROWS_AS(cfg.get_int("beta"), ConfigError);
  CHECK_THROWS_AS(cfg.get_bool("flag"), ConfigError);

  const Config negative = Config::parse_text("n = -4\n");
  CHECK_THROWS_AS(negative.get_size("n"), ConfigError);

  const Config bools = Config::parse_text(
      "a = true\nb = on\nc = 1\nd = false\ne = off\nf = 0\n");
  for (const char* k : {"a", "b", "c"}) CHECK(bools.get_bool(k));
  for (const char* k : {"d", "e", "f"}) CHECK_FALSE(bools.get_bool(k));
}

TEST_CASE("config rejects malformed structure") {
  CHECK_THROWS_AS(Config::parse_text("just some words\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_text("key with space = 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_text("key =\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_text("dup = 1\ndup = 2\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_file("/nonexistent/path/cfg"), ConfigError);

  const Config cfg = Config::parse_text("used = 1\nstray.key = 2\n");
  (void)cfg.get_int("used");
  try {
    cfg.require_fully_consumed();
    FAIL("expected a ConfigError naming the unconsumed key");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("stray.key") != std::string::npos);
  }
}

TEST_CASE("config round-trips through a file") {
  TempDir dir;
  const fs::path path = dir.path() / "settings.cfg";
  write_file(path, "model.s = 0.75\nrun.modes = 64\n");
  const Config cfg = Config::parse_file(path.string());
  CHECK(cfg.get_double("model.s") == 0.75);
  CHECK(cfg.get_size("run.modes") == 64);
}

TEST_CASE("shortest formatting round-trips exactly") {
  const double values[] = {0.0,    0.5,      1.0 / 3.0, 6.25e-3, -500.0,
                           1e-17,  1.4941389, 2.5e-2,   1e300,   -0.0625};
  for (double v : values) {
    const std::string s = fnls::format_shortest(v);
    CHECK(parse_back(s) == v);
    const std::string f = fnls::format_full(v);
    CHECK(parse_back(f) == v);
    // Full precision never needs more than 17 significant digits + frame.
    CHECK(f.size() <= 25);
  }
  CHECK(fnls::format_shortest(0.0) == "0");
  CHECK(fnls::format_shortest(0.5) == "0.5");
}

TEST_CASE("series CSV carries the exact header and formatted rows") {
  TempDir dir;
  const fs::path path = dir.path() / "series.csv";
  std::vector<SeriesRow> rows;
  rows.push_back(SeriesRow{0.0, 1.25, -0.5, 3e-2, -16.0, 1.5, 0.0});
  rows.push_back(SeriesRow{0.5, 1.25, -0.5, 3e-2, -15.9, 1.5, 0.2});
  write_series_csv(path, rows);

  const auto lines = lines_of(read_file(path));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "t,I1,I2,H,x_peak,amplitude,speed");
  const auto row = csv_row(lines[1]);
  REQUIRE(row.size() == 7);
  CHECK(row[0] == 0.0);
  CHECK(row[1] == 1.25);
  CHECK(row[2] == -0.5);
  CHECK(row[3] == 3e-2);
  CHECK(row[4] == -16.0);
  CHECK(row[5] == 1.5);
  CHECK(row[6] == 0.0);
}

TEST_CASE("snapshot CSV reads back bitwise") {
  TempDir dir;
  const fs::path path = dir.path() / "snap.csv";
  auto grid = fnls::make_grid(8.0, 16);
  fnls::Spectrum c = testutil::random_spectrum(grid, 99, 0.8);
  const fnls::ComplexField u = fnls::from_spectrum(c);
  write_snapshot_csv(path, u);

  const auto lines = lines_of(read_file(path));
  REQUIRE(lines.size() == 1 + grid->points());
  CHECK(lines[0] == "x,v,w,rho");

  const fnls::ComplexField back = read_snapshot_csv(path, grid);
  CHECK(std::memcmp(back.samples().data(), u.samples().data(),
                    u.size() * sizeof(fnls::Complex)) == 0);

  auto other = fnls::make_grid(8.0, 24);
  CHECK_THROWS_AS(read_snapshot_csv(path, other), std::runtime_error);
  const fs::path bogus = dir.path() / "bogus.csv";
  write_file(bogus, "a,b\n1,2\n");
  CHECK_THROWS_AS(read_snapshot_csv(bogus, grid), std::runtime_error);
}

TEST_CASE("manifest writes sorted full-precision key-value lines") {
  TempDir dir;
  const fs::path path = dir.path() / "manifest.txt";
  Manifest m;
  m.set("zeta", std::size_t{42});
  m.set("alpha.value", 1.0 / 3.0);
  m.note("first remark");
  m.note("second remark");
  m.set("beta", std::string("text"));
  m.write(path);

  const auto lines = lines_of(read_file(path));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0].rfind("alpha.value = ", 0) == 0);
  CHECK(lines[1] == "beta = text");
  CHECK(lines[2] == "note.0 = first remark");
  CHECK(lines[3] == "note.1 = second remark");
  CHECK(lines[4] == "zeta = 42");
  CHECK(parse_back(lines[0].substr(std::strlen("alpha.value = "))) ==
        1.0 / 3.0);
}

TEST_CASE("series recorder tracks a drifting crest and fills speeds") {
  auto grid = fnls::make_grid(32.0, 64);
  const double speed = 1.2;
  auto bump_at = [&](double center) {
    std::vector<fnls::Complex> u(grid->points());
    const double span = 2.0 * grid->half_length();
    for (std::size_t j = 0; j < u.size(); ++j) {
      double d = std::fmod(std::abs(grid->node(j) - center), span);
      d = std::min(d, span - d);
      u[j] = fnls::Complex(std::exp(-d * d / 4.0), 0.0);
    }
    return fnls::ComplexField(grid, std::move(u));
  };

  SeriesRecorder rec(fnls::ModelParams(0.8, 1.0), 7);
  const int samples = 21;
  for (int i = 0; i < samples; ++i) {
    const double t = 0.25 * i;
    rec.record(t, bump_at(-5.0 + speed * t));
  }
  const auto rows = rec.finish();
  REQUIRE(rows.size() == samples);
  for (int i = 0; i < samples; ++i) {
    const double t = 0.25 * i;
    CHECK(rows[i].t == t);
    CHECK(std::abs(rows[i].x_peak - (-5.0 + speed * t)) < 0.05);
    CHECK(rows[i].amplitude == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(rows[i].mass == doctest::Approx(rows[0].mass).epsilon(1e-9));
  }
  for (int i = 5; i < samples - 5; ++i)
    CHECK(rows[i].speed == doctest::Approx(speed).epsilon(0.03));
}

TEST_CASE("series recorder keeps zero placeholders for flat samples") {
  auto grid = fnls::make_grid(8.0, 16);
  fnls::ComplexField zero = fnls::ComplexField::zeros(grid);
  SeriesRecorder rec(fnls::ModelParams(0.8, 1.0));
  rec.record(0.0, zero);
  rec.record(1.0, zero);
  const auto rows = rec.finish();
  REQUIRE(rows.size() == 2);
  for (const SeriesRow& r : rows) {
    CHECK(r.mass == 0.0);
    CHECK(r.x_peak == 0.0);
    CHECK(r.amplitude == 0.0);
    CHECK(r.speed == 0.0);
  }
}

// ---------------------------------------------------------------------------
// End-to-end subprocess checks against the installed command-line binary.
// ---------------------------------------------------------------------------

TEST_CASE("cli usage errors exit with the configuration code") {
  CHECK(run_cli("").exit_code == 2);                  // a subcommand is needed
  CHECK(run_cli("frobnicate").exit_code == 2);        // unknown subcommand
  CHECK(run_cli("--help").exit_code == 0);
  const auto help = run_cli("--help");
  CHECK(help.output.find("profile") != std::string::npos);
  CHECK(help.output.find("dispersion") != std::string::npos);
}

TEST_CASE("cli lists the experiment catalog") {
  const auto res = run_cli("list-presets");
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(res.output);
  CHECK(lines.size() == 12);
  bool found = false;
  for (const auto& l : lines) found |= (l == "overtaking");
  CHECK(found);
}

TEST_CASE("cli run rejects bad presets and exclusive flags") {
  TempDir dir;
  CHECK(run_cli("--out " + dir.path().string() + " run --preset nope")
            .exit_code == 2);
  const fs::path cfg = dir.path() / "r.cfg";
  write_file(cfg, "experiment.preset = overtaking\n");
  CHECK(run_cli("--out " + dir.path().string() + " run --preset overtaking" +
                " --config " + cfg.string())
            .exit_code == 2);
}

TEST_CASE("cli profile flags waves outside the existence range") {
  TempDir dir;
  const fs::path cfg = dir.path() / "p.cfg";
  write_file(cfg,
             "model.s = 0.8\n"
             "wave.lambda2 = 2.0\n"
             "run.modes = 64\n"
             "run.half_length = 32\n");
  const auto res =
      run_cli("--out " + dir.path().string() + " profile --config " +
              cfg.string());
  CHECK(res.exit_code == 4);
}

TEST_CASE("cli profile rejects unknown config keys") {
  TempDir dir;
  const fs::path cfg = dir.path() / "p.cfg";
  write_file(cfg, "model.s = 0.8\nrun.bogus = 1\n");
  const auto res =
      run_cli("--out " + dir.path().string() + " profile --config " +
              cfg.string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("run.bogus") != std::string::npos);
}

TEST_CASE("cli profile writes the shape, report, and decay fit") {
  TempDir dir;
  const fs::path cfg = dir.path() / "p.cfg";
  // The window must sit well inside the box: past x ~ L/3 the periodic
  // tail departs from the line power law and the fit degrades.
  write_file(cfg,
             "model.s = 0.8\n"
             "wave.lambda2 = 0.25\n"
             "run.modes = 512\n"
             "run.half_length = 256\n"
             "profile.decay_lo = 15\n"
             "profile.decay_hi = 50\n");
  const auto res =
      run_cli("--out " + dir.path().string() + " profile --config " +
              cfg.string());
  CHECK(res.exit_code == 0);

  const auto csv = lines_of(read_file(dir.path() / "profile.csv"));
  CHECK(csv[0] == "x,v,w,rho");
  CHECK(csv.size() == 1 + (2 * 512 + 2));  // default grid sampling

  const std::string report = read_file(dir.path() / "profile.txt");
  CHECK(report.find("command = profile") != std::string::npos);
  CHECK(report.find("profile.residual = ") != std::string::npos);
  CHECK(report.find("decay.exponent = ") != std::string::npos);

  // Tail exponent close to -(1 + 2s) = -2.6 on this window.
  for (const auto& line : lines_of(report)) {
    if (line.rfind("decay.exponent = ", 0) == 0) {
      const double expo = parse_back(line.substr(std::strlen("decay.exponent = ")));
      CHECK(expo == doctest::Approx(-2.6).epsilon(0.2));
    }
  }
}

TEST_CASE("cli profile reports an unusable decay window gracefully") {
  TempDir dir;
  const fs::path cfg = dir.path() / "p.cfg";
  write_file(cfg,
             "model.s = 0.8\n"
             "run.modes = 256\n"
             "run.half_length = 64\n");  // default window [50, 300] spills out
  const auto res =
      run_cli("--out " + dir.path().string() + " profile --config " +
              cfg.string());
  CHECK(res.exit_code == 0);
  const std::string report = read_file(dir.path() / "profile.txt");
  CHECK(report.find("decay.rejected = ") != std::string::npos);
  CHECK(report.find("decay.exponent") == std::string::npos);
}

namespace {

std::string tiny_run_config() {
  return
      "experiment.kind = amplitude-scale\n"
      "experiment.a1 = 1.05\n"
      "experiment.a2 = 1.0\n"
      "model.s = 1.0\n"
      "model.sigma = 1.0\n"
      "wave.lambda1 = 1.0\n"
      "wave.lambda2 = 0.25\n"
      "run.modes = 128\n"
      "run.half_length = 32\n"
      "run.dt = 0.05\n"
      "run.duration = 0.5\n"
      "run.cadence = 0.1\n"
      "run.snapshots = 0, 0.5\n";
}

}  // namespace

TEST_CASE("cli run produces series, snapshots, and a manifest") {
  TempDir dir;
  const fs::path cfg = dir.path() / "r.cfg";
  write_file(cfg, tiny_run_config());
  const auto res = run_cli("--out " + dir.path().string() +
                           " run --config " + cfg.string());
  CHECK(res.exit_code == 0);

  const auto series = lines_of(read_file(dir.path() / "series.csv"));
  REQUIRE(series.size() == 7);  // header + t = 0, 0.1, ..., 0.5
  CHECK(series[0] == "t,I1,I2,H,x_peak,amplitude,speed");
  const auto first = csv_row(series[1]);
  const auto last = csv_row(series[6]);
  CHECK(first[0] == 0.0);
  CHECK(last[0] == 0.5);
  // Mass is conserved to rounding over this short march.
  CHECK(last[1] == doctest::Approx(first[1]).epsilon(1e-10));
  // Scaled crest of the closed-form shape: 1.05 sqrt(2 a).
  CHECK(first[5] == doctest::Approx(1.05 * 1.4031215200402280196)
                        .epsilon(1e-3));

  CHECK(fs::exists(dir.path() / "u_t0.csv"));
  CHECK(fs::exists(dir.path() / "u_t0.5.csv"));
  const auto snap = lines_of(read_file(dir.path() / "u_t0.csv"));
  CHECK(snap[0] == "x,v,w,rho");
  CHECK(snap.size() == 1 + 258);  // 2 * 128 + 2 grid points

  const std::string manifest = read_file(dir.path() / "manifest.txt");
  CHECK(manifest.find("command = run") != std::string::npos);
  CHECK(manifest.find("run.modes = 128") != std::string::npos);
  CHECK(manifest.find("model.s = 1\n") != std::string::npos);
  CHECK(manifest.find("coefficients.b1 = ") != std::string::npos);
  CHECK(manifest.find("profile.residual = ") != std::string::npos);
}

TEST_CASE("cli run output is byte-for-byte reproducible") {
  TempDir a;
  TempDir b;
  for (const TempDir* dir : {&a, &b}) {
    const fs::path cfg = dir->path() / "r.cfg";
    write_file(cfg, tiny_run_config());
    const auto res = run_cli("--quiet --out " + dir->path().string() +
                             " run --config " + cfg.string());
    REQUIRE(res.exit_code == 0);
  }
  for (const char* name : {"series.csv", "u_t0.5.csv", "manifest.txt"}) {
    CHECK(read_file(a.path() / name) == read_file(b.path() / name));
  }
}

TEST_CASE("cli convergence reproduces fourth-order decay on a small box") {
  TempDir dir;
  const auto res = run_cli(
      "--quiet --out " + dir.path().string() +
      " convergence --dts 0.04,0.02 --modes 256 --half-length 32" +
      " --duration 1");
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(read_file(dir.path() / "convergence.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "dt,v_error,v_rate,w_error,w_rate");

  // First row leaves the rate columns empty.
  CHECK(lines[1].find(",,") != std::string::npos);
  CHECK(lines[1].back() == ',');
  std::istringstream row1(lines[1]);
  std::string cell;
  std::getline(row1, cell, ',');
  CHECK(parse_back(cell) == 0.04);

  const auto refined = csv_row(lines[2]);
  REQUIRE(refined.size() == 5);
  CHECK(refined[0] == 0.02);
  CHECK(refined[2] > 3.5);  // v-component rate
  CHECK(refined[2] < 4.5);
  CHECK(refined[4] > 3.5);  // w-component rate
  CHECK(refined[4] < 4.5);
  CHECK(refined[1] < 1e-4);
  CHECK(refined[3] < 1e-4);
}

TEST_CASE("cli dispersion writes the table with threshold comments") {
  TempDir dir;
  const auto res =
      run_cli("--quiet --out " + dir.path().string() + " dispersion --count 10");
  CHECK(res.exit_code == 0);

  const auto lines = lines_of(read_file(dir.path() / "dispersion.csv"));
  REQUIRE(lines.size() == 2 + 1 + 10);
  CHECK(lines[0].rfind("# phase_threshold = ", 0) == 0);
  CHECK(lines[1].rfind("# group_threshold = ", 0) == 0);
  CHECK(lines[2] ==
        "k,omega_plus,omega_minus,phase_plus,phase_minus,group_plus,"
        "group_minus,plus_leads,minus_trails");
  const double kp =
      parse_back(lines[0].substr(std::strlen("# phase_threshold = ")));
  const double kg =
      parse_back(lines[1].substr(std::strlen("# group_threshold = ")));
  CHECK(kp == doctest::Approx(0.099212565748012467172).epsilon(1e-14));
  CHECK(kg == doctest::Approx(0.045328015953249793871).epsilon(1e-14));

  const auto row = csv_row(lines[3]);
  REQUIRE(row.size() == 9);
  CHECK(row[0] == 0.2);                      // default k_lo
  CHECK(row[8] == 1.0);                      // minus branch trails

  CHECK(fs::exists(dir.path() / "essential.csv"));
  const auto ess = lines_of(read_file(dir.path() / "essential.csv"));
  CHECK(ess[0] == "xi,lambda_plus,lambda_minus");
  CHECK(ess.size() == 1 + (2 * 10 + 1));
}

TEST_CASE("cli dispersion can skip the essential-spectrum table") {
  TempDir dir;
  const auto res = run_cli("--quiet --out " + dir.path().string() +
                           " dispersion --count 10 --no-essential");
  CHECK(res.exit_code == 0);
  CHECK(fs::exists(dir.path() / "dispersion.csv"));
  CHECK_FALSE(fs::exists(dir.path() / "essential.csv"));
}

TEST_CASE("cli dispersion surfaces invalid sampling as a usage error") {
  TempDir dir;
  CHECK(run_cli("--quiet --out " + dir.path().string() +
                " dispersion --count 1")
            .exit_code == 2);
  CHECK(run_cli("--quiet --out " + dir.path().string() +
                " dispersion --s 0.4")
            .exit_code == 2);
}
