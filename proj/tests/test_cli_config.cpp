#include "dhe/cli.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using dhe::cli::ConfigError;
using dhe::cli::parse_config;
using dhe::cli::parse_problem_file;
using dhe::cli::parse_profile;
using dhe::cli::RunConfig;

namespace {
std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

bool throws_mentioning(const std::vector<std::string>& args, const std::string& needle) {
  try {
    parse_config(args);
  } catch (const ConfigError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}
}  // namespace

TEST_CASE("parse_config maps the stability flags") {
  const RunConfig c =
      parse_config({"stability", "--L", "3.14159265", "--D", "1", "--tau", "1", "--n-max", "5"});
  CHECK(c.subcommand == "stability");
  CHECK(c.L == Catch::Approx(3.14159265));
  CHECK(c.D == 1.0);
  CHECK(c.tau == 1.0);
  CHECK(c.n_max == 5);
  CHECK(c.branch_count == 8);  // default
  CHECK(c.format == "csv");
}

TEST_CASE("parse_config rejects invariant violations with the key named") {
  CHECK(throws_mentioning({"stability", "--L", "1", "--D", "1", "--tau", "-1"}, "tau"));
  CHECK(throws_mentioning({"stability", "--L", "1", "--D", "1", "--tau", "-1"}, ">= 0"));
  CHECK(throws_mentioning({"stability", "--L", "0", "--D", "1", "--tau", "1"}, "L"));
  CHECK(throws_mentioning({"stability", "--L", "1", "--D", "-2", "--tau", "1"}, "D"));
  CHECK(throws_mentioning({"roots", "--D", "1", "--tau", "1"}, "b"));
  CHECK(throws_mentioning({"lambertw"}, "z"));
  CHECK(throws_mentioning(
      {"simulate-modal", "--L", "1", "--D", "1", "--tau", "1", "--profile", "sine:1",
       "--t-end", "1"},
      "output"));
  CHECK(throws_mentioning({"stability", "--L", "1", "--D", "1", "--tau", "1", "--format", "xml"},
                          "format"));
  CHECK_THROWS_AS(parse_config({"nonsense"}), ConfigError);
  CHECK_THROWS_AS(parse_config({"stability", "--unknown-flag", "3"}), ConfigError);
}

TEST_CASE("parse_config reads complex arguments") {
  const RunConfig a = parse_config({"lambertw", "--k", "-2", "--z", "-0.5"});
  CHECK(a.k == -2);
  CHECK(a.z == dhe::Complex(-0.5, 0.0));
  const RunConfig b = parse_config({"lambertw", "--z", "-0.5,0.25"});
  CHECK(b.k == 0);
  CHECK(b.z == dhe::Complex(-0.5, 0.25));
  CHECK(throws_mentioning({"lambertw", "--z", "abc"}, "z"));
}

TEST_CASE("problem file values are overridden by flags") {
  const auto path = write_temp("dhe_cfg_precedence.cfg",
                               "version = 1\n"
                               "# physics\n"
                               "D = 2\n"
                               "tau = 0.5\n"
                               "L = 1\n");
  const RunConfig file_only =
      parse_config({"stability", "--config", path.string()});
  CHECK(file_only.D == 2.0);
  CHECK(file_only.tau == 0.5);

  const RunConfig overridden =
      parse_config({"stability", "--config", path.string(), "--D", "4"});
  CHECK(overridden.D == 4.0);
  CHECK(overridden.tau == 0.5);
}

TEST_CASE("problem file validation") {
  const auto unknown = write_temp("dhe_cfg_unknown.cfg", "version = 1\nwidth = 3\n");
  CHECK_THROWS_AS(parse_problem_file(unknown.string()), ConfigError);

  const auto unversioned = write_temp("dhe_cfg_nover.cfg", "L = 3\n");
  CHECK_THROWS_AS(parse_problem_file(unversioned.string()), ConfigError);

  const auto wrong_version = write_temp("dhe_cfg_v9.cfg", "version = 9\nL = 3\n");
  CHECK_THROWS_AS(parse_problem_file(wrong_version.string()), ConfigError);

  const auto duplicate = write_temp("dhe_cfg_dup.cfg", "version = 1\nL = 3\nL = 4\n");
  CHECK_THROWS_AS(parse_problem_file(duplicate.string()), ConfigError);

  const auto no_eq = write_temp("dhe_cfg_noeq.cfg", "version = 1\nL\n");
  CHECK_THROWS_AS(parse_problem_file(no_eq.string()), ConfigError);

  CHECK_THROWS_AS(parse_problem_file("/nonexistent/nope.cfg"), ConfigError);

  const auto good = write_temp("dhe_cfg_ok.cfg", "version = 1\nL = 3 # trailing comment\n");
  const auto values = parse_problem_file(good.string());
  CHECK(values.at("L") == "3");
}

TEST_CASE("profile grammar") {
  const auto L = 2.0;
  const auto s1 = parse_profile("sine:2");
  CHECK(s1(0.5, L) == Catch::Approx(std::sin(dhe::kPi * 1.0 / 2.0)));
  const auto s2 = parse_profile("sine:2:0.5");
  CHECK(s2(0.5, L) == Catch::Approx(0.5 * std::sin(dhe::kPi * 0.5)));
  const auto s3 = parse_profile("sines:1=1,2=0.5");
  CHECK(s3(0.7, L) ==
        Catch::Approx(std::sin(dhe::kPi * 0.7 / 2.0) + 0.5 * std::sin(dhe::kPi * 0.7)));
  const auto p1 = parse_profile("parabola");
  CHECK(p1(0.5, L) == Catch::Approx(0.5 * 1.5));
  const auto p2 = parse_profile("parabola:2.5");
  CHECK(p2(0.5, L) == Catch::Approx(2.5 * 0.5 * 1.5));

  CHECK_THROWS_AS(parse_profile("gauss"), ConfigError);
  CHECK_THROWS_AS(parse_profile("sine"), ConfigError);
  CHECK_THROWS_AS(parse_profile("sine:0"), ConfigError);
  CHECK_THROWS_AS(parse_profile("sines:1"), ConfigError);
  CHECK_THROWS_AS(parse_profile("sine:1:bogus"), ConfigError);
}

TEST_CASE("fmt17 round-trips doubles exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-30, 30);
  for (int i = 0; i < 500; ++i) {
    const double v = std::ldexp(mantissa(rng), exponent(rng));
    const std::string text = dhe::fmt17(v);
    CHECK(std::stod(text) == v);
  }
  CHECK(dhe::fmt17(1.0) == "1");
  CHECK(dhe::fmt17(0.5) == "0.5");
}

TEST_CASE("simulate-fd requires its grid options") {
  CHECK(throws_mentioning({"simulate-fd", "--L", "1", "--D", "1", "--tau", "0.5", "--profile",
                           "sine:1", "--t-end", "1", "--output", "/tmp/x.csv", "--dt", "1e-3"},
                          "nx"));
  CHECK(throws_mentioning({"simulate-fd", "--L", "1", "--D", "1", "--tau", "0.5", "--profile",
                           "sine:1", "--t-end", "1", "--output", "/tmp/x.csv", "--nx", "21"},
                          "dt"));
  const RunConfig ok = parse_config({"simulate-fd", "--L", "1", "--D", "1", "--tau", "0.5",
                                     "--profile", "sine:1", "--t-end", "1", "--output",
                                     "/tmp/x.csv", "--nx", "21", "--dt", "1e-3"});
  CHECK(ok.nx == 21);
  CHECK(ok.dt == 1e-3);
  CHECK(ok.epsilon == 0.0);
}
