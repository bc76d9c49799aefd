#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace halfheat {

struct RunConfig {
  std::string surface = "right_helicoid";
  double alpha = 0.4;

  std::array<double, 2> u_range{-1.0, 1.0};
  std::array<double, 2> v_range{-1.0, 1.0};
  int u_count = 5;
  int v_count = 5;
  std::vector<std::array<double, 2>> points;  // explicit (u, v) points; override the grid when set

  std::vector<double> r_grid{0.25, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> t_grid{0.05, 0.5, 2.0};

  int jet_order = 6;
  int density_order = 64;
  int radial_nodes = 24;
  double density_tol = 1e-10;
  double heat_density_tol = 1e-6;
  double heat_abs_tol = 1e-5;
  double tolerance = 1e-8;  // pass threshold for per-point checks

  std::string format = "csv";  // csv | json
  std::string output;          // empty: standard output
  int threads = 0;             // 0: HALFHEAT_THREADS or hardware concurrency
  std::uint64_t seed = 12345;

  // Throws UsageError on an invalid configuration.
  void validate() const;
  // (u, v) evaluation points: the explicit list or the tensor grid.
  std::vector<std::array<double, 2>> sample_points() const;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);  // missing keys keep their defaults
  static RunConfig from_file(const std::string& path);

  // FNV-1a of the canonical JSON dump, as 16 hex digits.
  std::string hash() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string fnv1a_hex(const std::string& bytes);

// Worker count: explicit request, else HALFHEAT_THREADS, else the hardware.
int resolve_threads(int requested);

}  // namespace halfheat
