#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcdepth/sampling.hpp"
#include "lcdepth/sphere.hpp"

namespace lcdepth {

enum class Family { Vmf, Watson };
enum class Noise { Low, Medium, High };

std::string to_string(Family family);
std::string to_string(Noise noise);
Family parse_family(const std::string& text);
Noise parse_noise(const std::string& text);

// Concentration range drawn per replication: low noise means high
// concentration.
std::pair<double, double> kappa_range(Noise noise);

// One simulation cell: distribution family, setup, dimension, noise level,
// sizes and seeding. Class-1 share is redrawn per replication.
struct ScenarioSpec {
  Family family = Family::Vmf;
  int setup = 1;  // 1..3
  std::size_t dim = 3;
  Noise noise = Noise::Low;
  std::size_t n = 500;
  double train_fraction = 0.7;
  std::pair<double, double> class1_fraction_range = {0.35, 0.50};
  std::size_t replications = 20;
  std::vector<double> beta_grid = {0.05, 0.10, 0.25};  // LCDD arms; the CDD arm is beta = 1
  std::uint64_t master_seed = 0;

  void validate() const;
};

// Data of one replication, already split 70/30 with per-class stratification.
struct ReplicationData {
  SphericalSample train;
  SphericalSample test;
  double class1_fraction = 0.0;
  double kappa = 0.0;
  std::vector<UnitVector> centers;
};

ReplicationData generate_scenario1(const ScenarioSpec& spec, std::size_t replication);
ReplicationData generate_scenario2(const ScenarioSpec& spec, std::size_t replication);
ReplicationData generate_replication(const ScenarioSpec& spec, std::size_t replication);

struct MethodSummary {
  double mean = 0.0;
  double sd = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
};

struct CellResult {
  ScenarioSpec spec;
  std::vector<std::string> methods;  // "cdd", "lcdd@<beta>"
  std::vector<double> method_betas;
  std::vector<std::vector<double>> rates;  // [replication][method]
  std::vector<MethodSummary> summaries;    // per method

  std::size_t method_index(const std::string& name) const;
  // Index of the LCDD arm with the lowest mean rate.
  std::size_t best_lcdd_index() const;
};

// Runs every replication of the cell (in parallel, derived rng streams:
// the result is a pure function of the ScenarioSpec) and trains one model per
// method arm per replication, scoring Eq-style misclassification on the
// test split.
CellResult run_cell(const ScenarioSpec& spec);

struct LongRow {
  std::string family;
  int setup = 0;
  std::size_t dim = 0;
  std::string noise;
  std::string method;
  double beta = 0.0;
  std::size_t replication = 0;
  double rate = 0.0;
};

std::vector<LongRow> aggregate(std::span<const CellResult> cells);

MethodSummary summarize_rates(std::vector<double> rates);

}  // namespace lcdepth
