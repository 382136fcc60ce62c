// lcdd: local cosine distance depth toolkit.
// Subcommands: depth, train, predict, cv-beta, simulate, ddplot, ingest-check.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcdepth/classifier.hpp"
#include "lcdepth/depth.hpp"
#include "lcdepth/errors.hpp"
#include "lcdepth/experiments.hpp"
#include "lcdepth/io.hpp"
#include "lcdepth/svg.hpp"

namespace {

using namespace lcdepth;

constexpr const char* kVersion = "lcdd 1.0.0";

struct RecipeFlags {
  std::string data;
  std::string recipe;  // wholesale | spambase | "" (manual)
  std::vector<std::string> columns;
  std::string column_range;  // e.g. "1-48" or "1,2,5" (1-based)
  std::string label_col;
  int label_index = 0;  // 1-based; 0 = unset
  std::string preprocess = "none";
  double scale_divisor = 0.0;  // 0 = unset

  void attach(CLI::App* cmd, bool required_label = false) {
    cmd->add_option("--data", data, "input CSV file (header row required)")->required();
    cmd->add_option("--recipe", recipe, "dataset preset: wholesale | spambase")
        ->check(CLI::IsMember({"wholesale", "spambase"}));
    cmd->add_option("--columns", columns, "feature column names")->delimiter(',');
    cmd->add_option("--column-range", column_range, "feature columns by 1-based position, e.g. 1-48");
    cmd->add_option("--label-col", label_col, "label column name");
    cmd->add_option("--label-index", label_index, "label column 1-based position");
    cmd->add_option("--preprocess", preprocess,
                    "preprocessing: none | sqrt | sqrt-complement")
        ->check(CLI::IsMember({"none", "sqrt", "sqrt-complement"}));
    cmd->add_option("--scale-divisor", scale_divisor,
                    "divide features by this before the complement is formed");
    (void)required_label;
  }

  DatasetRecipe build() const {
    if (recipe == "wholesale") {
      auto r = DatasetRecipe::wholesale(data);
      return r;
    }
    if (recipe == "spambase") {
      auto r = DatasetRecipe::spambase(data);
      return r;
    }
    DatasetRecipe r;
    r.source = data;
    r.feature_columns = columns;
    if (!column_range.empty()) {
      std::stringstream ss(column_range);
      std::string part;
      while (std::getline(ss, part, ',')) {
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
          const long v = std::stol(part);
          if (v < 1) throw DataError("--column-range positions are 1-based");
          r.feature_indices.push_back(static_cast<std::size_t>(v - 1));
        } else {
          const long lo = std::stol(part.substr(0, dash));
          const long hi = std::stol(part.substr(dash + 1));
          if (lo < 1 || hi < lo) throw DataError("bad --column-range segment: " + part);
          for (long v = lo; v <= hi; ++v) r.feature_indices.push_back(static_cast<std::size_t>(v - 1));
        }
      }
    }
    if (!label_col.empty()) r.label_column = label_col;
    if (label_index > 0) r.label_index = static_cast<std::size_t>(label_index - 1);
    if (preprocess == "sqrt") r.preprocessing = Preprocess::SqrtCompositional;
    else if (preprocess == "sqrt-complement") r.preprocessing = Preprocess::SqrtCompositionalWithComplement;
    else r.preprocessing = Preprocess::None;
    if (scale_divisor > 0.0) r.scale_divisor = scale_divisor;
    return r;
  }
};

void write_or_print(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    atomic_write_text(out, content);
  }
}

std::vector<double> parse_beta_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) grid.push_back(parse_double(part));
  }
  if (grid.empty()) throw DataError("empty beta grid");
  for (const double b : grid) DepthConfig{b}.validate();
  return grid;
}

std::vector<std::size_t> parse_degrees(const std::string& text) {
  std::vector<std::size_t> degrees;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) degrees.push_back(static_cast<std::size_t>(std::stoul(part)));
  }
  if (degrees.empty()) throw DataError("empty degree set");
  return degrees;
}

// ---- depth ----------------------------------------------------------------

int cmd_depth(const RecipeFlags& flags, double beta, bool profile, const std::string& grid_text,
              const std::string& out) {
  const SphericalSample sample = ingest(flags.build());
  if (sample.size() < 2) throw DataError("depth: need at least 2 points");

  CsvTable table;
  table.header = {"index"};
  if (sample.has_labels()) table.header.push_back("label");
  std::vector<double> betas;
  if (profile) {
    betas = parse_beta_grid(grid_text);
    table.header.push_back("cdd");
    for (const double b : betas) table.header.push_back("lcdd_beta_" + format_double(b));
  } else {
    DepthConfig{beta}.validate();
    table.header.push_back("cdd");
    table.header.push_back("lcdd");
    betas = {beta};
  }

  for (std::size_t i = 0; i < sample.size(); ++i) {
    std::vector<std::string> row{std::to_string(i + 1)};
    if (sample.has_labels()) row.push_back(std::to_string(sample.label(i)));
    // The CDD column is the member-mode global depth (beta = 1).
    row.push_back(format_double(lcdd(sample, i, DepthConfig{1.0})));
    for (const double b : betas) {
      row.push_back(format_double(lcdd(sample, i, DepthConfig{b})));
    }
    table.rows.push_back(std::move(row));
  }
  write_or_print(out, render_csv(table));
  return 0;
}

// ---- train / predict -------------------------------------------------------

int cmd_train(const RecipeFlags& flags, double beta, const std::string& degrees_text,
              std::size_t folds, std::uint64_t seed, double pi1, const std::string& out) {
  const SphericalSample data = ingest(flags.build());
  if (!data.has_labels()) throw DataError("train: the dataset recipe must define a label column");
  const SphericalSample t1 = data.where_label(1);
  const SphericalSample t2 = data.where_label(2);
  std::optional<Priors> priors;
  if (pi1 > 0.0) priors = Priors{pi1, 1.0 - pi1};
  const auto degrees = parse_degrees(degrees_text);
  DDModel model = train(t1, t2, beta, degrees, priors, CvSpec{folds, seed});
  save_model(model, out);

  const auto dd = dd_plot_training(model.train1, model.train2, model.beta);
  std::cout << "trained: n1=" << t1.size() << " n2=" << t2.size() << " beta=" << model.beta
            << " degree=" << model.separator.degree()
            << " training_risk=" << format_double(empirical_risk(dd, model.separator, model.priors))
            << "\nmodel written to " << out << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const RecipeFlags& flags, const std::string& out) {
  const DDModel model = load_model(model_path);
  const SphericalSample data = ingest(flags.build());
  const auto labels = predict(model, data);

  CsvTable table;
  table.header = {"index", "predicted"};
  if (data.has_labels()) table.header.push_back("truth");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<std::string> row{std::to_string(i + 1), std::to_string(labels[i])};
    if (data.has_labels()) row.push_back(std::to_string(data.label(i)));
    table.rows.push_back(std::move(row));
  }
  write_or_print(out, render_csv(table));

  if (data.has_labels()) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == data.label(i)) ++correct;
    }
    const auto dd = dd_plot(data, model.train1, model.train2, model.beta);
    std::cerr << "accuracy=" << format_double(static_cast<double>(correct) / labels.size())
              << " risk=" << format_double(empirical_risk(dd, model.separator, model.priors))
              << "\n";
  }
  return 0;
}

// ---- cv-beta ----------------------------------------------------------------

int cmd_cv_beta(const RecipeFlags& flags, const std::string& grid_text, std::size_t repeats,
                std::size_t folds, const std::string& degrees_text, std::uint64_t seed,
                const std::string& out, const std::string& svg) {
  const SphericalSample data = ingest(flags.build());
  if (!data.has_labels()) throw DataError("cv-beta: the dataset recipe must define a label column");
  const auto grid = parse_beta_grid(grid_text);
  const auto degrees = parse_degrees(degrees_text);
  const BetaSelection sel = select_beta(data, grid, repeats, folds, degrees, seed);

  CsvTable table;
  table.header = {"beta", "mean_mr", "sd_mr", "selected"};
  for (const auto& p : sel.curve) {
    table.rows.push_back({format_double(p.beta), format_double(p.mean_mr),
                          format_double(p.sd_mr), p.beta == sel.best_beta ? "1" : "0"});
  }
  write_or_print(out, render_csv(table));
  if (!svg.empty()) atomic_write_text(svg, render_cv_curve_svg(sel.curve, sel.best_beta));

  std::cout << "selected beta=" << format_double(sel.best_beta) << " with mean MR=";
  for (const auto& p : sel.curve) {
    if (p.beta == sel.best_beta) std::cout << format_double(p.mean_mr);
  }
  std::cout << "\n";
  return 0;
}

// ---- simulate ----------------------------------------------------------------

void write_cell(const CellResult& cell, const std::string& out_dir) {
  const std::string stem = to_string(cell.spec.family) + "_s" + std::to_string(cell.spec.setup) +
                           "_q" + std::to_string(cell.spec.dim) + "_" + to_string(cell.spec.noise);

  const std::vector<CellResult> one{cell};
  CsvTable longt;
  longt.header = {"family", "setup", "dim", "noise", "method", "beta", "replication", "mr"};
  for (const auto& row : aggregate(one)) {
    longt.rows.push_back({row.family, std::to_string(row.setup), std::to_string(row.dim),
                          row.noise, row.method, format_double(row.beta),
                          std::to_string(row.replication + 1), format_double(row.rate)});
  }
  atomic_write_text(out_dir + "/results_" + stem + ".csv", render_csv(longt));

  CsvTable summary;
  summary.header = {"method", "beta", "mean", "sd", "q25", "median", "q75"};
  for (std::size_t arm = 0; arm < cell.methods.size(); ++arm) {
    const auto& s = cell.summaries[arm];
    summary.rows.push_back({cell.methods[arm], format_double(cell.method_betas[arm]),
                            format_double(s.mean), format_double(s.sd), format_double(s.q25),
                            format_double(s.median), format_double(s.q75)});
  }
  atomic_write_text(out_dir + "/summary_" + stem + ".csv", render_csv(summary));
  atomic_write_text(out_dir + "/boxplot_" + stem + ".svg",
                    render_box_plot_svg(cell.methods, cell.summaries));

  nlohmann::json manifest;
  manifest["code_version"] = kVersion;
  manifest["family"] = to_string(cell.spec.family);
  manifest["setup"] = cell.spec.setup;
  manifest["dim"] = cell.spec.dim;
  manifest["noise"] = to_string(cell.spec.noise);
  manifest["n"] = cell.spec.n;
  manifest["train_fraction"] = cell.spec.train_fraction;
  manifest["replications"] = cell.spec.replications;
  manifest["beta_grid"] = cell.spec.beta_grid;
  manifest["master_seed"] = cell.spec.master_seed;
  atomic_write_text(out_dir + "/manifest_" + stem + ".json", manifest.dump(2) + "\n");
}

int cmd_simulate(const std::string& scenario, int setup, std::size_t dim, const std::string& noise,
                 std::size_t replications, std::size_t n, const std::string& grid_text,
                 std::uint64_t seed, const std::string& out_dir, bool sweep) {
  std::vector<ScenarioSpec> specs;
  auto make_spec = [&](Family family, int su, std::size_t q, Noise nz) {
    ScenarioSpec spec;
    spec.family = family;
    spec.setup = su;
    spec.dim = q;
    spec.noise = nz;
    spec.n = n;
    spec.replications = replications;
    spec.beta_grid = parse_beta_grid(grid_text);
    spec.master_seed = seed;
    return spec;
  };

  if (sweep) {
    // The full grid behind a flag: both scenarios, all setups, dimensions
    // and noise levels.
    for (const Family family : {Family::Vmf, Family::Watson}) {
      for (int su = 1; su <= 3; ++su) {
        for (const std::size_t q : {3ul, 10ul, 25ul}) {
          for (const Noise nz : {Noise::Low, Noise::Medium, Noise::High}) {
            specs.push_back(make_spec(family, su, q, nz));
          }
        }
      }
    }
  } else {
    specs.push_back(make_spec(parse_family(scenario), setup, dim, parse_noise(noise)));
  }

  for (const auto& spec : specs) {
    const CellResult cell = run_cell(spec);
    write_cell(cell, out_dir);
    std::cout << to_string(spec.family) << " setup " << spec.setup << " q=" << spec.dim << " "
              << to_string(spec.noise) << ":";
    for (std::size_t arm = 0; arm < cell.methods.size(); ++arm) {
      std::cout << "  " << cell.methods[arm] << " mr=" << format_double(cell.summaries[arm].mean);
    }
    std::cout << "\n";
  }
  return 0;
}

// ---- ddplot ----------------------------------------------------------------

int cmd_ddplot(const RecipeFlags& flags, double beta, const std::string& model_path,
               const std::string& svg, const std::string& csv) {
  const SphericalSample data = ingest(flags.build());
  if (!data.has_labels()) throw DataError("ddplot: the dataset recipe must define a label column");
  const SphericalSample t1 = data.where_label(1);
  const SphericalSample t2 = data.where_label(2);
  const auto dd = dd_plot_training(t1, t2, beta);

  std::optional<DDModel> model;
  if (!model_path.empty()) model = load_model(model_path);
  atomic_write_text(svg, render_dd_plot_svg(dd, model ? &model->separator : nullptr));

  if (!csv.empty()) {
    CsvTable table;
    table.header = {"d1", "d2", "label"};
    for (const auto& p : dd) {
      table.rows.push_back({format_double(p.d1), format_double(p.d2), std::to_string(p.label)});
    }
    atomic_write_text(csv, render_csv(table));
  }
  return 0;
}

// ---- ingest-check ------------------------------------------------------------

int cmd_ingest_check(const RecipeFlags& flags) {
  const SphericalSample sample = ingest(flags.build());
  std::cout << "rows=" << sample.size() << " dim=" << sample.dim();
  if (sample.has_labels()) {
    std::size_t n1 = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (sample.label(i) == 1) ++n1;
    }
    std::cout << " class1=" << n1 << " class2=" << (sample.size() - n1);
  }
  std::cout << " ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local cosine distance depth toolkit"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config");
  app.require_subcommand(1);

  // depth
  auto* depth_cmd = app.add_subcommand("depth", "per-point CDD and LCDD table");
  RecipeFlags depth_flags;
  depth_flags.attach(depth_cmd);
  double depth_beta = 1.0;
  bool depth_profile = false;
  std::string depth_grid = "0.01,0.05,0.1,0.25,0.5,1";
  std::string depth_out = "-";
  depth_cmd->add_option("--beta", depth_beta, "locality level in (0, 1]");
  depth_cmd->add_flag("--profile", depth_profile, "emit the whole beta-grid profile");
  depth_cmd->add_option("--beta-grid", depth_grid, "comma-separated betas for profile mode");
  depth_cmd->add_option("--out", depth_out, "output CSV ('-' for stdout)");

  // train
  auto* train_cmd = app.add_subcommand("train", "fit a DD-classifier model");
  RecipeFlags train_flags;
  train_flags.attach(train_cmd);
  double train_beta = 0.0;
  std::string train_degrees = "1,2,3";
  std::size_t train_folds = 5;
  std::uint64_t train_seed = 0;
  double train_pi1 = 0.0;
  std::string train_out;
  train_cmd->add_option("--beta", train_beta, "locality level in (0, 1]")->required();
  train_cmd->add_option("--degrees", train_degrees, "candidate polynomial degrees");
  train_cmd->add_option("--folds", train_folds, "degree-selection CV folds");
  train_cmd->add_option("--seed", train_seed, "rng seed");
  train_cmd->add_option("--pi1", train_pi1, "class-1 prior (default: training proportions)");
  train_cmd->add_option("--out", train_out, "model output path")->required();

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "classify points with a saved model");
  RecipeFlags predict_flags;
  predict_flags.attach(predict_cmd);
  std::string predict_model, predict_out = "-";
  predict_cmd->add_option("--model", predict_model, "model JSON path")->required();
  predict_cmd->add_option("--out", predict_out, "output CSV ('-' for stdout)");

  // cv-beta
  auto* cv_cmd = app.add_subcommand("cv-beta", "repeated k-fold CV over a beta grid");
  RecipeFlags cv_flags;
  cv_flags.attach(cv_cmd);
  std::string cv_grid = "0.01,0.05,0.1,0.25,0.5,1";
  std::size_t cv_repeats = 10, cv_folds = 10;
  std::string cv_degrees = "1,2,3";
  std::uint64_t cv_seed = 0;
  std::string cv_out, cv_svg;
  cv_cmd->add_option("--beta-grid", cv_grid, "comma-separated betas");
  cv_cmd->add_option("--repeats", cv_repeats, "CV repeats");
  cv_cmd->add_option("--folds", cv_folds, "CV folds");
  cv_cmd->add_option("--degrees", cv_degrees, "candidate polynomial degrees");
  cv_cmd->add_option("--seed", cv_seed, "rng seed");
  cv_cmd->add_option("--out", cv_out, "curve CSV output")->required();
  cv_cmd->add_option("--svg", cv_svg, "curve SVG output");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "run simulation cells");
  std::string sim_scenario = "1", sim_noise = "low";
  int sim_setup = 1;
  std::size_t sim_dim = 3, sim_reps = 20, sim_n = 500;
  std::string sim_grid = "0.05,0.1,0.25";
  std::uint64_t sim_seed = 0;
  std::string sim_out_dir;
  bool sim_sweep = false;
  sim_cmd->add_option("--scenario", sim_scenario, "1|vmf or 2|watson");
  sim_cmd->add_option("--setup", sim_setup, "setup 1..3")->check(CLI::Range(1, 3));
  sim_cmd->add_option("--dim", sim_dim, "dimension q");
  sim_cmd->add_option("--noise", sim_noise, "low | medium | high");
  sim_cmd->add_option("--replications", sim_reps, "replications per cell");
  sim_cmd->add_option("--n", sim_n, "observations per replication");
  sim_cmd->add_option("--beta-grid", sim_grid, "LCDD beta arms (the CDD arm is implicit)");
  sim_cmd->add_option("--seed", sim_seed, "master seed");
  sim_cmd->add_option("--out-dir", sim_out_dir, "output directory")->required();
  sim_cmd->add_flag("--sweep", sim_sweep, "run the full 54-cell grid of both scenarios");

  // ddplot
  auto* dd_cmd = app.add_subcommand("ddplot", "render the DD-plot of a labeled dataset");
  RecipeFlags dd_flags;
  dd_flags.attach(dd_cmd);
  double dd_beta = 0.0;
  std::string dd_model, dd_svg, dd_csv;
  dd_cmd->add_option("--beta", dd_beta, "locality level in (0, 1]")->required();
  dd_cmd->add_option("--model", dd_model, "model JSON whose separator is drawn");
  dd_cmd->add_option("--svg", dd_svg, "SVG output path")->required();
  dd_cmd->add_option("--csv", dd_csv, "CSV twin of the scatter");

  // ingest-check
  auto* check_cmd = app.add_subcommand("ingest-check", "validate a dataset recipe");
  RecipeFlags check_flags;
  check_flags.attach(check_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean; usage errors are 2
  }

  try {
    if (depth_cmd->parsed()) {
      return cmd_depth(depth_flags, depth_beta, depth_profile, depth_grid, depth_out);
    }
    if (train_cmd->parsed()) {
      return cmd_train(train_flags, train_beta, train_degrees, train_folds, train_seed, train_pi1,
                       train_out);
    }
    if (predict_cmd->parsed()) {
      return cmd_predict(predict_model, predict_flags, predict_out);
    }
    if (cv_cmd->parsed()) {
      return cmd_cv_beta(cv_flags, cv_grid, cv_repeats, cv_folds, cv_degrees, cv_seed, cv_out,
                         cv_svg);
    }
    if (sim_cmd->parsed()) {
      return cmd_simulate(sim_scenario, sim_setup, sim_dim, sim_noise, sim_reps, sim_n, sim_grid,
                          sim_seed, sim_out_dir, sim_sweep);
    }
    if (dd_cmd->parsed()) {
      return cmd_ddplot(dd_flags, dd_beta, dd_model, dd_svg, dd_csv);
    }
    if (check_cmd->parsed()) {
      return cmd_ingest_check(check_flags);
    }
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 4;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
