#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcdepth/sphere.hpp"

namespace lcdepth {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);
double parse_double(const std::string& text);

// Comma-separated, mandatory header row, dot decimal separator, UTF-8.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws DataError when absent
};

CsvTable read_csv(const std::string& path);
std::string render_csv(const CsvTable& table);

// Write-then-rename; no partial files on failure.
void atomic_write_text(const std::string& path, const std::string& content);

enum class Preprocess { SqrtCompositional, SqrtCompositionalWithComplement, None };

// How to turn a delimited text file into a labeled spherical sample.
// Columns are picked by name when `feature_columns` is set, by 0-based
// position otherwise (the header row is still required).
struct DatasetRecipe {
  std::string source;
  std::vector<std::string> feature_columns;
  std::vector<std::size_t> feature_indices;
  std::string label_column;                 // empty = unlabeled data
  std::optional<std::size_t> label_index;
  Preprocess preprocessing = Preprocess::None;
  std::optional<double> scale_divisor;
  // Explicit label value -> class id map; when empty, the two distinct
  // values found (sorted) become classes 1 and 2.
  std::vector<std::pair<std::string, int>> label_values;

  // Annual spending categories of the wholesale customers data; class =
  // distribution channel.
  static DatasetRecipe wholesale(std::string path);
  // First 48 word-frequency percentage columns of the spam data plus the
  // complement-of-one column; class = spam flag. Requires a header row
  // (the raw UCI file ships without one; see the README).
  static DatasetRecipe spambase(std::string path);
};

SphericalSample ingest(const DatasetRecipe& recipe);

// Canonical sample CSV: columns x1..xq and optional label; coordinates
// round-trip bit-exactly through format_double/parse_double.
void write_sample_csv(const SphericalSample& sample, const std::string& path);
SphericalSample read_sample_csv(const std::string& path);

}  // namespace lcdepth
