#include "lcdepth/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "lcdepth/errors.hpp"

namespace lcdepth {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end || text.empty()) {
    throw DataError("not a number: '" + text + "'");
  }
  return value;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DataError("missing column: " + name);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file (header row required): " + path);
  table.header = split_csv_line(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto row = split_csv_line(line);
    if (row.size() != table.header.size()) {
      throw DataError(path + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(row.size()) + " fields, header has " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string render_csv(const CsvTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

void atomic_write_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw DataError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DataError("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

DatasetRecipe DatasetRecipe::wholesale(std::string path) {
  DatasetRecipe r;
  r.source = std::move(path);
  r.feature_columns = {"Fresh", "Milk", "Grocery", "Frozen", "Detergents_Paper", "Delicassen"};
  r.label_column = "Channel";
  r.preprocessing = Preprocess::SqrtCompositional;
  r.label_values = {{"1", 1}, {"2", 2}};
  return r;
}

DatasetRecipe DatasetRecipe::spambase(std::string path) {
  DatasetRecipe r;
  r.source = std::move(path);
  r.feature_indices.resize(48);
  for (std::size_t i = 0; i < 48; ++i) r.feature_indices[i] = i;
  r.label_index = 57;
  r.preprocessing = Preprocess::SqrtCompositionalWithComplement;
  r.scale_divisor = 100.0;
  r.label_values = {{"0", 1}, {"1", 2}};
  return r;
}

SphericalSample ingest(const DatasetRecipe& recipe) {
  const CsvTable table = read_csv(recipe.source);

  std::vector<std::size_t> cols;
  if (!recipe.feature_columns.empty()) {
    for (const auto& name : recipe.feature_columns) cols.push_back(table.column(name));
  } else {
    cols = recipe.feature_indices;
    for (const std::size_t c : cols) {
      if (c >= table.header.size()) {
        throw DataError(recipe.source + ": feature index " + std::to_string(c) +
                        " outside the " + std::to_string(table.header.size()) + "-column header");
      }
    }
  }
  if (cols.empty()) throw DataError("recipe selects no feature columns");

  std::optional<std::size_t> label_col;
  if (!recipe.label_column.empty()) {
    label_col = table.column(recipe.label_column);
  } else if (recipe.label_index) {
    if (*recipe.label_index >= table.header.size()) {
      throw DataError(recipe.source + ": label index outside the header");
    }
    label_col = recipe.label_index;
  }

  // Resolve the label mapping up front (explicit map, or the two distinct
  // values present).
  std::vector<std::pair<std::string, int>> label_map = recipe.label_values;
  if (label_col && label_map.empty()) {
    std::set<std::string> values;
    for (const auto& row : table.rows) values.insert(row[*label_col]);
    if (values.size() != 2) {
      throw DataError(recipe.source + ": label column has " + std::to_string(values.size()) +
                      " distinct values; need exactly 2");
    }
    int next = 1;
    for (const auto& v : values) label_map.emplace_back(v, next++);
  }
  auto map_label = [&](const std::string& v) -> std::optional<int> {
    for (const auto& [key, id] : label_map) {
      if (key == v) return id;
    }
    return std::nullopt;
  };

  const double divisor = recipe.scale_divisor.value_or(1.0);
  if (!(divisor > 0.0)) throw DataError("recipe: scale divisor must be positive");

  SphericalSample out;
  std::vector<std::string> errors;
  auto flag = [&](std::size_t data_row, const std::string& why) {
    if (errors.size() < 10) {
      errors.push_back("row " + std::to_string(data_row) + ": " + why);
    }
  };

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t data_row = r + 1;
    std::vector<double> v;
    v.reserve(cols.size() + 1);
    bool bad = false;
    for (const std::size_t c : cols) {
      double x;
      try {
        x = parse_double(row[c]);
      } catch (const DataError&) {
        flag(data_row, "non-numeric value '" + row[c] + "' in column " + table.header[c]);
        bad = true;
        break;
      }
      v.push_back(x);
    }
    if (bad) continue;

    try {
      std::optional<UnitVector> point;
      switch (recipe.preprocessing) {
        case Preprocess::SqrtCompositional:
          point = sqrt_compositional_embed(v);
          break;
        case Preprocess::SqrtCompositionalWithComplement: {
          double sum = 0.0;
          for (double& x : v) {
            x /= divisor;
            if (x < 0.0) throw std::invalid_argument("negative component");
            sum += x;
          }
          double complement = 1.0 - sum;
          if (complement < -1e-9) {
            throw std::invalid_argument("components sum to " + format_double(sum) +
                                        " > 1; complement below -1e-9");
          }
          v.push_back(std::max(0.0, complement));
          point = sqrt_compositional_embed(v);
          break;
        }
        case Preprocess::None:
          point = UnitVector(std::move(v));
          break;
      }
      if (label_col) {
        const auto id = map_label(row[*label_col]);
        if (!id) {
          flag(data_row, "unmapped label value '" + row[*label_col] + "'");
          continue;
        }
        out.push_back(*point, *id);
      } else {
        out.push_back(*point);
      }
    } catch (const std::invalid_argument& e) {
      flag(data_row, e.what());
    }
  }

  if (!errors.empty()) {
    std::string msg = recipe.source + ": " + std::to_string(errors.size()) + "+ bad rows:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw DataError(msg);
  }
  if (out.empty()) throw DataError(recipe.source + ": no data rows");
  return out;
}

void write_sample_csv(const SphericalSample& sample, const std::string& path) {
  CsvTable table;
  for (std::size_t c = 0; c < sample.dim(); ++c) table.header.push_back("x" + std::to_string(c + 1));
  if (sample.has_labels()) table.header.push_back("label");
  for (std::size_t i = 0; i < sample.size(); ++i) {
    std::vector<std::string> row;
    for (const double x : sample.point(i)) row.push_back(format_double(x));
    if (sample.has_labels()) row.push_back(std::to_string(sample.label(i)));
    table.rows.push_back(std::move(row));
  }
  atomic_write_text(path, render_csv(table));
}

SphericalSample read_sample_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const bool labeled = !table.header.empty() && table.header.back() == "label";
  const std::size_t dim = table.header.size() - (labeled ? 1 : 0);
  if (dim < 2) throw DataError(path + ": sample file needs at least 2 coordinate columns");
  SphericalSample out;
  for (const auto& row : table.rows) {
    std::vector<double> v(dim);
    for (std::size_t c = 0; c < dim; ++c) v[c] = parse_double(row[c]);
    if (labeled) {
      out.push_back(UnitVector(std::move(v)), static_cast<int>(parse_double(row[dim])));
    } else {
      out.push_back(UnitVector(std::move(v)));
    }
  }
  if (out.empty()) throw DataError(path + ": no data rows");
  return out;
}

}  // namespace lcdepth
