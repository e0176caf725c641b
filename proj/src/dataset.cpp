#include "spate/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "spate/errors.hpp"

namespace spate {

std::vector<int> FoldPlan::train_indices(int fold) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < assignments.size(); ++i)
    if (assignments[i] != fold) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> FoldPlan::test_indices(int fold) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < assignments.size(); ++i)
    if (assignments[i] == fold) out.push_back(static_cast<int>(i));
  return out;
}

Dataset gen_moons(int n, double noise, std::uint64_t seed) {
  if (n < 4) throw_invalid("gen_moons: n must be >= 4");
  if (noise < 0) throw_invalid("gen_moons: noise must be >= 0");
  const int n_out = n / 2;
  const int n_in = n - n_out;

  Dataset ds;
  ds.name = "moons";
  ds.num_classes = 2;
  ds.X.resize(n, 2);
  ds.y.resize(n);

  auto rng = RngStream::from_key(seed);
  auto noise_rng = rng.child(1);

  for (int i = 0; i < n_out; ++i) {
    const double t = std::numbers::pi * i / (n_out - 1);
    ds.X(i, 0) = std::cos(t);
    ds.X(i, 1) = std::sin(t);
    ds.y[i] = 0;
  }
  for (int i = 0; i < n_in; ++i) {
    const double t = std::numbers::pi * i / (n_in - 1);
    ds.X(n_out + i, 0) = 1.0 - std::cos(t);
    ds.X(n_out + i, 1) = 1.0 - std::sin(t) - 0.5;
    ds.y[n_out + i] = 1;
  }
  if (noise > 0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 2; ++j)
        ds.X(i, j) += noise * noise_rng.next_gaussian();
  }
  return ds;
}

Dataset gen_circles(int n, double noise, double factor, std::uint64_t seed) {
  if (n < 4) throw_invalid("gen_circles: n must be >= 4");
  if (!(factor > 0.0 && factor < 1.0))
    throw_invalid("gen_circles: factor must lie in (0,1)");
  if (noise < 0) throw_invalid("gen_circles: noise must be >= 0");
  const int n_out = n / 2;
  const int n_in = n - n_out;

  Dataset ds;
  ds.name = "circles";
  ds.num_classes = 2;
  ds.X.resize(n, 2);
  ds.y.resize(n);

  auto rng = RngStream::from_key(seed);
  auto noise_rng = rng.child(1);

  for (int i = 0; i < n_out; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n_out;
    ds.X(i, 0) = std::cos(t);
    ds.X(i, 1) = std::sin(t);
    ds.y[i] = 0;
  }
  for (int i = 0; i < n_in; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n_in;
    ds.X(n_out + i, 0) = factor * std::cos(t);
    ds.X(n_out + i, 1) = factor * std::sin(t);
    ds.y[n_out + i] = 1;
  }
  if (noise > 0) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 2; ++j)
        ds.X(i, j) += noise * noise_rng.next_gaussian();
  }
  return ds;
}

Dataset gen_blobs(int n, int d, int centers, double spread,
                  std::uint64_t seed) {
  if (centers < 1 || n < centers) throw_invalid("gen_blobs: need n >= centers >= 1");
  if (d < 1) throw_invalid("gen_blobs: d must be >= 1");
  if (!(spread > 0)) throw_invalid("gen_blobs: spread must be > 0");

  Dataset ds;
  ds.name = "blobs";
  ds.num_classes = centers;
  ds.X.resize(n, d);
  ds.y.resize(n);

  auto rng = RngStream::from_key(seed);
  auto center_rng = rng.child(0);
  auto sample_rng = rng.child(1);

  Eigen::MatrixXd C(centers, d);
  for (int c = 0; c < centers; ++c)
    for (int j = 0; j < d; ++j)
      C(c, j) = -10.0 + 20.0 * center_rng.next_uniform();

  // samples split as evenly as possible across centers, in center order
  int row = 0;
  for (int c = 0; c < centers; ++c) {
    const int count = n / centers + (c < n % centers ? 1 : 0);
    for (int i = 0; i < count; ++i, ++row) {
      for (int j = 0; j < d; ++j)
        ds.X(row, j) = C(c, j) + spread * sample_rng.next_gaussian();
      ds.y[row] = c;
    }
  }
  return ds;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim whitespace and a possible trailing CR
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !s.empty();
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw_data("load_csv: cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw_data("load_csv: empty file: " + path);
  const auto header = split_csv_line(line);
  if (header.empty()) throw_data("load_csv: empty header: " + path);

  // label column by name, falling back to numeric index
  int label_idx = -1;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == label_column) label_idx = static_cast<int>(j);
  if (label_idx < 0) {
    double idx;
    if (parse_double(label_column, idx) && idx >= 0 &&
        idx < static_cast<double>(header.size()))
      label_idx = static_cast<int>(idx);
  }
  if (label_idx < 0)
    throw_data("load_csv: label column not found: " + label_column);

  const int d = static_cast<int>(header.size()) - 1;
  if (d < 1) throw_data("load_csv: no feature columns in " + path);

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw_data("load_csv: row " + std::to_string(lineno) +
                 " has wrong column count in " + path);
    std::vector<double> row;
    row.reserve(d);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (static_cast<int>(j) == label_idx) {
        labels.push_back(cells[j]);
        continue;
      }
      double v;
      if (!parse_double(cells[j], v))
        throw_data("load_csv: non-numeric feature cell '" + cells[j] +
                   "' at row " + std::to_string(lineno) + " in " + path);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw_data("load_csv: no data rows in " + path);

  // label encoding by sorted unique value; numeric order when possible
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() < 2)
    throw_data("load_csv: dataset has a single class: " + path);
  std::vector<std::string> ordered(unique.begin(), unique.end());
  bool all_numeric = true;
  for (const auto& s : ordered) {
    double v;
    if (!parse_double(s, v)) {
      all_numeric = false;
      break;
    }
  }
  if (all_numeric) {
    std::sort(ordered.begin(), ordered.end(),
              [](const std::string& a, const std::string& b) {
                double va, vb;
                parse_double(a, va);
                parse_double(b, vb);
                return va < vb;
              });
  }
  std::map<std::string, int> code;
  for (std::size_t c = 0; c < ordered.size(); ++c)
    code[ordered[c]] = static_cast<int>(c);

  Dataset ds;
  ds.name = path;
  ds.num_classes = static_cast<int>(ordered.size());
  ds.X.resize(static_cast<Eigen::Index>(rows.size()), d);
  ds.y.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < d; ++j) ds.X(static_cast<Eigen::Index>(i), j) = rows[i][j];
    ds.y[i] = code[labels[i]];
  }
  return ds;
}

FoldPlan stratified_kfold(const std::vector<int>& y, int folds,
                          std::uint64_t seed) {
  if (folds < 2) throw_invalid("stratified_kfold: K must be >= 2");
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i)
    by_class[y[i]].push_back(static_cast<int>(i));
  for (const auto& [c, idx] : by_class)
    if (static_cast<int>(idx.size()) < folds)
      throw_invalid("stratified_kfold: class " + std::to_string(c) +
                    " has fewer than K members");

  FoldPlan plan;
  plan.folds = folds;
  plan.seed = seed;
  plan.assignments.assign(y.size(), -1);

  auto rng = RngStream::from_key(seed);
  // Cyclic deal of shuffled per-class indices; the starting fold rotates so
  // remainder samples spread across folds instead of piling on fold 0.
  int rotation = 0;
  for (auto& [c, idx] : by_class) {
    auto class_rng = rng.child(static_cast<std::uint64_t>(c));
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[class_rng.next_below(i)]);
    for (std::size_t i = 0; i < idx.size(); ++i)
      plan.assignments[idx[i]] = static_cast<int>((i + rotation) % folds);
    rotation = static_cast<int>((rotation + idx.size()) % folds);
  }
  return plan;
}

}  // namespace spate
