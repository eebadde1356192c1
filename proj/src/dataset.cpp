#include "attrpriv/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "attrpriv/errors.hpp"

namespace attrpriv {

AttributeDomain AttributeDomain::interval(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw ConfigError("config.domain",
                      "interval domain requires finite lo < hi");
  }
  AttributeDomain d;
  d.kind = Kind::Interval;
  d.lo = lo;
  d.hi = hi;
  return d;
}

AttributeDomain AttributeDomain::finite(std::vector<double> values) {
  std::set<double> distinct(values.begin(), values.end());
  if (distinct.size() < 2) {
    throw ConfigError("config.domain",
                      "finite domain requires at least 2 distinct values");
  }
  AttributeDomain d;
  d.kind = Kind::Finite;
  d.values.assign(distinct.begin(), distinct.end());
  return d;
}

bool AttributeDomain::contains(double x) const {
  if (kind == Kind::Interval) return x >= lo && x <= hi;
  return std::find(values.begin(), values.end(), x) != values.end();
}

double AttributeDomain::width() const {
  if (kind == Kind::Interval) return hi - lo;
  return values.back() - values.front();
}

Dataset::Dataset(std::vector<std::string> names,
                 std::vector<AttributeDomain> domains,
                 std::vector<std::vector<double>> columns)
    : names_(std::move(names)),
      domains_(std::move(domains)),
      columns_(std::move(columns)) {
  if (names_.empty() || names_.size() != domains_.size() ||
      names_.size() != columns_.size()) {
    throw ConfigError("config.dataset", "names/domains/columns size mismatch");
  }
  n_ = columns_.front().size();
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].size() != n_) {
      throw ConfigError("config.dataset",
                        "column '" + names_[j] + "' has wrong length");
    }
    for (double x : columns_[j]) {
      if (!domains_[j].contains(x)) {
        throw ConfigError("config.dataset", "value " + std::to_string(x) +
                                                " outside domain of '" +
                                                names_[j] + "'");
      }
    }
  }
}

const std::vector<double>& Dataset::column(std::size_t j) const {
  if (j >= columns_.size()) {
    throw ConfigError("config.dataset", "attribute index out of range");
  }
  return columns_[j];
}

std::size_t Dataset::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw ConfigError("config.dataset", "unknown attribute '" + name + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    auto b = field.find_first_not_of(" \t\r");
    auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

Dataset read_csv(std::istream& in, const std::vector<std::string>& names,
                 const std::vector<AttributeDomain>& domains) {
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("io.csv", "empty CSV input");
  }
  auto header = split_csv_line(line);
  if (header != names) {
    throw IoError("io.csv", "CSV header does not match declared attributes");
  }
  std::vector<std::vector<double>> columns(names.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != names.size()) {
      throw IoError("io.csv",
                    "row " + std::to_string(row) + ": wrong field count");
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      try {
        std::size_t pos = 0;
        double v = std::stod(fields[j], &pos);
        if (pos != fields[j].size()) throw std::invalid_argument(fields[j]);
        columns[j].push_back(v);
      } catch (const std::exception&) {
        throw IoError("io.csv", "row " + std::to_string(row) +
                                    ": cannot parse '" + fields[j] + "'");
      }
    }
  }
  if (columns.front().empty()) {
    throw IoError("io.csv", "CSV has no data rows");
  }
  return Dataset(names, domains, std::move(columns));
}

}  // namespace attrpriv
