#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace attrpriv {

// Declared domain of one attribute: a bounded real interval or a finite set
// of numeric values.
struct AttributeDomain {
  enum class Kind { Interval, Finite };
  Kind kind = Kind::Interval;
  double lo = 0.0;  // Interval only
  double hi = 1.0;
  std::vector<double> values;  // Finite only; at least 2 distinct values

  static AttributeDomain interval(double lo, double hi);
  static AttributeDomain finite(std::vector<double> values);

  bool contains(double x) const;
  // Width of the domain: hi - lo, or max - min for finite sets.
  double width() const;
};

// Column-oriented n x m table. Column j holds the values of attribute j for
// all n records. Immutable after construction.
class Dataset {
 public:
  Dataset(std::vector<std::string> names, std::vector<AttributeDomain> domains,
          std::vector<std::vector<double>> columns);

  std::size_t record_count() const { return n_; }
  std::size_t attribute_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<AttributeDomain>& domains() const { return domains_; }
  const std::vector<double>& column(std::size_t j) const;
  // Index of a named attribute; throws ConfigError if absent.
  std::size_t index_of(const std::string& name) const;

 private:
  std::size_t n_;
  std::vector<std::string> names_;
  std::vector<AttributeDomain> domains_;
  std::vector<std::vector<double>> columns_;
};

// Parses a CSV stream whose header row must match the given attribute names
// exactly (same order). Values are validated against the domains.
Dataset read_csv(std::istream& in, const std::vector<std::string>& names,
                 const std::vector<AttributeDomain>& domains);

}  // namespace attrpriv
