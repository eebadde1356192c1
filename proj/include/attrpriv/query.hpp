#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "attrpriv/dataset.hpp"

namespace attrpriv {

enum class CompareOp { Gt, Ge, Lt, Le, Eq };

struct Predicate {
  std::size_t attribute = 0;
  CompareOp op = CompareOp::Gt;
  double constant = 0.0;

  bool holds(double x) const;
};

// The query DSL: column mean, column sum, or a count of records satisfying a
// conjunction of per-attribute comparisons.
struct QuerySpec {
  enum class Kind { ColumnMean, ColumnSum, ThresholdCount };
  Kind kind = Kind::ColumnMean;
  std::size_t attribute = 0;            // Mean/Sum
  std::vector<Predicate> predicates;    // ThresholdCount

  static QuerySpec column_mean(std::size_t j);
  static QuerySpec column_sum(std::size_t j);
  static QuerySpec threshold_count(std::vector<Predicate> predicates);

  // The attribute indices the query reads.
  std::set<std::size_t> read_set() const;
  void validate(std::size_t attribute_count) const;
};

// Exact query value over the dataset.
double evaluate_query(const QuerySpec& query, const Dataset& data);

// A'-column-neighbor sensitivity: the worst-case change of the query when
// the columns indexed by `changed` are replaced arbitrarily within their
// domains. Closed forms per query kind; throws ConfigError when a referenced
// column's domain is unbounded (never the case for the supported domains).
double column_sensitivity(const QuerySpec& query,
                          const std::set<std::size_t>& changed,
                          std::size_t record_count,
                          const std::vector<AttributeDomain>& domains);

}  // namespace attrpriv
