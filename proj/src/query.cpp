#include "attrpriv/query.hpp"

#include <algorithm>
#include <numeric>

#include "attrpriv/errors.hpp"

namespace attrpriv {

bool Predicate::holds(double x) const {
  switch (op) {
    case CompareOp::Gt: return x > constant;
    case CompareOp::Ge: return x >= constant;
    case CompareOp::Lt: return x < constant;
    case CompareOp::Le: return x <= constant;
    case CompareOp::Eq: return x == constant;
  }
  return false;
}

QuerySpec QuerySpec::column_mean(std::size_t j) {
  QuerySpec q;
  q.kind = Kind::ColumnMean;
  q.attribute = j;
  return q;
}

QuerySpec QuerySpec::column_sum(std::size_t j) {
  QuerySpec q;
  q.kind = Kind::ColumnSum;
  q.attribute = j;
  return q;
}

QuerySpec QuerySpec::threshold_count(std::vector<Predicate> predicates) {
  QuerySpec q;
  q.kind = Kind::ThresholdCount;
  q.predicates = std::move(predicates);
  return q;
}

std::set<std::size_t> QuerySpec::read_set() const {
  std::set<std::size_t> a;
  if (kind == Kind::ThresholdCount) {
    for (const auto& p : predicates) a.insert(p.attribute);
  } else {
    a.insert(attribute);
  }
  return a;
}

void QuerySpec::validate(std::size_t attribute_count) const {
  if (kind == Kind::ThresholdCount) {
    if (predicates.empty()) {
      throw ConfigError("config.query", "threshold count needs a predicate");
    }
    std::set<std::size_t> seen;
    for (const auto& p : predicates) {
      if (p.attribute >= attribute_count) {
        throw ConfigError("config.query", "predicate attribute out of range");
      }
      if (!seen.insert(p.attribute).second) {
        throw ConfigError("config.query",
                          "predicates must reference distinct attributes");
      }
    }
  } else if (attribute >= attribute_count) {
    throw ConfigError("config.query", "query attribute out of range");
  }
}

double evaluate_query(const QuerySpec& query, const Dataset& data) {
  query.validate(data.attribute_count());
  switch (query.kind) {
    case QuerySpec::Kind::ColumnSum: {
      const auto& col = data.column(query.attribute);
      return std::accumulate(col.begin(), col.end(), 0.0);
    }
    case QuerySpec::Kind::ColumnMean: {
      const auto& col = data.column(query.attribute);
      return std::accumulate(col.begin(), col.end(), 0.0) /
             static_cast<double>(col.size());
    }
    case QuerySpec::Kind::ThresholdCount: {
      std::size_t count = 0;
      for (std::size_t r = 0; r < data.record_count(); ++r) {
        bool ok = true;
        for (const auto& p : query.predicates) {
          if (!p.holds(data.column(p.attribute)[r])) {
            ok = false;
            break;
          }
        }
        if (ok) ++count;
      }
      return static_cast<double>(count);
    }
  }
  throw ConfigError("config.query", "unknown query kind");
}

double column_sensitivity(const QuerySpec& query,
                          const std::set<std::size_t>& changed,
                          std::size_t record_count,
                          const std::vector<AttributeDomain>& domains) {
  query.validate(domains.size());
  for (std::size_t j : changed) {
    if (j >= domains.size()) {
      throw ConfigError("config.query", "changed-column index out of range");
    }
  }
  auto reads = query.read_set();
  std::vector<std::size_t> touched;
  std::set_intersection(reads.begin(), reads.end(), changed.begin(),
                        changed.end(), std::back_inserter(touched));
  if (touched.empty()) return 0.0;

  switch (query.kind) {
    case QuerySpec::Kind::ColumnMean:
      return domains[query.attribute].width();
    case QuerySpec::Kind::ColumnSum:
      return static_cast<double>(record_count) *
             domains[query.attribute].width();
    case QuerySpec::Kind::ThresholdCount:
      // Any predicate attribute replaced arbitrarily can flip every record.
      return static_cast<double>(record_count);
  }
  throw ConfigError("config.query", "unknown query kind");
}

}  // namespace attrpriv
