#pragma once

#include <istream>
#include <map>
#include <string>

#include <Eigen/Core>

#include "adl/errors.hpp"

namespace adl {

/// Forward-only source of (x, y) rows. Each row overwrites the caller's
/// buffers; nothing is retained between calls.
class RowSource {
 public:
  virtual ~RowSource() = default;
  /// Returns false at end of input. Throws DataError with the row number on bad rows.
  virtual bool next(Eigen::Ref<Eigen::VectorXd> x, double& y) = 0;
  virtual Index dimension() const = 0;
  /// 1-based number of the last row returned (0 before the first).
  virtual Index rows_read() const = 0;
};

/// Dense CSV: a header line, then rows "y,x1,...,xp". p is the header width minus one.
class CsvRowSource final : public RowSource {
 public:
  /// Throws DataError if the input is empty or the header has fewer than two columns.
  explicit CsvRowSource(std::istream& in);
  bool next(Eigen::Ref<Eigen::VectorXd> x, double& y) override;
  Index dimension() const override { return p_; }
  Index rows_read() const override { return rows_; }

 private:
  std::istream& in_;
  Index p_ = 0;
  Index rows_ = 0;
  std::string line_;
};

/// Sparse libsvm / svmlight rows "y i:v i:v ..." with 1-based feature indices.
/// The dimension must be supplied since the format has no header.
class LibsvmRowSource final : public RowSource {
 public:
  LibsvmRowSource(std::istream& in, Index p);
  bool next(Eigen::Ref<Eigen::VectorXd> x, double& y) override;
  Index dimension() const override { return p_; }
  Index rows_read() const override { return rows_; }

 private:
  std::istream& in_;
  Index p_;
  Index rows_ = 0;
  std::string line_;
};

/// Flat "key = value" file. '#' starts a comment; blank lines are skipped.
/// Malformed lines and repeated keys are ConfigErrors naming the line.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Strict number parsing for config values and data fields.
double parse_double(const std::string& text, const std::string& what);
Index parse_index(const std::string& text, const std::string& what);

}  // namespace adl
