#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsbound/linalg.hpp"

namespace tsbound {

/// An ordered n x p sample Y_1..Y_n. Row t-1 holds Y_t.
///
/// The optional index carries timestamps (ISO-8601 strings compare correctly as text) and
/// must be strictly increasing. Values must be finite: there is no missing-data support.
class TimeSeries {
 public:
  explicit TimeSeries(Matrix values, std::optional<std::vector<std::string>> index = std::nullopt,
             std::string name = {});

  /// Scalar series convenience constructor.
  static TimeSeries scalar(const std::vector<double>& values, std::string name = {});

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  const Matrix& values() const noexcept { return values_; }
  const std::optional<std::vector<std::string>>& index() const noexcept { return index_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& column_names() const noexcept { return columns_; }
  void set_column_names(std::vector<std::string> names);

  /// Y_t with t 1-based, as a column vector.
  Vector at(std::size_t t) const;

  /// First `len` observations (Y_1..Y_len).
  TimeSeries head(std::size_t len) const;

  /// Observations [first, first+len), 0-based rows.
  TimeSeries slice(std::size_t first, std::size_t len) const;

  /// Single column as a scalar series.
  TimeSeries column(std::size_t j) const;

  std::vector<double> column_values(std::size_t j) const;

 private:
  Matrix values_;
  std::optional<std::vector<std::string>> index_;
  std::string name_;
  std::vector<std::string> columns_;
};

struct CsvOptions {
  /// nullopt: detect from the first data row (a non-numeric first field means a date column).
  std::optional<bool> has_index;
  char delimiter = ',';
};

/// Parses header + rows. First column may be a date string; remaining columns are reals.
TimeSeries read_series_csv(std::istream& in, const CsvOptions& opts = {}, std::string name = {});
TimeSeries read_series_csv_file(const std::string& path, const CsvOptions& opts = {});

void write_series_csv(std::ostream& out, const TimeSeries& series);

}  // namespace tsbound
