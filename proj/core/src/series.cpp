#include "tsbound/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "tsbound/error.hpp"

namespace tsbound {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delim)) {
    auto b = field.find_first_not_of(" \t\r\"");
    auto e = field.find_last_not_of(" \t\r\"");
    out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

}  // namespace

TimeSeries::TimeSeries(Matrix values, std::optional<std::vector<std::string>> index,
                       std::string name)
    : values_(std::move(values)), index_(std::move(index)), name_(std::move(name)) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw InvalidInput("TimeSeries: need at least one observation and one column");
  if (!values_.allFinite()) throw InvalidInput("TimeSeries: non-finite entries are not allowed");
  if (index_) {
    if (index_->size() != size())
      throw InvalidInput("TimeSeries: index length does not match number of observations");
    for (std::size_t i = 1; i < index_->size(); ++i)
      if (!((*index_)[i - 1] < (*index_)[i]))
        throw InvalidInput("TimeSeries: index must be strictly increasing (at row " +
                           std::to_string(i + 1) + ")");
  }
  columns_.resize(dim());
  for (std::size_t j = 0; j < dim(); ++j) columns_[j] = "y" + std::to_string(j + 1);
}

TimeSeries TimeSeries::scalar(const std::vector<double>& values, std::string name) {
  Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
  return TimeSeries(std::move(m), std::nullopt, std::move(name));
}

void TimeSeries::set_column_names(std::vector<std::string> names) {
  if (names.size() != dim()) throw InvalidInput("TimeSeries: column name count mismatch");
  columns_ = std::move(names);
}

Vector TimeSeries::at(std::size_t t) const {
  if (t < 1 || t > size()) throw InvalidInput("TimeSeries::at: time index out of range");
  return values_.row(static_cast<Eigen::Index>(t - 1)).transpose();
}

TimeSeries TimeSeries::head(std::size_t len) const { return slice(0, len); }

TimeSeries TimeSeries::slice(std::size_t first, std::size_t len) const {
  if (first + len > size() || len == 0) throw InvalidInput("TimeSeries::slice: out of range");
  std::optional<std::vector<std::string>> idx;
  if (index_) idx.emplace(index_->begin() + static_cast<std::ptrdiff_t>(first),
                          index_->begin() + static_cast<std::ptrdiff_t>(first + len));
  TimeSeries out(values_.middleRows(static_cast<Eigen::Index>(first),
                                    static_cast<Eigen::Index>(len)),
                 std::move(idx), name_);
  out.columns_ = columns_;
  return out;
}

TimeSeries TimeSeries::column(std::size_t j) const {
  if (j >= dim()) throw InvalidInput("TimeSeries::column: out of range");
  TimeSeries out(values_.col(static_cast<Eigen::Index>(j)), index_, name_);
  out.columns_ = {columns_[j]};
  return out;
}

std::vector<double> TimeSeries::column_values(std::size_t j) const {
  if (j >= dim()) throw InvalidInput("TimeSeries::column_values: out of range");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i)
    out[i] = values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

TimeSeries read_series_csv(std::istream& in, const CsvOptions& opts, std::string name) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("CSV: empty input");
  const auto header = split(line, opts.delimiter);
  if (header.empty()) throw InvalidInput("CSV: empty header");

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split(line, opts.delimiter));
  }
  if (rows.empty()) throw InvalidInput("CSV: no data rows");

  bool has_index = opts.has_index.value_or(!parse_double(rows.front().front()).has_value());
  const std::size_t first_col = has_index ? 1 : 0;
  if (header.size() <= first_col) throw InvalidInput("CSV: no value columns");
  const std::size_t p = header.size() - first_col;

  Matrix values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
  std::vector<std::string> index;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      throw InvalidInput("CSV: row " + std::to_string(r + 2) + " has " +
                         std::to_string(row.size()) + " fields, expected " +
                         std::to_string(header.size()));
    if (has_index) index.push_back(row[0]);
    for (std::size_t j = 0; j < p; ++j) {
      auto v = parse_double(row[first_col + j]);
      if (!v)
        throw InvalidInput("CSV: non-numeric value '" + row[first_col + j] + "' at row " +
                           std::to_string(r + 2));
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = *v;
    }
  }
  std::optional<std::vector<std::string>> idx;
  if (has_index) idx = std::move(index);
  TimeSeries ts(std::move(values), std::move(idx), std::move(name));
  ts.set_column_names(std::vector<std::string>(header.begin() + static_cast<std::ptrdiff_t>(first_col),
                                               header.end()));
  return ts;
}

TimeSeries read_series_csv_file(const std::string& path, const CsvOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_series_csv(in, opts, path);
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  const auto& idx = series.index();
  if (idx) out << "date,";
  const auto& cols = series.column_names();
  for (std::size_t j = 0; j < cols.size(); ++j) out << (j ? "," : "") << cols[j];
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (idx) out << (*idx)[i] << ',';
    for (std::size_t j = 0; j < series.dim(); ++j)
      out << (j ? "," : "")
          << series.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    out << '\n';
  }
}

}  // namespace tsbound
