#include "lagspec/series.hpp"

#include "lagspec/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lagspec {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

MultivariateSeries::MultivariateSeries(Eigen::MatrixXd values, bool centered)
    : values_(std::move(values)), centered_(centered) {
  if (values_.cols() < 1) {
    throw Error(ErrorCode::InsufficientData, "series needs at least one component");
  }
  if (values_.rows() < 2) {
    throw Error(ErrorCode::InsufficientData,
                "series needs at least 2 time points, got " + std::to_string(values_.rows()));
  }
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    for (Eigen::Index t = 0; t < values_.rows(); ++t) {
      if (!std::isfinite(values_(t, j))) {
        throw Error(ErrorCode::NonFinite, "non-finite value at (row " + std::to_string(t + 1) +
                                              ", col " + std::to_string(j + 1) + ")");
      }
    }
  }
}

MultivariateSeries load_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_pending = has_header;
  std::size_t row_index = 0;
  while (std::getline(in, line)) {
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    ++row_index;
    const auto cells = split_commas(view);
    if (!rows.empty() && cells.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError, "ragged row " + std::to_string(row_index) + ": expected " +
                                             std::to_string(rows.front().size()) + " columns, got " +
                                             std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto cell = cells[c];
      double value = 0.0;
      const auto* begin = cell.data();
      const auto* end = cell.data() + cell.size();
      // from_chars rejects a leading '+', which some writers emit.
      if (begin != end && *begin == '+') ++begin;
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw Error(ErrorCode::ParseError, "cannot parse '" + std::string(cell) + "' at (row " +
                                               std::to_string(row_index) + ", col " +
                                               std::to_string(c + 1) + ")");
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }

  if (rows.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                path.string() + " holds " + std::to_string(rows.size()) + " data rows; need at least 2");
  }
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t c = 0; c < rows[t].size(); ++c) {
      values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)) = rows[t][c];
    }
  }
  return MultivariateSeries(std::move(values), false);
}

void write_csv(const MultivariateSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << std::setprecision(17);
  const auto& v = series.values();
  for (Eigen::Index t = 0; t < v.rows(); ++t) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      if (j > 0) out << ',';
      out << v(t, j);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

MultivariateSeries center(const MultivariateSeries& series) {
  if (series.centered()) return series;
  Eigen::MatrixXd values = series.values();
  const Eigen::RowVectorXd means = values.colwise().mean();
  values.rowwise() -= means;
  return MultivariateSeries(std::move(values), true);
}

}  // namespace lagspec
