#include "regressor/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "regressor/error.hpp"
#include "regressor/text.hpp"

namespace regressor {

void validate(const Dataset& data) {
  if (data.rows() < 1) throw InvalidInputError("dataset has no rows");
  if (data.variables() < 1) throw InvalidInputError("dataset has no independent variables");
  if (data.x.rows() != data.rows()) {
    throw InvalidInputError("response and variable tables differ in row count");
  }
  if (data.names.size() != data.variables()) {
    throw InvalidInputError("variable name count does not match the variable count");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(data.y.begin(), data.y.end(), finite) ||
      !std::all_of(data.x.values().begin(), data.x.values().end(), finite)) {
    throw InvalidInputError("dataset contains non-finite values");
  }
}

}  // namespace regressor

namespace regressor::ingest {
namespace {

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool is_header(const std::vector<std::string_view>& fields) {
  return std::any_of(fields.begin(), fields.end(), [](std::string_view f) {
    return !f.empty() && !parse_real(f).has_value();
  });
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

Dataset parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv_text(buffer.str(), path.string());
}

Dataset parse_csv_text(std::string_view text, std::string source) {
  Dataset data;
  data.source = std::move(source);

  std::size_t width = 0;
  std::size_t line_number = 0;
  bool first = true;
  std::vector<double> y;
  std::vector<double> x;

  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    const auto fields = split_fields(line);
    if (first) {
      first = false;
      width = fields.size();
      if (width < 2) {
        throw ParseError("expected at least two columns (response and one variable), found " +
                             std::to_string(width) + " at row " + std::to_string(line_number),
                         line_number, 0);
      }
      if (is_header(fields)) {
        data.response_name = fields[0].empty() ? "Y" : std::string(fields[0]);
        for (std::size_t c = 1; c < width; ++c) {
          data.names.push_back(fields[c].empty() ? "X" + std::to_string(c)
                                                 : std::string(fields[c]));
        }
        continue;
      }
      for (std::size_t c = 1; c < width; ++c) data.names.push_back("X" + std::to_string(c));
    }

    if (fields.size() != width) {
      throw ParseError("row " + std::to_string(line_number) + " has " +
                           std::to_string(fields.size()) + " columns, expected " +
                           std::to_string(width),
                       line_number, 0);
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (fields[c].empty()) {
        throw ParseError("empty value at row " + std::to_string(line_number) + ", column " +
                             std::to_string(c + 1),
                         line_number, c + 1);
      }
      const auto value = parse_real(fields[c]);
      if (!value) {
        throw ParseError("invalid number '" + std::string(fields[c]) + "' at row " +
                             std::to_string(line_number) + ", column " +
                             std::to_string(c + 1),
                         line_number, c + 1);
      }
      (c == 0 ? y : x).push_back(*value);
    }
  }

  if (first) throw ParseError("input is empty");
  if (y.empty()) throw ParseError("input has a header but no data rows");
  const std::size_t rows = y.size();
  data.y = std::move(y);
  data.x = Matrix(rows, width - 1, std::move(x));
  return data;
}

void write_csv(const Dataset& data, std::ostream& out) {
  out << data.response_name;
  for (const auto& name : data.names) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < data.rows(); ++r) {
    out << format_real(data.y[r]);
    for (double v : data.x.row(r)) out << ',' << format_real(v);
    out << '\n';
  }
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInputError("correlation: length mismatch");
  if (a.size() < 2) throw InvalidInputError("correlation needs at least two samples");
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw UndefinedStatisticError("correlation is undefined for a constant vector");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

Dataset select_variables(const Dataset& data, const SelectionRule& rule) {
  validate(data);
  const std::size_t v = data.variables();

  std::vector<std::optional<double>> strength(v);
  for (std::size_t k = 0; k < v; ++k) {
    const auto column = data.x.column(k);
    if (std::all_of(column.begin(), column.end(),
                    [&](double value) { return value == column.front(); })) {
      continue;
    }
    strength[k] = std::abs(correlation(column, data.y));
  }

  std::vector<std::size_t> keep;
  if (const auto* threshold = std::get_if<ThresholdRule>(&rule)) {
    for (std::size_t k = 0; k < v; ++k)
      if (strength[k] && *strength[k] > threshold->threshold) keep.push_back(k);
  } else {
    const std::size_t k_max = std::get<TopKRule>(rule).k;
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < v; ++k)
      if (strength[k]) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return *strength[a] > *strength[b];
    });
    order.resize(std::min(order.size(), k_max));
    std::sort(order.begin(), order.end());
    keep = std::move(order);
  }

  if (keep.empty()) {
    throw EmptySelectionError("variable selection kept no variables");
  }

  Dataset out;
  out.y = data.y;
  out.response_name = data.response_name;
  out.source = data.source;
  out.x = Matrix(data.rows(), keep.size());
  for (std::size_t r = 0; r < data.rows(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) out.x(r, c) = data.x(r, keep[c]);
  for (std::size_t k : keep) out.names.push_back(data.names[k]);
  return out;
}

}  // namespace regressor::ingest
