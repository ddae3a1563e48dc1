#include "adl/io.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

namespace adl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool to_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool to_index(std::string_view s, Index& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool blank(std::string_view s) { return trim(s).empty(); }

std::string row_label(Index row) { return "row " + std::to_string(row); }

}  // namespace

CsvRowSource::CsvRowSource(std::istream& in) : in_(in) {
  std::string header;
  while (std::getline(in_, header) && blank(header)) {
  }
  if (blank(header)) throw DataError("empty input: no CSV header");
  Index columns = 1;
  for (char c : header) columns += c == ',' ? 1 : 0;
  if (columns < 2) throw DataError("CSV header needs a response column and at least one feature");
  p_ = columns - 1;
}

bool CsvRowSource::next(Eigen::Ref<Eigen::VectorXd> x, double& y) {
  if (x.size() != p_) throw ContractViolation("row buffer has the wrong dimension");
  while (std::getline(in_, line_)) {
    if (blank(line_)) continue;
    ++rows_;
    std::string_view rest(line_);
    Index column = 0;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      if (column > p_) {
        throw DataError(row_label(rows_) + ": expected " + std::to_string(p_ + 1) + " fields");
      }
      double v;
      if (!to_double(field, v)) {
        throw DataError(row_label(rows_) + ": cannot parse field " + std::to_string(column + 1));
      }
      if (!std::isfinite(v)) throw DataError(row_label(rows_) + ": non-finite field " + std::to_string(column + 1));
      if (column == 0) {
        y = v;
      } else {
        x[column - 1] = v;
      }
      ++column;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (column != p_ + 1) {
      throw DataError(row_label(rows_) + ": expected " + std::to_string(p_ + 1) + " fields");
    }
    return true;
  }
  return false;
}

LibsvmRowSource::LibsvmRowSource(std::istream& in, Index p) : in_(in), p_(p) {
  if (p < 1) throw ConfigError("libsvm input needs a positive dimension p");
}

bool LibsvmRowSource::next(Eigen::Ref<Eigen::VectorXd> x, double& y) {
  if (x.size() != p_) throw ContractViolation("row buffer has the wrong dimension");
  while (std::getline(in_, line_)) {
    std::string_view rest(line_);
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    rest = trim(rest);
    if (rest.empty()) continue;
    ++rows_;
    x.setZero();

    auto token_end = rest.find_first_of(" \t");
    if (!to_double(rest.substr(0, token_end), y) || !std::isfinite(y)) {
      throw DataError(row_label(rows_) + ": cannot parse label");
    }
    while (token_end != std::string_view::npos) {
      rest.remove_prefix(token_end);
      rest = trim(rest);
      if (rest.empty()) break;
      token_end = rest.find_first_of(" \t");
      const std::string_view token = rest.substr(0, token_end);
      const auto colon = token.find(':');
      Index index;
      double value;
      if (colon == std::string_view::npos || !to_index(token.substr(0, colon), index) ||
          !to_double(token.substr(colon + 1), value)) {
        throw DataError(row_label(rows_) + ": malformed feature '" + std::string(token) + "'");
      }
      if (index < 1 || index > p_) {
        throw DataError(row_label(rows_) + ": feature index " + std::to_string(index) + " outside [1, " +
                        std::to_string(p_) + "]");
      }
      if (!std::isfinite(value)) throw DataError(row_label(rows_) + ": non-finite feature value");
      x[index - 1] = value;
    }
    return true;
  }
  return false;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  Index number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    std::string key(trim(view.substr(0, eq)));
    std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    if (!out.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(number) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  double v;
  if (!to_double(text, v) || !std::isfinite(v)) throw ConfigError(what + ": not a finite number: '" + text + "'");
  return v;
}

Index parse_index(const std::string& text, const std::string& what) {
  Index v;
  if (!to_index(text, v)) throw ConfigError(what + ": not an integer: '" + text + "'");
  return v;
}

}  // namespace adl
