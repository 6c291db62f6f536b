#include "pairgraph/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "pairgraph/errors.hpp"

namespace pairgraph {

namespace {

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string where(std::size_t line_no, std::size_t field) {
  return "line " + std::to_string(line_no) + ", field " + std::to_string(field);
}

}  // namespace

bool is_blank(std::string_view line) noexcept { return trim(line).empty(); }

std::vector<double> parse_csv_numbers(std::string_view line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<double> out;
  const auto fields = split_fields(line);
  out.reserve(fields.size());
  for (std::size_t f = 0; f < fields.size(); ++f) {
    auto text = fields[f];
    if (text.empty()) throw ValidationError("empty value at " + where(line_no, f + 1));
    if (text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ValidationError("malformed number '" + std::string(fields[f]) + "' at " +
                            where(line_no, f + 1));
    }
    out.push_back(v);
  }
  return out;
}

PairedSample read_paired_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    header_line = line;
    if (!header_line.empty() && header_line.back() == '\r') header_line.pop_back();
    header = split_fields(header_line);
    break;
  }
  if (header.empty()) throw ValidationError("input CSV is empty");
  if (header.size() % 2 != 0) {
    throw ValidationError("header must list x1..xd then y1..yd; found " +
                          std::to_string(header.size()) + " columns");
  }
  const std::size_t d = header.size() / 2;
  for (std::size_t j = 0; j < d; ++j) {
    const auto want_x = "x" + std::to_string(j + 1);
    const auto want_y = "y" + std::to_string(j + 1);
    if (header[j] != want_x || header[d + j] != want_y) {
      throw ValidationError("header column " + std::to_string(j + 1) + " / " +
                            std::to_string(d + j + 1) + " must be " + want_x + " / " + want_y);
    }
  }

  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto row = parse_csv_numbers(line, line_no);
    if (row.size() != 2 * d) {
      throw ValidationError("line " + std::to_string(line_no) + " has " +
                            std::to_string(row.size()) + " fields, expected " +
                            std::to_string(2 * d));
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  Matrix x(rows, d);
  Matrix y(rows, d);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      x(i, j) = values[i * 2 * d + j];
      y(i, j) = values[i * 2 * d + d + j];
    }
  }
  return PairedSample(std::move(x), std::move(y));
}

void write_paired_csv(std::ostream& out, const PairedSample& sample) {
  const std::size_t d = sample.dim();
  for (std::size_t j = 0; j < d; ++j) out << (j ? "," : "") << 'x' << j + 1;
  for (std::size_t j = 0; j < d; ++j) out << ",y" << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < sample.pairs(); ++i) {
    for (std::size_t j = 0; j < d; ++j) out << (j ? "," : "") << format_double(sample.x()(i, j));
    for (std::size_t j = 0; j < d; ++j) out << ',' << format_double(sample.y()(i, j));
    out << '\n';
  }
}

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace pairgraph
