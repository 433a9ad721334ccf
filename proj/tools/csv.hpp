#pragma once

// CSV with a fixed header and 17 significant digits, so doubles round-trip.

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "biaxial/errors.hpp"

namespace biaxial::cli {

class CsvWriter {
 public:
  using Cell = std::variant<double, std::string>;

  CsvWriter(const std::string& path, std::vector<std::string> header)
      : out_(path), columns_(header.size()) {
    if (!out_) throw DomainError("cannot write " + path);
    write_line(header);
  }

  void row(std::initializer_list<Cell> cells) {
    if (cells.size() != columns_) throw DomainError("csv: row width does not match the header");
    std::vector<std::string> text;
    for (const Cell& c : cells) text.push_back(format(c));
    write_line(text);
  }

  static std::string format(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    char buf[32];
    // + 0.0 turns -0 into 0
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(c) + 0.0);
    return buf;
  }

 private:
  void write_line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace biaxial::cli
