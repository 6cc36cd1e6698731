#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mlines/errors.hpp"
#include "mlines/metric_core.hpp"

namespace mlines {

/// n rows of n comma-separated rationals. Blank lines and lines starting
/// with '#' are skipped.
inline FiniteMetricSpace parse_csv_matrix(std::string_view text) {
  RationalMatrix rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<Rational> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto cell = std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      try {
        row.push_back(Rational::parse(cell));
      } catch (const Error& e) {
        std::string_view msg = e.what();
        msg.remove_prefix(std::min(msg.size(), error_kind_name(e.kind()).size() + 2));
        throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + std::string(msg));
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return validate_metric(rows);
}

/// {"n": N, "dist": [[...]], "labels": [...]} where entries are integers or
/// "p/q" strings. "n" and "labels" are optional.
inline FiniteMetricSpace parse_json_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("dist") || !doc["dist"].is_array())
    throw Error(ErrorKind::Parse, "expected an object with a \"dist\" array");
  RationalMatrix rows;
  for (const auto& jrow : doc["dist"]) {
    if (!jrow.is_array()) throw Error(ErrorKind::Parse, "\"dist\" rows must be arrays");
    std::vector<Rational> row;
    for (const auto& cell : jrow) {
      if (cell.is_number_integer()) {
        row.push_back(Rational{cell.get<std::int64_t>(), 1});
      } else if (cell.is_string()) {
        row.push_back(Rational::parse(cell.get<std::string>()));
      } else {
        throw Error(ErrorKind::Parse, "matrix entries must be integers or \"p/q\" strings");
      }
    }
    rows.push_back(std::move(row));
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() != static_cast<std::int64_t>(rows.size()))
      throw Error(ErrorKind::Parse, "\"n\" does not match the number of rows");
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw Error(ErrorKind::Parse, "\"labels\" must be an array");
    for (const auto& l : doc["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return validate_metric(rows, std::move(labels));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Chooses JSON when the path ends in ".json" or the content starts with '{'.
inline FiniteMetricSpace load_matrix_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = (path.size() >= 5 && path.ends_with(".json")) ||
                    (first != std::string::npos && text[first] == '{');
  return json ? parse_json_matrix(text) : parse_csv_matrix(text);
}

inline nlohmann::json matrix_to_json(const FiniteMetricSpace& space) {
  nlohmann::json rows = nlohmann::json::array();
  for (PointId i = 0; i < space.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (PointId j = 0; j < space.size(); ++j) {
      const Rational q = Rational::make(space(i, j), space.scale());
      if (q.den == 1) {
        row.push_back(q.num);
      } else {
        row.push_back(std::to_string(q.num) + "/" + std::to_string(q.den));
      }
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json doc = {{"n", space.size()}, {"dist", std::move(rows)}};
  if (!space.labels().empty()) doc["labels"] = space.labels();
  return doc;
}

inline std::string matrix_to_csv(const FiniteMetricSpace& space) {
  std::string out;
  for (PointId i = 0; i < space.size(); ++i) {
    for (PointId j = 0; j < space.size(); ++j) {
      if (j) out += ',';
      const Rational q = Rational::make(space(i, j), space.scale());
      out += std::to_string(q.num);
      if (q.den != 1) out += "/" + std::to_string(q.den);
    }
    out += '\n';
  }
  return out;
}

}  // namespace mlines
