#pragma once

// Problem files: JSON objects {"field", "dim", "q_upper", "tau"?,
// "reflection_words"?}. Field elements are strings in the field literal
// grammar (integers are accepted as well).

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wallform/wallform.hpp"

namespace wallform::cli {

using json = nlohmann::json;

struct ProblemFile {
  Field field;
  std::size_t dim = 0;
  Matrix q_upper;
  std::optional<Matrix> tau;
  std::vector<std::vector<Vec>> reflection_words;

  QuadraticSpace space() const { return QuadraticSpace::from_upper(q_upper); }

  Isometry isometry() const {
    if (!tau) fail(ErrorKind::ParseError, "problem file has no \"tau\" matrix");
    return make_isometry(space(), *tau);
  }
};

namespace detail {

inline Element parse_scalar(const Field& f, const json& j) {
  if (j.is_string()) return f.parse_element(j.get<std::string>());
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  fail(ErrorKind::ParseError, "field element must be a string or an integer");
}

inline Vec parse_vector(const Field& f, std::size_t n, const json& j) {
  if (!j.is_array() || j.size() != n) fail(ErrorKind::ParseError, "vector must be an array of length " + std::to_string(n));
  Vec v;
  for (const auto& x : j) v.push_back(parse_scalar(f, x));
  return v;
}

inline Matrix parse_matrix(const Field& f, std::size_t n, const json& j, const char* what) {
  if (!j.is_array() || j.size() != n) fail(ErrorKind::ParseError, std::string(what) + " must have " + std::to_string(n) + " rows");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(parse_vector(f, n, r));
  return Matrix::from_rows(f, n, rows);
}

}  // namespace detail

inline ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "problem file must be a JSON object");
  for (const char* key : {"field", "dim", "q_upper"})
    if (!j.contains(key)) fail(ErrorKind::ParseError, std::string("missing key \"") + key + "\"");
  if (!j["field"].is_string()) fail(ErrorKind::ParseError, "\"field\" must be a string");
  if (!j["dim"].is_number_unsigned()) fail(ErrorKind::ParseError, "\"dim\" must be a nonnegative integer");

  ProblemFile p;
  p.field = Field::parse(j["field"].get<std::string>());
  p.dim = j["dim"].get<std::size_t>();
  if (p.dim == 0) fail(ErrorKind::ParseError, "\"dim\" must be positive");
  p.q_upper = QuadraticForm::from_matrix(detail::parse_matrix(p.field, p.dim, j["q_upper"], "q_upper")).upper();
  if (j.contains("tau") && !j["tau"].is_null()) p.tau = detail::parse_matrix(p.field, p.dim, j["tau"], "tau");
  if (j.contains("reflection_words")) {
    if (!j["reflection_words"].is_array()) fail(ErrorKind::ParseError, "\"reflection_words\" must be an array");
    for (const auto& w : j["reflection_words"]) {
      // Report entries {"factors": [...], ...} are accepted so reports re-ingest.
      const json& factors = w.is_object() && w.contains("factors") ? w["factors"] : w;
      if (!factors.is_array()) fail(ErrorKind::ParseError, "reflection word must be an array of vectors");
      std::vector<Vec> word;
      for (const auto& v : factors) word.push_back(detail::parse_vector(p.field, p.dim, v));
      p.reflection_words.push_back(std::move(word));
    }
  }
  return p;
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

/// Reads a problem file; "-" means standard input.
inline ProblemFile load_problem(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_problem(parse_json_text(text));
}

inline json to_json(const Element& e) { return e.to_string(); }

inline json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

inline json to_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline json to_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

/// The input fields of a problem, in a form parse_problem accepts.
inline json echo(const ProblemFile& p) {
  json j;
  j["field"] = p.field.literal();
  j["dim"] = p.dim;
  j["q_upper"] = to_json(p.q_upper);
  if (p.tau) j["tau"] = to_json(*p.tau);
  if (!p.reflection_words.empty()) {
    json words = json::array();
    for (const auto& w : p.reflection_words) words.push_back(to_json(w));
    j["reflection_words"] = words;
  }
  return j;
}

}  // namespace wallform::cli
