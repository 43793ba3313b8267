#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lw/errors.hpp"
#include "lw/instances.hpp"
#include "lw/puiseux.hpp"
#include "lw/rational.hpp"

namespace lw {

using Json = nlohmann::ordered_json;

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot open for writing: " + path);
  out << content;
  out.flush();
  require(static_cast<bool>(out), "write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Config fingerprints. FNV-1a over the canonical config dump gives a short
// stable id that lets a report row be matched to the exact run that made it.
// ---------------------------------------------------------------------------

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string fnv1a64_hex(std::string_view s) {
  static const char* digits = "0123456789abcdef";
  uint64_t h = fnv1a64(s);
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<size_t>(k)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numeric fields as text. %.17g round-trips every finite binary64, so the
// emit/parse pair below is lossless; fmt_g is the short human-facing form.
// ---------------------------------------------------------------------------

inline std::string double_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt_g(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline double parse_double(const std::string& s) {
  require(!s.empty(), "empty floating-point literal");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  require(end == s.c_str() + s.size(), "bad floating-point literal: " + s);
  return v;
}

inline long parse_long(const std::string& s) {
  require(!s.empty(), "empty integer literal");
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  require(end == s.c_str() + s.size(), "bad integer literal: " + s);
  return v;
}

inline bool parse_bool01(const std::string& s) {
  require(s == "0" || s == "1", "bad boolean literal (want 0 or 1): " + s);
  return s == "1";
}

inline std::string join_doubles(const std::vector<double>& vs, char sep = ';') {
  std::string out;
  for (size_t k = 0; k < vs.size(); ++k) {
    if (k) out += sep;
    out += double_str(vs[k]);
  }
  return out;
}

inline std::vector<double> split_doubles(const std::string& s, char sep = ';') {
  std::vector<double> out;
  if (s.empty()) return out;
  size_t pos = 0;
  for (;;) {
    const size_t next = s.find(sep, pos);
    out.push_back(parse_double(
        s.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV. Fields containing a comma, quote, or line break are quoted with ""
// escapes; the parser also tolerates CRLF input and skips blank lines.
// ---------------------------------------------------------------------------

using CsvRow = std::vector<std::string>;

inline std::string csv_field(const std::string& s) {
  if (!s.empty() && s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::string emit_csv(const std::vector<CsvRow>& rows) {
  std::string out;
  for (const CsvRow& row : rows) {
    for (size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += csv_field(row[k]);
    }
    out += '\n';
  }
  return out;
}

inline std::vector<CsvRow> parse_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool row_live = false;  // the current line has at least one field
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_live = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_live = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_live || !field.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        row_live = false;
        break;
      default:
        field += c;
        row_live = true;
        break;
    }
  }
  require(!in_quotes, "parse_csv: unterminated quoted field");
  if (row_live || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Exact-series JSON. A zero series is the literal 0, a single term is
// {"coef": "p/q", "exp": "p/q"}, and a sum is {"terms": [...]}; rationals
// travel as canonical strings so nothing is rounded.
// ---------------------------------------------------------------------------

inline Json monomial_to_json(const Rat& coef, const Rat& exp) {
  return Json{{"coef", rat_str(coef)}, {"exp", rat_str(exp)}};
}

inline Json series_to_json(const PuiseuxSeries& s) {
  if (s.is_zero()) return Json(0);
  const auto& terms = s.terms();
  if (terms.size() == 1) return monomial_to_json(terms[0].coef, terms[0].exp);
  Json arr = Json::array();
  for (const PuiseuxTerm& term : terms) arr.push_back(monomial_to_json(term.coef, term.exp));
  return Json{{"terms", std::move(arr)}};
}

inline PuiseuxSeries monomial_from_json(const Json& j) {
  require(j.is_object() && j.contains("coef") && j.contains("exp"),
          "monomial_from_json: expected {\"coef\", \"exp\"}");
  return PuiseuxSeries::monomial(parse_rat(j.at("coef").get<std::string>()),
                                 parse_rat(j.at("exp").get<std::string>()));
}

inline PuiseuxSeries series_from_json(const Json& j) {
  if (j.is_number_integer()) {
    require(j.get<long>() == 0, "series_from_json: the only bare number is 0");
    return PuiseuxSeries::zero();
  }
  require(j.is_object(), "series_from_json: expected 0 or an object");
  if (j.contains("terms")) {
    PuiseuxSeries out = PuiseuxSeries::zero();
    for (const Json& term : j.at("terms")) out = out + monomial_from_json(term);
    return out;
  }
  return monomial_from_json(j);
}

// ---------------------------------------------------------------------------
// Instance JSON: the full slack-form data of LW(r) with exact entries.
// ---------------------------------------------------------------------------

inline Json instance_to_json(const SlackLP& lp) {
  Json a = Json::array();
  for (size_t i = 0; i < lp.m; ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < lp.n; ++j) row.push_back(series_to_json(lp.A(i, j)));
    a.push_back(std::move(row));
  }
  Json b = Json::array();
  for (const PuiseuxSeries& e : lp.b) b.push_back(series_to_json(e));
  Json c = Json::array();
  for (const PuiseuxSeries& e : lp.c) c.push_back(series_to_json(e));
  return Json{{"r", lp.r},
              {"n", lp.n},
              {"m", lp.m},
              {"A", std::move(a)},
              {"b", std::move(b)},
              {"c", std::move(c)}};
}

inline SlackLP instance_from_json(const Json& j) {
  require(j.is_object() && j.contains("r") && j.contains("A") && j.contains("b") &&
              j.contains("c"),
          "instance_from_json: expected {r, n, m, A, b, c}");
  SlackLP lp;
  lp.r = j.at("r").get<int>();
  lp.m = j.at("A").size();
  require(lp.m > 0, "instance_from_json: empty constraint matrix");
  lp.n = j.at("A").at(0).size();
  lp.N = lp.n + lp.m;
  if (j.contains("n")) require(j.at("n").get<size_t>() == lp.n, "instance_from_json: n mismatch");
  if (j.contains("m")) require(j.at("m").get<size_t>() == lp.m, "instance_from_json: m mismatch");
  lp.A = SeriesMatrix(lp.m, lp.n);
  for (size_t i = 0; i < lp.m; ++i) {
    const Json& row = j.at("A").at(i);
    require(row.size() == lp.n, "instance_from_json: ragged matrix");
    for (size_t jj = 0; jj < lp.n; ++jj) lp.A(i, jj) = series_from_json(row.at(jj));
  }
  require(j.at("b").size() == lp.m && j.at("c").size() == lp.n,
          "instance_from_json: b/c dimension mismatch");
  lp.b.reserve(lp.m);
  for (const Json& e : j.at("b")) lp.b.push_back(series_from_json(e));
  lp.c.reserve(lp.n);
  for (const Json& e : j.at("c")) lp.c.push_back(series_from_json(e));
  return lp;
}

}  // namespace lw
