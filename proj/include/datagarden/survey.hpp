#pragma once

// Questionnaire schema, CSV response ingestion and record validation.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "datagarden/detail/format.hpp"
#include "datagarden/detail/lexer.hpp"
#include "datagarden/error.hpp"

namespace datagarden {

enum class QuestionKind { kCategorical, kOrdinal, kNumeric, kText };

inline const char* kind_name(QuestionKind k) {
  switch (k) {
    case QuestionKind::kCategorical:
      return "categorical";
    case QuestionKind::kOrdinal:
      return "ordinal";
    case QuestionKind::kNumeric:
      return "numeric";
    case QuestionKind::kText:
      return "text";
  }
  return "?";
}

inline std::optional<QuestionKind> kind_from_name(std::string_view s) {
  if (s == "categorical") return QuestionKind::kCategorical;
  if (s == "ordinal") return QuestionKind::kOrdinal;
  if (s == "numeric") return QuestionKind::kNumeric;
  if (s == "text") return QuestionKind::kText;
  return std::nullopt;
}

/// A questionnaire field. `values` holds the categories (declaration order)
/// or the ordinal levels (lowest first); `lo`/`hi` bound numeric answers.
struct Question {
  std::string name;
  QuestionKind kind = QuestionKind::kText;
  std::vector<std::string> values;
  double lo = 0.0;
  double hi = 0.0;

  bool is_discrete() const {
    return kind == QuestionKind::kCategorical || kind == QuestionKind::kOrdinal;
  }

  /// Position of `value` in `values`, if declared.
  std::optional<std::size_t> index_of(std::string_view value) const {
    auto it = std::find(values.begin(), values.end(), value);
    if (it == values.end()) return std::nullopt;
    return static_cast<std::size_t>(it - values.begin());
  }

  bool operator==(const Question&) const = default;
};

struct SurveySchema {
  std::vector<Question> questions;

  const Question* find(std::string_view name) const {
    for (const auto& q : questions)
      if (q.name == name) return &q;
    return nullptr;
  }

  bool operator==(const SurveySchema&) const = default;
};

/// An answer: std::monostate is MISSING, strings carry categorical, ordinal
/// and text answers, doubles carry numeric answers.
using Value = std::variant<std::monostate, std::string, double>;

inline bool is_missing(const Value& v) {
  return std::holds_alternative<std::monostate>(v);
}

struct ResponseRecord {
  std::string id;
  std::map<std::string, Value> values;
  /// Source line of the row, 0 when built in code. Not part of equality.
  std::size_t line = 0;

  /// The answer to `question`, MISSING when absent.
  const Value& get(const std::string& question) const {
    static const Value kMissing;
    auto it = values.find(question);
    return it == values.end() ? kMissing : it->second;
  }

  bool operator==(const ResponseRecord& o) const {
    return id == o.id && values == o.values;
  }
};

/// Answer as shown to people (tooltips, grouping keys).
inline std::string display_value(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* d = std::get_if<double>(&v)) return detail::format_display(*d);
  return {};
}

/// Numeric reading of an answer for bin and range channels: numeric answers
/// as-is, ordinal answers by 0-based level rank.
inline std::optional<double> numeric_value(const Question& q, const Value& v) {
  if (q.kind == QuestionKind::kNumeric) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
  } else if (q.kind == QuestionKind::kOrdinal) {
    if (const auto* s = std::get_if<std::string>(&v)) {
      if (auto idx = q.index_of(*s)) return static_cast<double>(*idx);
    }
  }
  return std::nullopt;
}

/// Input domain of a bin/range channel bound to `q`.
inline std::pair<double, double> numeric_domain(const Question& q) {
  if (q.kind == QuestionKind::kOrdinal) {
    return {0.0, q.values.empty() ? 0.0 : static_cast<double>(q.values.size() - 1)};
  }
  return {q.lo, q.hi};
}

/// Parses a schema document:
///
///   question role : categorical { student, faculty }
///   question outlook : ordinal { gloomy < neutral < bright }
///   question age : numeric [18, 99]
///   question note : text
inline SurveySchema parse_schema(std::string_view text) {
  detail::TokenStream ts(text);
  SurveySchema schema;
  std::set<std::string> seen;
  while (!ts.at_end()) {
    ts.expect_keyword("question");
    const detail::Token name = ts.expect_ident("question name");
    if (!seen.insert(name.text).second) {
      throw ParseError("duplicate question name '" + name.text + "'", name.line,
                       name.column);
    }
    ts.expect_punct(':');
    const detail::Token kind_tok = ts.expect_ident("question kind");
    auto kind = kind_from_name(kind_tok.text);
    if (!kind) {
      throw ParseError("unknown question kind '" + kind_tok.text + "'",
                       kind_tok.line, kind_tok.column);
    }
    Question q;
    q.name = name.text;
    q.kind = *kind;
    if (q.is_discrete()) {
      const char sep = q.kind == QuestionKind::kCategorical ? ',' : '<';
      ts.expect_punct('{');
      if (ts.peek().kind == detail::TokenKind::kPunct && ts.peek().text == "}") {
        throw ParseError("empty value list for '" + q.name + "'", ts.peek().line,
                         ts.peek().column);
      }
      do {
        const detail::Token v = ts.expect_ident("value");
        if (q.index_of(v.text)) {
          throw ParseError("duplicate value '" + v.text + "' in '" + q.name + "'",
                           v.line, v.column);
        }
        q.values.push_back(v.text);
      } while (ts.accept_punct(sep));
      ts.expect_punct('}');
    } else if (q.kind == QuestionKind::kNumeric) {
      const detail::Token open = ts.peek();
      ts.expect_punct('[');
      q.lo = ts.expect_number();
      ts.expect_punct(',');
      q.hi = ts.expect_number();
      ts.expect_punct(']');
      if (!(q.lo < q.hi)) {
        throw ParseError("numeric range inverted for '" + q.name + "'", open.line,
                         open.column);
      }
    }
    schema.questions.push_back(std::move(q));
  }
  if (schema.questions.empty()) throw ParseError("no questions declared", 1, 1);
  return schema;
}

namespace detail {

struct CsvRow {
  std::vector<std::string> cells;
  std::size_t line = 1;
};

/// Comma-separated records with double-quote escaping. Blank lines are
/// skipped; CRLF and LF both end a record.
inline std::vector<CsvRow> read_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<CsvRow> rows;
  std::size_t i = 0, line = 1;
  while (i < text.size()) {
    if (text[i] == '\n' || (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
      i += text[i] == '\r' ? 2 : 1;
      ++line;
      continue;
    }
    CsvRow row;
    row.line = line;
    std::string cell;
    bool done = false;
    while (!done) {
      if (i < text.size() && text[i] == '"') {
        const std::size_t open_line = line;
        ++i;
        for (;;) {
          if (i >= text.size()) throw ParseError("unterminated quoted field", open_line, 0);
          if (text[i] == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              cell += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (text[i] == '\n') ++line;
          cell += text[i++];
        }
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw ParseError("unexpected character after closing quote", line, 0);
        }
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
          cell += text[i++];
      }
      row.cells.push_back(std::move(cell));
      cell.clear();
      if (i >= text.size()) {
        done = true;
      } else if (text[i] == ',') {
        ++i;
      } else {
        if (text[i] == '\r') ++i;
        if (i < text.size() && text[i] == '\n') ++i;
        ++line;
        done = true;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Reads a CSV export whose header names schema questions (plus an optional
/// "id" column). Empty cells become MISSING. Records without an id column
/// are named "r0", "r1", ... by data row.
inline std::vector<ResponseRecord> parse_responses(std::string_view text,
                                                   const SurveySchema& schema) {
  const auto rows = detail::read_csv(text);
  if (rows.empty()) throw ParseError("missing header row", 1, 1);

  const auto& header = rows.front().cells;
  std::vector<const Question*> columns;
  std::optional<std::size_t> id_col;
  std::set<std::string> seen;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name(detail::trim(header[c]));
    if (!seen.insert(name).second) {
      throw ParseError("duplicate column \"" + name + "\"", rows.front().line, 0);
    }
    if (name == "id") {
      id_col = c;
      columns.push_back(nullptr);
      continue;
    }
    const Question* q = schema.find(name);
    if (!q) throw ParseError("unknown column \"" + name + "\"", rows.front().line, 0);
    columns.push_back(q);
  }

  std::vector<ResponseRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t index = r - 1;
    auto fail = [&](const std::string& column, const std::string& why) -> ParseError {
      return ParseError("row " + std::to_string(index) + ", column \"" + column +
                            "\": " + why,
                        row.line, 0);
    };
    if (row.cells.size() != header.size()) {
      throw ParseError("row " + std::to_string(index) + ": expected " +
                           std::to_string(header.size()) + " cells, found " +
                           std::to_string(row.cells.size()),
                       row.line, 0);
    }
    ResponseRecord rec;
    rec.line = row.line;
    rec.id = id_col ? std::string(detail::trim(row.cells[*id_col]))
                    : "r" + std::to_string(index);
    if (rec.id.empty()) rec.id = "r" + std::to_string(index);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Question* q = columns[c];
      if (!q) continue;
      const std::string& raw = row.cells[c];
      if (q->kind == QuestionKind::kText) {
        rec.values[q->name] = raw.empty() ? Value{} : Value{raw};
        continue;
      }
      const std::string_view cell = detail::trim(raw);
      if (cell.empty()) {
        rec.values[q->name] = Value{};
        continue;
      }
      if (q->kind == QuestionKind::kNumeric) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
          throw fail(q->name, "unparseable number '" + std::string(cell) + "'");
        }
        if (v < q->lo || v > q->hi) {
          throw fail(q->name, "value " + std::string(cell) + " out of range [" +
                                  detail::format_number(q->lo) + ", " +
                                  detail::format_number(q->hi) + "]");
        }
        rec.values[q->name] = v;
      } else {
        if (!q->index_of(cell)) {
          throw fail(q->name, "unknown value '" + std::string(cell) + "'");
        }
        rec.values[q->name] = std::string(cell);
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

/// Checks records against the schema. Returns one diagnostic per violation;
/// an empty result means every record is well-formed.
inline std::vector<Diagnostic> validate_records(const std::vector<ResponseRecord>& records,
                                                const SurveySchema& schema) {
  std::vector<Diagnostic> out;
  std::set<std::string> ids;
  auto report = [&](const ResponseRecord& r, const std::string& q, std::string msg) {
    out.push_back({Severity::kError, r.id, q, std::move(msg), r.line});
  };
  for (const auto& rec : records) {
    if (rec.id.empty()) report(rec, "", "empty id");
    if (!ids.insert(rec.id).second) report(rec, "", "duplicate id " + rec.id);
    for (const auto& [name, value] : rec.values) {
      const Question* q = schema.find(name);
      if (!q) {
        report(rec, name, "unknown question " + name);
        continue;
      }
      if (is_missing(value)) continue;
      switch (q->kind) {
        case QuestionKind::kNumeric: {
          const auto* d = std::get_if<double>(&value);
          if (!d) {
            report(rec, name, "expected a number");
          } else if (!std::isfinite(*d) || *d < q->lo || *d > q->hi) {
            report(rec, name, "value " + detail::format_number(*d) + " out of range [" +
                                  detail::format_number(q->lo) + ", " +
                                  detail::format_number(q->hi) + "]");
          }
          break;
        }
        case QuestionKind::kCategorical:
        case QuestionKind::kOrdinal: {
          const auto* s = std::get_if<std::string>(&value);
          if (!s) {
            report(rec, name, "expected a declared value");
          } else if (!q->index_of(*s)) {
            report(rec, name, "unknown value '" + *s + "'");
          }
          break;
        }
        case QuestionKind::kText:
          if (!std::holds_alternative<std::string>(value)) report(rec, name, "expected text");
          break;
      }
    }
  }
  return out;
}

}  // namespace datagarden
