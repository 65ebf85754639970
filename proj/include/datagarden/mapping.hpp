#pragma once

// The visual mapping language and legend derivation.
//
//   map archetype by role { student -> flower ; faculty -> tree }
//   map color by mbti palette distinct
//   map satellites cloud by plastic_usage bins [2, 4, 6]
//   map scale by outlook range [0.8, 1.4]

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "datagarden/channels.hpp"
#include "datagarden/detail/format.hpp"
#include "datagarden/detail/lexer.hpp"
#include "datagarden/error.hpp"
#include "datagarden/survey.hpp"

namespace datagarden {

enum class Channel { kArchetype, kColor, kSatellites, kScale };

inline const char* channel_name(Channel c) {
  switch (c) {
    case Channel::kArchetype:
      return "archetype";
    case Channel::kColor:
      return "color";
    case Channel::kSatellites:
      return "satellites";
    case Channel::kScale:
      return "scale";
  }
  return "?";
}

inline std::optional<Channel> channel_from_name(std::string_view s) {
  if (s == "archetype") return Channel::kArchetype;
  if (s == "color") return Channel::kColor;
  if (s == "satellites") return Channel::kSatellites;
  if (s == "scale") return Channel::kScale;
  return std::nullopt;
}

/// `input` is empty for the default arm.
struct ArchetypeArm {
  std::optional<std::string> input;
  std::string model;

  bool operator==(const ArchetypeArm&) const = default;
};

struct ChannelBinding {
  Channel channel = Channel::kArchetype;
  std::string satellite;  // satellites only
  std::string question;
  std::vector<ArchetypeArm> arms;  // archetype only
  std::string palette = "distinct";  // color only
  std::vector<double> thresholds;  // satellites only, strictly ascending
  double range_lo = 0.0;  // scale only, range_lo < range_hi
  double range_hi = 0.0;
  std::size_t line = 0;  // source line, not part of equality

  /// "archetype", "color", "scale" or "satellites <name>".
  std::string identity() const {
    return channel == Channel::kSatellites ? "satellites " + satellite
                                           : channel_name(channel);
  }

  const ArchetypeArm* default_arm() const {
    for (const auto& a : arms)
      if (!a.input) return &a;
    return nullptr;
  }

  bool operator==(const ChannelBinding& o) const {
    return channel == o.channel && satellite == o.satellite && question == o.question &&
           arms == o.arms && palette == o.palette && thresholds == o.thresholds &&
           range_lo == o.range_lo && range_hi == o.range_hi;
  }
};

struct MappingSpec {
  std::vector<ChannelBinding> bindings;

  const ChannelBinding& archetype() const {
    for (const auto& b : bindings)
      if (b.channel == Channel::kArchetype) return b;
    throw InvalidArgument("missing archetype binding");
  }

  bool operator==(const MappingSpec&) const = default;
};

namespace detail {

inline ChannelBinding parse_binding(TokenStream& ts) {
  const Token map_tok = ts.peek();
  ts.expect_keyword("map");
  ChannelBinding b;
  b.line = map_tok.line;
  const Token chan = ts.expect_ident("channel");
  auto channel = channel_from_name(chan.text);
  if (!channel) throw ParseError("unknown channel '" + chan.text + "'", chan.line, chan.column);
  b.channel = *channel;
  if (b.channel == Channel::kSatellites) b.satellite = ts.expect_ident("satellite name").text;
  ts.expect_keyword("by");
  b.question = ts.expect_ident("question name").text;

  switch (b.channel) {
    case Channel::kArchetype: {
      ts.expect_punct('{');
      std::set<std::string> inputs;
      do {
        if (ts.peek().kind == TokenKind::kPunct && ts.peek().text == "}") break;
        const Token in = ts.expect_ident("arm value");
        ArchetypeArm arm;
        if (in.text != "default") arm.input = in.text;
        if (!inputs.insert(in.text).second) {
          throw ParseError(arm.input ? "duplicate arm '" + in.text + "'"
                                     : std::string("more than one default arm"),
                           in.line, in.column);
        }
        ts.expect_arrow();
        arm.model = ts.expect_ident("archetype name").text;
        b.arms.push_back(std::move(arm));
      } while (ts.accept_punct(';'));
      if (b.arms.empty()) ts.fail("expected at least one arm");
      ts.expect_punct('}');
      break;
    }
    case Channel::kColor: {
      ts.expect_keyword("palette");
      const Token mode = ts.expect_ident("palette mode");
      if (mode.text != "distinct") {
        throw ParseError("unknown palette '" + mode.text + "'", mode.line, mode.column);
      }
      b.palette = mode.text;
      break;
    }
    case Channel::kSatellites: {
      ts.expect_keyword("bins");
      const Token open = ts.peek();
      ts.expect_punct('[');
      do {
        b.thresholds.push_back(ts.expect_number());
      } while (ts.accept_punct(','));
      ts.expect_punct(']');
      for (std::size_t i = 1; i < b.thresholds.size(); ++i) {
        if (!(b.thresholds[i - 1] < b.thresholds[i])) {
          throw ParseError("thresholds not ascending", open.line, open.column);
        }
      }
      break;
    }
    case Channel::kScale: {
      ts.expect_keyword("range");
      const Token open = ts.peek();
      ts.expect_punct('[');
      b.range_lo = ts.expect_number();
      ts.expect_punct(',');
      b.range_hi = ts.expect_number();
      ts.expect_punct(']');
      if (!(b.range_lo < b.range_hi)) {
        throw ParseError("scale range inverted", open.line, open.column);
      }
      break;
    }
  }
  return b;
}

}  // namespace detail

inline MappingSpec parse_mapping(std::string_view text) {
  detail::TokenStream ts(text);
  MappingSpec spec;
  std::set<std::string> identities;
  bool has_archetype = false;
  while (!ts.at_end()) {
    const detail::Token start = ts.peek();
    ChannelBinding b = detail::parse_binding(ts);
    if (!identities.insert(b.identity()).second) {
      throw ParseError("duplicate channel '" + b.identity() + "'", start.line, start.column);
    }
    has_archetype |= b.channel == Channel::kArchetype;
    spec.bindings.push_back(std::move(b));
  }
  if (!has_archetype) throw ParseError("missing archetype binding", 1, 1);
  return spec;
}

/// Canonical text form; parse_mapping(print_mapping(s)) == s.
inline std::string print_mapping(const MappingSpec& spec) {
  std::string out;
  for (const auto& b : spec.bindings) {
    out += "map " + b.identity() + " by " + b.question;
    switch (b.channel) {
      case Channel::kArchetype: {
        out += " {";
        for (std::size_t i = 0; i < b.arms.size(); ++i) {
          out += i ? " ; " : " ";
          out += b.arms[i].input.value_or("default") + " -> " + b.arms[i].model;
        }
        out += " }";
        break;
      }
      case Channel::kColor:
        out += " palette " + b.palette;
        break;
      case Channel::kSatellites: {
        out += " bins [";
        for (std::size_t i = 0; i < b.thresholds.size(); ++i) {
          if (i) out += ", ";
          out += detail::format_number(b.thresholds[i]);
        }
        out += "]";
        break;
      }
      case Channel::kScale:
        out += " range [" + detail::format_number(b.range_lo) + ", " +
               detail::format_number(b.range_hi) + "]";
        break;
    }
    out += "\n";
  }
  return out;
}

inline bool channel_accepts(Channel c, QuestionKind k) {
  switch (c) {
    case Channel::kArchetype:
    case Channel::kColor:
      return k == QuestionKind::kCategorical || k == QuestionKind::kOrdinal;
    case Channel::kSatellites:
    case Channel::kScale:
      return k == QuestionKind::kNumeric || k == QuestionKind::kOrdinal;
  }
  return false;
}

/// Cross-checks bindings against the schema. Empty result means encode()
/// will not trip over unknown questions, wrong kinds or uncovered
/// categories.
inline std::vector<Diagnostic> validate_mapping(const MappingSpec& spec,
                                                const SurveySchema& schema) {
  std::vector<Diagnostic> out;
  auto report = [&](const ChannelBinding& b, std::string msg) {
    out.push_back({Severity::kError, b.identity(), b.question, std::move(msg), b.line});
  };
  for (const auto& b : spec.bindings) {
    const Question* q = schema.find(b.question);
    if (!q) {
      report(b, "unknown question " + b.question);
      continue;
    }
    if (!channel_accepts(b.channel, q->kind)) {
      report(b, std::string("incompatible kind: ") + b.identity() + " cannot use " +
                    kind_name(q->kind) + " question " + q->name);
      continue;
    }
    if (b.channel != Channel::kArchetype) continue;
    for (const auto& arm : b.arms) {
      if (arm.input && !q->index_of(*arm.input)) {
        report(b, "archetype arm '" + *arm.input + "' is not a declared value of " + q->name);
      }
    }
    if (b.default_arm()) continue;
    for (const auto& v : q->values) {
      bool covered = false;
      for (const auto& arm : b.arms) covered |= arm.input == v;
      if (!covered) report(b, "archetype arms do not cover '" + v + "' and no default arm");
    }
  }
  return out;
}

struct LegendItem {
  std::string input;
  std::string visual;
  std::optional<Hsl> color;  // color entries only
  std::size_t count = 0;  // records falling in this item

  bool operator==(const LegendItem&) const = default;
};

struct LegendEntry {
  Channel channel = Channel::kArchetype;
  std::string satellite;
  std::string question;
  std::vector<LegendItem> items;

  bool operator==(const LegendEntry&) const = default;
};

struct Legend {
  std::vector<LegendEntry> entries;

  bool operator==(const Legend&) const = default;
};

/// One entry per binding, in binding order. Category entries list declared
/// categories, including ones nobody chose.
inline Legend derive_legend(const MappingSpec& spec, const SurveySchema& schema,
                            const std::vector<ResponseRecord>& records) {
  Legend legend;
  for (const auto& b : spec.bindings) {
    const Question* q = schema.find(b.question);
    if (!q) throw InvalidArgument("unknown question " + b.question);
    LegendEntry entry{b.channel, b.satellite, b.question, {}};

    auto count_if = [&](auto&& pred) {
      std::size_t n = 0;
      for (const auto& r : records) n += pred(r.get(q->name)) ? 1 : 0;
      return n;
    };
    auto equals = [](const std::string& want) {
      return [&want](const Value& v) {
        const auto* s = std::get_if<std::string>(&v);
        return s && *s == want;
      };
    };

    switch (b.channel) {
      case Channel::kArchetype:
        for (const auto& arm : b.arms) {
          LegendItem item{arm.input.value_or("default"), arm.model, std::nullopt, 0};
          if (arm.input) {
            item.count = count_if(equals(*arm.input));
          } else {
            item.count = count_if([&](const Value& v) {
              const auto* s = std::get_if<std::string>(&v);
              if (!s) return true;
              for (const auto& a : b.arms)
                if (a.input == *s) return false;
              return true;
            });
          }
          entry.items.push_back(std::move(item));
        }
        break;
      case Channel::kColor:
        for (const auto& v : q->values) {
          const Hsl c = palette_color(v, q->values);
          entry.items.push_back({v, to_css(c), c, count_if(equals(v))});
        }
        break;
      case Channel::kSatellites: {
        const auto& t = b.thresholds;
        auto in_bin = [&](std::size_t k) {
          return [&, k](const Value& v) {
            auto x = numeric_value(*q, v);
            return x && satellite_count(*x, t) == k;
          };
        };
        for (std::size_t k = 0; k <= t.size(); ++k) {
          std::string input;
          if (k == 0) {
            input = "<" + detail::format_number(t.front());
          } else if (k == t.size()) {
            input = ">=" + detail::format_number(t.back());
          } else {
            input = "[" + detail::format_number(t[k - 1]) + ", " +
                    detail::format_number(t[k]) + ")";
          }
          entry.items.push_back({input, std::to_string(k), std::nullopt, count_if(in_bin(k))});
        }
        break;
      }
      case Channel::kScale: {
        std::string input;
        if (q->kind == QuestionKind::kOrdinal) {
          input = "[" + q->values.front() + ", " + q->values.back() + "]";
        } else {
          input = "[" + detail::format_number(q->lo) + ", " + detail::format_number(q->hi) + "]";
        }
        const std::string visual = "[" + detail::format_number(b.range_lo) + ", " +
                                   detail::format_number(b.range_hi) + "]";
        entry.items.push_back({input, visual, std::nullopt,
                               count_if([&](const Value& v) { return !is_missing(v); })});
        break;
      }
    }
    legend.entries.push_back(std::move(entry));
  }
  return legend;
}

}  // namespace datagarden
