#pragma once

#include <cctype>
#include <cmath>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qconfine/numerics/error.hpp"

namespace qconfine::app {

/// Run descriptions for --config: a JSON object, or the INI/TOML subset
/// CLI11 reads natively (key = value, [section] for a subcommand, arrays in
/// brackets). Nested JSON objects play the role of sections.
class RunConfigReader : public CLI::ConfigBase {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    const std::string text{std::istreambuf_iterator<char>(input), std::istreambuf_iterator<char>()};
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
      }
      std::vector<CLI::ConfigItem> items;
      flatten(j, {}, items);
      return items;
    }
    std::istringstream in(text);
    return CLI::ConfigBase::from_config(in);
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const nlohmann::json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        auto sub = parents;
        sub.push_back(it.key());
        // CLI11 needs the section markers to enter and leave a subcommand.
        items.push_back({sub, "++", {}});
        flatten(*it, sub, items);
        items.push_back({sub, "--", {}});
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array())
        for (const auto& v : *it) item.inputs.push_back(scalar(v));
      else
        item.inputs.push_back(scalar(*it));
      items.push_back(std::move(item));
    }
  }
};

inline double parse_real(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "inf" || t == "infinity" || t == "free") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == t.size() && !t.empty(), ErrorCode::invalid_argument, "not a number: '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

/// Comma-separated reals; "inf" marks the free atom.
inline std::vector<double> parse_reals(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& it : items)
    for (const auto& part : split(it, ','))
      if (!part.empty()) out.push_back(parse_real(part));
  return out;
}

/// "lo:hi:step", inclusive of hi within a tenth of a step.
inline std::vector<double> parse_sweep(const std::string& s) {
  const auto parts = split(s, ':');
  require(parts.size() == 3, ErrorCode::invalid_argument, "sweep must be lo:hi:step, got '" + s + "'");
  const double lo = parse_real(parts[0]), hi = parse_real(parts[1]), step = parse_real(parts[2]);
  require(step > 0.0 && hi >= lo && std::isfinite(hi), ErrorCode::invalid_argument, "bad sweep '" + s + "'");
  const long count = std::lround(std::floor((hi - lo) / step + 0.1));
  require(count < 1000000, ErrorCode::invalid_argument, "sweep too long");
  std::vector<double> out;
  for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

/// "0..3" or "0,2,5".
inline std::vector<int> parse_indices(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) {
    if (part.empty()) continue;
    const auto dots = part.find("..");
    if (dots != std::string::npos) {
      const int a = static_cast<int>(parse_real(part.substr(0, dots)));
      const int b = static_cast<int>(parse_real(part.substr(dots + 2)));
      require(a >= 0 && b >= a, ErrorCode::invalid_argument, "bad index range '" + part + "'");
      for (int i = a; i <= b; ++i) out.push_back(i);
    } else {
      const double v = parse_real(part);
      require(v >= 0 && v == std::floor(v), ErrorCode::invalid_argument, "bad index '" + part + "'");
      out.push_back(static_cast<int>(v));
    }
  }
  return out;
}

struct StateLabel {
  int n = 1, l = 0;
};

inline constexpr const char* orbital_letters = "spdfghiklmnoqrtuvwxyz";

inline std::string state_name(int n, int l) {
  const std::string letters = orbital_letters;
  if (l >= 0 && l < static_cast<int>(letters.size())) return std::to_string(n) + letters[static_cast<std::size_t>(l)];
  return std::to_string(n) + "(l=" + std::to_string(l) + ")";
}

/// "2p" style labels; n <= l is rejected.
inline StateLabel parse_state(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  require(i > 0 && i + 1 == s.size(), ErrorCode::invalid_argument, "state must look like 2p, got '" + s + "'");
  const std::string letters = orbital_letters;
  const auto pos = letters.find(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
  require(pos != std::string::npos, ErrorCode::invalid_argument, "unknown orbital letter in '" + s + "'");
  StateLabel st{std::stoi(s.substr(0, i)), static_cast<int>(pos)};
  require(st.n > st.l, ErrorCode::invalid_argument, "state " + s + " needs n > l");
  return st;
}

}  // namespace qconfine::app
