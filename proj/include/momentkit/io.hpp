#ifndef MOMENTKIT_IO_HPP
#define MOMENTKIT_IO_HPP

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentkit/moments.hpp"

namespace momentkit {

using json = nlohmann::ordered_json;

// Moment files carry numbers as strings (integer, p/q rational, or decimal)
// so exactness survives serialization. A decimal anywhere switches the
// whole sequence to float mode.
struct MomentFile {
  Kind kind = Kind::unknown;
  std::vector<std::string> moments;
  std::string label;
  bool exact = true;  // no decimal strings present
};

namespace detail {

inline bool is_decimal_string(const std::string& s) {
  return s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
         s.find('E') != std::string::npos;
}

inline void validate_number_string(const std::string& s, size_t idx) {
  if (s.empty())
    raise(errc::schema_error, "moments[" + std::to_string(idx) + "] is empty");
  size_t i = 0;
  auto fail = [&]() {
    raise(errc::schema_error, "moments[" + std::to_string(idx) +
                                  "] = '" + s + "' is not a number");
  };
  auto digits = [&](bool required) {
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (required && i == start) fail();
  };
  if (s[i] == '+' || s[i] == '-') ++i;
  digits(true);
  if (i < s.size() && s[i] == '/') {
    ++i;
    digits(true);
    if (i != s.size()) fail();
    return;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    digits(false);
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    digits(true);
  }
  if (i != s.size()) fail();
}

}  // namespace detail

inline MomentFile parse_moment_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(errc::schema_error, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) raise(errc::schema_error, "top level must be an object");
  MomentFile mf;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string())
      raise(errc::schema_error, "field 'kind' must be a string");
    std::string k = doc["kind"].get<std::string>();
    if (k == "hamburger") mf.kind = Kind::hamburger;
    else if (k == "stieltjes") mf.kind = Kind::stieltjes;
    else if (k == "unknown") mf.kind = Kind::unknown;
    else raise(errc::schema_error, "field 'kind' must be hamburger|stieltjes|unknown");
  }
  if (!doc.contains("moments") || !doc["moments"].is_array())
    raise(errc::schema_error, "field 'moments' (array of strings) is required");
  size_t idx = 0;
  for (const auto& item : doc["moments"]) {
    if (!item.is_string())
      raise(errc::schema_error,
            "moments[" + std::to_string(idx) + "] must be a string");
    std::string s = item.get<std::string>();
    detail::validate_number_string(s, idx);
    if (detail::is_decimal_string(s)) mf.exact = false;
    mf.moments.push_back(std::move(s));
    ++idx;
  }
  if (mf.moments.empty()) raise(errc::empty_input, "'moments' array is empty");
  if (doc.contains("label")) {
    if (!doc["label"].is_string())
      raise(errc::schema_error, "field 'label' must be a string");
    mf.label = doc["label"].get<std::string>();
  }
  return mf;
}

inline MomentFile load_moment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::schema_error, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_moment_file(ss.str());
}

inline MomentSequence<Rational> to_exact(const MomentFile& mf) {
  if (!mf.exact)
    raise(errc::schema_error, "decimal moments cannot be parsed exactly");
  std::vector<Rational> raw;
  raw.reserve(mf.moments.size());
  for (const auto& s : mf.moments) raw.push_back(Rational::from_string(s));
  return normalize(raw, mf.kind, mf.label);
}

inline MomentSequence<BigFloat> to_float(const MomentFile& mf) {
  std::vector<BigFloat> raw;
  raw.reserve(mf.moments.size());
  for (const auto& s : mf.moments) {
    if (detail::is_decimal_string(s)) raw.push_back(BigFloat::from_string(s));
    else raw.push_back(BigFloat(Rational::from_string(s)));
  }
  return normalize(raw, mf.kind, mf.label);
}

// Renders a scalar for reports: exact values as p/q strings, floats in
// scientific form with an explicit digit count derived from the precision.
inline std::string render_scalar(const Rational& x, int /*digits*/ = 0) {
  return x.to_string();
}
inline std::string render_scalar(const BigFloat& x, int digits = 0) {
  return x.to_string(digits);
}

template <class T>
json moment_sequence_to_json(const MomentSequence<T>& seq) {
  json doc;
  doc["kind"] = kind_name(seq.kind);
  json arr = json::array();
  for (const auto& g : seq.gamma) arr.push_back(render_scalar(g));
  doc["moments"] = arr;
  if (!seq.label.empty()) doc["label"] = seq.label;
  return doc;
}

// FNV-1a digest of the canonical input, for the report's input block.
inline std::string fnv1a_digest(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

template <class T>
std::string sequence_digest(const MomentSequence<T>& seq) {
  std::string data = kind_name(seq.kind);
  for (const auto& g : seq.gamma) {
    data += '|';
    data += render_scalar(g);
  }
  return fnv1a_digest(data);
}

}  // namespace momentkit

#endif  // MOMENTKIT_IO_HPP
