#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "moddiv/errors.hpp"

namespace moddiv {

/// Ordered `key=value` lines. Blank lines are skipped; anything else without
/// an '=' is malformed, and a key may appear at most once.
class Record {
public:
  static Record parse(std::string_view text) {
    Record rec;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos || eq == 0)
        throw FormatError("line " + std::to_string(lineno) + ": expected key=value");
      std::string key = line.substr(0, eq);
      if (rec.fields_.count(key)) throw FormatError("duplicate field '" + key + "'");
      rec.order_.push_back(key);
      rec.fields_.emplace(std::move(key), line.substr(eq + 1));
    }
    return rec;
  }

  bool has(const std::string& key) const { return fields_.count(key) != 0; }

  const std::string& get(const std::string& key) const {
    auto it = fields_.find(key);
    if (it == fields_.end()) throw FormatError("missing field '" + key + "'");
    return it->second;
  }

  const std::vector<std::string>& keys() const { return order_; }

  /// Rejects any key not in `allowed`.
  void expect_only(std::initializer_list<std::string_view> allowed) const {
    for (const auto& key : order_) {
      bool known = false;
      for (auto a : allowed) known = known || key == a;
      if (!known) throw FormatError("unexpected field '" + key + "'");
    }
  }

private:
  std::map<std::string, std::string> fields_;
  std::vector<std::string> order_;
};

inline std::uint64_t parse_decimal(const std::string& field, const std::string& text) {
  if (text.empty() || text.size() > 18 || text.find_first_not_of("0123456789") != std::string::npos)
    throw FormatError("field '" + field + "' is not a decimal count: '" + text + "'");
  return std::stoull(text);
}

inline std::string base64_encode(std::span<const std::uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  if (data.empty()) return out;
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(),
                          static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

inline std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw FormatError("base64 length is not a multiple of 4");
  if (text.find_first_not_of("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/=") !=
      std::string_view::npos)
    throw FormatError("invalid base64 character");
  std::vector<std::uint8_t> out(3 * text.size() / 4);
  if (text.empty()) return out;
  int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                          static_cast<int>(text.size()));
  if (n < 0) throw FormatError("invalid base64");
  // EVP_DecodeBlock counts padding as zero bytes.
  std::size_t pad = 0;
  for (auto it = text.rbegin(); it != text.rend() && *it == '=' && pad < 2; ++it) ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

}  // namespace moddiv
