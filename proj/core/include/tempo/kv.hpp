/*
 * kv.hpp
 *
 * The line-based `key = value` text format used by problem configs and
 * artifact metadata. `#` starts a comment; values are bare tokens or
 * bracketed number lists like [1, 2.5, -3e-2]; keys may repeat where the
 * schema says so. Numbers are written in shortest round-trip form so
 * resolved files are byte-stable.
 */

#ifndef TEMPO_KV_HPP_
#define TEMPO_KV_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tempo {

/* shortest representation that parses back to the same double; inf/-inf
 * spell infinity */
std::string format_double(double v);
double parse_double(const std::string& token, const std::string& field);
std::vector<double> parse_double_list(const std::string& value, const std::string& field);
std::string format_double_list(const std::vector<double>& values);

class KvFile {
 public:
  static KvFile parse(const std::string& text, const std::string& origin);
  static KvFile load(const std::string& path);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  bool has(const std::string& key) const;
  /* the single value of a key; throws when missing or repeated */
  std::string require_one(const std::string& key) const;
  std::optional<std::string> get_one(const std::string& key) const;
  std::vector<std::string> get_all(const std::string& key) const;

  /* throws on any key outside the given schema, naming the intruder */
  void restrict_keys(const std::vector<std::string>& allowed) const;

  const std::string& origin() const { return origin_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string origin_;
};

}  // namespace tempo

#endif /* TEMPO_KV_HPP_ */
