#ifndef FRACOINT_KV_CONFIG_HPP
#define FRACOINT_KV_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fracoint {

// UTF-8 key=value text block: one pair per line, '#' starts a comment,
// blank lines ignored. Later keys override earlier ones.
class KvConfig {
public:
  static KvConfig parse_text(const std::string& text, const char* stage);
  static KvConfig parse_file(const std::string& path, const char* stage);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& raw(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<std::size_t> get_size_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  const std::vector<std::string>& keys_in_order() const { return order_; }
  std::string to_text() const;

private:
  const char* stage_ = "config";
  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
};

std::vector<double> parse_double_list(const std::string& text, const char* stage);
std::vector<std::size_t> parse_size_list(const std::string& text, const char* stage);

}  // namespace fracoint

#endif
