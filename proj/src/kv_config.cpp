#include "fracoint/kv_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracoint/errors.hpp"

namespace fracoint {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double_token(const std::string& tok, const char* stage) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw config_error(stage, "cannot parse number '" + tok + "'");
  return v;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text, const char* stage) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw config_error(stage, "empty entry in list '" + text + "'");
    out.push_back(parse_double_token(tok, stage));
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* stage) {
  std::vector<std::size_t> out;
  for (double v : parse_double_list(text, stage)) {
    if (v < 0.0 || v != std::floor(v))
      throw config_error(stage, "expected non-negative integers in '" + text + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

KvConfig KvConfig::parse_text(const std::string& text, const char* stage) {
  KvConfig cfg;
  cfg.stage_ = stage;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(stage, "line " + std::to_string(lineno) +
                                    ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error(stage, "line " + std::to_string(lineno) + ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

KvConfig KvConfig::parse_file(const std::string& path, const char* stage) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error(stage, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), stage);
}

const std::string& KvConfig::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw config_error(stage_, "missing required key '" + key + "'");
  return it->second;
}

std::string KvConfig::get_string(const std::string& key,
                                 const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KvConfig::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double_token(it->second, stage_);
}

long KvConfig::get_long(const std::string& key, long fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  return static_cast<long>(v);
}

std::uint64_t KvConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::uint64_t v = 0;
  const std::string& tok = it->second;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw config_error(stage_, "cannot parse unsigned integer '" + tok + "'");
  return v;
}

bool KvConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw config_error(stage_, "cannot parse boolean '" + it->second + "'");
}

std::vector<double> KvConfig::get_double_list(const std::string& key) const {
  return parse_double_list(raw(key), stage_);
}

std::vector<std::size_t> KvConfig::get_size_list(const std::string& key) const {
  return parse_size_list(raw(key), stage_);
}

void KvConfig::set(const std::string& key, const std::string& value) {
  if (values_.find(key) == values_.end()) order_.push_back(key);
  values_[key] = value;
}

std::string KvConfig::to_text() const {
  std::string out;
  for (const auto& k : order_) {
    out += k;
    out += "=";
    out += values_.at(k);
    out += "\n";
  }
  return out;
}

}  // namespace fracoint
