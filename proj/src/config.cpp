#include "vesd/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "vesd/kernels.hpp"

namespace vesd {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::string spaced = value;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream is(spaced);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  // Allow simple fractions such as -1/6 or 7/8.
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return parse_real(key, text.substr(0, slash)) / parse_real(key, text.substr(slash + 1));
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw ConfigError("config: bad number '" + text + "' for key " + key);
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config: bad integer '" + text + "' for key " + key);
  }
  return v;
}

bool is_doubling(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] != 2 * v[i - 1]) return false;
  }
  return true;
}

}  // namespace

void StudyConfig::validate() const {
  static const std::vector<std::string> kExamples{"1", "2", "3", "3a", "3b"};
  if (std::find(kExamples.begin(), kExamples.end(), example) == kExamples.end()) {
    throw ConfigError("config: unknown example '" + example + "'");
  }
  if (alpha0.empty()) throw ConfigError("config: alpha0 must not be empty");
  for (double a : alpha0) {
    try {
      ExponentSpec{a, alpha_slope, T}.validate();
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (N_list.empty() || M_list.empty()) throw ConfigError("config: N_list and M_list must not be empty");
  if (!is_doubling(N_list) || !is_doubling(M_list)) throw ConfigError("config: ladders must be doubling sequences");
  if (N_list.front() < 1 || M_list.front() < 2) throw ConfigError("config: need N >= 1 and M >= 2");
  if (!(kappa > 0.0) || !(tol > 0.0) || max_iters < 1 || quad_nodes < 1) {
    throw ConfigError("config: kappa, tol, max_iters and quad_nodes must be positive");
  }
}

StudyConfig default_config(const std::string& example) {
  StudyConfig c;
  c.example = example;
  if (example == "1") return c;
  if (example == "2") {
    c.alpha0 = {0.2};
    c.T = 1.0;
    c.kappa = 7.0 / 8.0;
    c.N_list = {4, 8, 16, 32};
    c.M_list = {4, 8, 16, 32};
    return c;
  }
  if (example == "3" || example == "3a" || example == "3b") {
    c.alpha0 = {0.8};
    c.T = 1.0;
    c.kappa = 1.0;
    c.N_list = {80};
    c.M_list = {32};
    return c;
  }
  throw ConfigError("config: unknown example '" + example + "'");
}

StudyConfig parse_config(std::istream& in, const std::string& fallback_example) {
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!entries.emplace(key, value).second) throw ConfigError("config: duplicate key " + key);
  }

  static const std::vector<std::string> kKeys{"example", "alpha0",   "alpha_slope", "T",          "N_list", "M_list",
                                              "kappa",   "tol",      "max_iters",   "quad_nodes", "out_dir"};
  for (const auto& [key, value] : entries) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) throw ConfigError("config: unknown key " + key);
  }

  const auto ex = entries.find("example");
  StudyConfig c = default_config(ex != entries.end() ? ex->second : fallback_example);
  for (const auto& [key, value] : entries) {
    if (key == "alpha0") {
      c.alpha0.clear();
      for (const auto& tok : split_list(value)) c.alpha0.push_back(parse_real(key, tok));
    } else if (key == "alpha_slope") {
      c.alpha_slope = parse_real(key, value);
    } else if (key == "T") {
      c.T = parse_real(key, value);
    } else if (key == "N_list" || key == "M_list") {
      auto& list = key == "N_list" ? c.N_list : c.M_list;
      list.clear();
      for (const auto& tok : split_list(value)) list.push_back(parse_int(key, tok));
    } else if (key == "kappa") {
      c.kappa = parse_real(key, value);
    } else if (key == "tol") {
      c.tol = parse_real(key, value);
    } else if (key == "max_iters") {
      c.max_iters = parse_int(key, value);
    } else if (key == "quad_nodes") {
      c.quad_nodes = parse_int(key, value);
    } else if (key == "out_dir") {
      c.out_dir = value;
    }
  }
  c.validate();
  return c;
}

StudyConfig load_config(const std::string& path, const std::string& fallback_example) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  return parse_config(in, fallback_example);
}

}  // namespace vesd
