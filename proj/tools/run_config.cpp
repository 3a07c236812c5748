#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace rgupz::cli {

std::string_view origin_tag(Origin origin) {
  switch (origin) {
    case Origin::Default: return "default";
    case Origin::File: return "file";
    case Origin::Env: return "env";
    case Origin::Flag: return "flag";
  }
  return "?";
}

const std::vector<SettingSpec>& setting_specs() {
  static const std::vector<SettingSpec> specs = {
      {"field.B_tesla", "--B-tesla", "1"},
      {"deform.epsilon", "--epsilon", "1"},
      {"deform.gamma", "--gamma", "planck"},
      {"particle.mass_g", "--mass", "electron"},
      {"particle.Z", "--Z", "1"},
      {"model.regime", "--regime", "rgup"},
      {"model.mode", "--mode", "derived"},
      {"model.radius_cm", "--radius-cm", "bohr"},
      {"output.unit", "--unit", "eV"},
      {"output.format", "--json/--csv", "table"},
  };
  return specs;
}

namespace {

const SettingSpec* find_spec(std::string_view key) {
  const auto& specs = setting_specs();
  auto it = std::find_if(specs.begin(), specs.end(), [key](const SettingSpec& s) { return s.key == key; });
  return it == specs.end() ? nullptr : &*it;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string env_name(std::string_view key) {
  std::string out = "RGUPZ_";
  for (char ch : key) {
    out += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return out;
}

std::map<std::string, std::string> parse_config_text(std::string_view text, std::string_view origin) {
  std::map<std::string, std::string> out;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(fmt::format("{}:{}: expected 'key = value'", origin, line_no));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!find_spec(key)) throw UsageError(fmt::format("{}:{}: unknown key '{}'", origin, line_no, key));
    if (value.empty()) throw UsageError(fmt::format("{}:{}: empty value for '{}'", origin, line_no, key));
    out[key] = value;
  }
  return out;
}

RunConfig RunConfig::resolve(const std::map<std::string, std::string>& flags, const EnvLookup& env,
                             const std::optional<std::string>& file_text, std::string_view file_name) {
  RunConfig cfg;
  cfg.file_name_ = file_name;
  for (const auto& spec : setting_specs()) {
    cfg.values_[spec.key] = spec.fallback;
    cfg.origins_[spec.key] = Origin::Default;
  }
  if (file_text) {
    for (auto& [key, value] : parse_config_text(*file_text, file_name)) {
      cfg.values_[key] = value;
      cfg.origins_[key] = Origin::File;
    }
  }
  if (env) {
    for (const auto& spec : setting_specs()) {
      if (auto value = env(env_name(spec.key)); value && !value->empty()) {
        cfg.values_[spec.key] = *value;
        cfg.origins_[spec.key] = Origin::Env;
      }
    }
  }
  for (const auto& [key, value] : flags) {
    if (!find_spec(key)) throw UsageError(fmt::format("unknown setting '{}'", key));
    cfg.values_[key] = value;
    cfg.origins_[key] = Origin::Flag;
  }
  return cfg;
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError(fmt::format("unknown setting '{}'", key));
  return it->second;
}

Origin RunConfig::origin(const std::string& key) const {
  auto it = origins_.find(key);
  return it == origins_.end() ? Origin::Default : it->second;
}

std::string RunConfig::source_name(const std::string& key) const {
  switch (origin(key)) {
    case Origin::Flag: {
      const SettingSpec* spec = find_spec(key);
      return spec ? spec->flag : key;
    }
    case Origin::Env: return env_name(key);
    case Origin::File: return fmt::format("{} key {}", file_name_, key);
    case Origin::Default: return fmt::format("default {}", key);
  }
  return key;
}

double RunConfig::number(const std::string& key) const {
  const std::string& raw = get(key);
  auto value = parse_double(raw);
  if (!value) throw UsageError(fmt::format("{}: '{}' is not a number", source_name(key), raw));
  return *value;
}

int RunConfig::integer(const std::string& key) const {
  const std::string& raw = get(key);
  auto value = parse_int(raw);
  if (!value) throw UsageError(fmt::format("{}: '{}' is not an integer", source_name(key), raw));
  return *value;
}

const std::string& RunConfig::choice(const std::string& key,
                                     const std::vector<std::string>& allowed) const {
  const std::string& raw = get(key);
  if (std::find(allowed.begin(), allowed.end(), raw) == allowed.end()) {
    throw UsageError(fmt::format("{}: '{}' is not one of {{{}}}", source_name(key), raw,
                                 fmt::join(allowed, ", ")));
  }
  return raw;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<int> parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

}  // namespace rgupz::cli
