#pragma once

// Layered run settings: builtin defaults < config file < RGUPZ_* environment
// < command-line flags. Keys are dotted paths such as "field.B_tesla".

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rgupz::cli {

/// Malformed invocation or configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

enum class Origin { Default, File, Env, Flag };
std::string_view origin_tag(Origin origin);

struct SettingSpec {
  std::string key;
  std::string flag;  // long flag that overrides the key, e.g. "--B-tesla"
  std::string fallback;
};

/// Every recognised key in a fixed order.
const std::vector<SettingSpec>& setting_specs();

/// "field.B_tesla" -> "RGUPZ_FIELD_B_TESLA"
std::string env_name(std::string_view key);

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and
/// malformed lines throw UsageError naming `origin` and the line number.
std::map<std::string, std::string> parse_config_text(std::string_view text, std::string_view origin);

class RunConfig {
 public:
  /// `flags` holds only the keys given on the command line.
  static RunConfig resolve(const std::map<std::string, std::string>& flags, const EnvLookup& env,
                           const std::optional<std::string>& file_text,
                           std::string_view file_name = "config");

  const std::string& get(const std::string& key) const;
  Origin origin(const std::string& key) const;
  /// Where the value came from, phrased for error messages: "--B-tesla",
  /// "RGUPZ_FIELD_B_TESLA", "config key field.B_tesla" or "default".
  std::string source_name(const std::string& key) const;

  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  /// The value must be one of `allowed`; returns it unchanged.
  const std::string& choice(const std::string& key, const std::vector<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, Origin> origins_;
  std::string file_name_;
};

/// Strict full-string numeric parsing; nullopt on any trailing junk.
std::optional<double> parse_double(std::string_view text);
std::optional<int> parse_int(std::string_view text);

}  // namespace rgupz::cli
