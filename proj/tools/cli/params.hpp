#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace CLI {
class App;
class Option;
}  // namespace CLI

namespace tsbound::cli {

using Json = nlohmann::json;

/// Resolved inputs of one subcommand: a config section with explicit flags laid over it.
/// The same object is echoed into every report.
class Params {
 public:
  Params() : values_(Json::object()) {}
  explicit Params(Json values);

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  bool flag(const std::string& key, bool fallback = false) const;
  const Json& at(const std::string& key) const;

  void set(const std::string& key, Json value) { values_[key] = std::move(value); }
  const Json& json() const noexcept { return values_; }

 private:
  Json values_;
};

/// Reads a JSON config file. Returns `section` when the file has it, else the whole object.
Json load_config_section(const std::string& path, const std::string& section);

/// Flags registered on a subcommand; only the ones given on the command line override config.
class FlagSet {
 public:
  FlagSet();
  ~FlagSet();
  FlagSet(FlagSet&&) noexcept;
  FlagSet& operator=(FlagSet&&) noexcept;

  void number(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help);
  void integer(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help);
  void text(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help);
  void toggle(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help);

  Json overlay(Json base) const;

 private:
  struct Entry;
  std::vector<std::unique_ptr<Entry>> entries_;
};

}  // namespace tsbound::cli
