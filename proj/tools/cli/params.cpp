#include "cli/params.hpp"

#include <fstream>

#include <CLI11.hpp>

#include "tsbound/error.hpp"

namespace tsbound::cli {

Params::Params(Json values) : values_(std::move(values)) {
  if (values_.is_null()) values_ = Json::object();
  if (!values_.is_object()) throw InvalidInput("config section must be an object");
}

bool Params::has(const std::string& key) const {
  return values_.contains(key) && !values_.at(key).is_null();
}

const Json& Params::at(const std::string& key) const {
  if (!has(key)) throw InvalidInput("missing required parameter '" + key + "'");
  return values_.at(key);
}

double Params::number(const std::string& key) const {
  const Json& v = at(key);
  if (!v.is_number()) throw InvalidInput("parameter '" + key + "' must be a number");
  return v.get<double>();
}

double Params::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long Params::integer(const std::string& key) const {
  const Json& v = at(key);
  if (!v.is_number_integer()) throw InvalidInput("parameter '" + key + "' must be an integer");
  return v.get<long>();
}

long Params::integer(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string Params::text(const std::string& key) const {
  const Json& v = at(key);
  if (!v.is_string()) throw InvalidInput("parameter '" + key + "' must be a string");
  return v.get<std::string>();
}

std::string Params::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

bool Params::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Json& v = values_.at(key);
  if (!v.is_boolean()) throw InvalidInput("parameter '" + key + "' must be true or false");
  return v.get<bool>();
}

Json load_config_section(const std::string& path, const std::string& section) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config '" + path + "'");
  Json root;
  try {
    root = Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("config '" + path + "': " + e.what());
  }
  if (!root.is_object()) throw InvalidInput("config '" + path + "' must hold an object");
  if (root.contains(section)) return root.at(section);
  return root;
}

struct FlagSet::Entry {
  enum class Type { number, integer, text, toggle };
  Type type = Type::number;
  std::string key;
  CLI::Option* option = nullptr;
  double num = 0.0;
  long whole = 0;
  std::string str;
  bool on = false;
};

namespace {

template <class Entries, class Type>
auto& add(Entries& entries, Type type, const std::string& key) {
  auto& e = *entries.emplace_back(std::make_unique<typename Entries::value_type::element_type>());
  e.type = type;
  e.key = key;
  return e;
}

}  // namespace

FlagSet::FlagSet() = default;
FlagSet::~FlagSet() = default;
FlagSet::FlagSet(FlagSet&&) noexcept = default;
FlagSet& FlagSet::operator=(FlagSet&&) noexcept = default;

void FlagSet::number(CLI::App& app, const std::string& flag, const std::string& key,
                     const std::string& help) {
  auto& e = add(entries_, Entry::Type::number, key);
  e.option = app.add_option(flag, e.num, help);
}

void FlagSet::integer(CLI::App& app, const std::string& flag, const std::string& key,
                      const std::string& help) {
  auto& e = add(entries_, Entry::Type::integer, key);
  e.option = app.add_option(flag, e.whole, help);
}

void FlagSet::text(CLI::App& app, const std::string& flag, const std::string& key,
                   const std::string& help) {
  auto& e = add(entries_, Entry::Type::text, key);
  e.option = app.add_option(flag, e.str, help);
}

void FlagSet::toggle(CLI::App& app, const std::string& flag, const std::string& key,
                     const std::string& help) {
  auto& e = add(entries_, Entry::Type::toggle, key);
  e.option = app.add_flag(flag, e.on, help);
}

Json FlagSet::overlay(Json base) const {
  if (base.is_null()) base = Json::object();
  for (const auto& e : entries_) {
    if (e->option->count() == 0) continue;
    switch (e->type) {
      case Entry::Type::number: base[e->key] = e->num; break;
      case Entry::Type::integer: base[e->key] = e->whole; break;
      case Entry::Type::text: base[e->key] = e->str; break;
      case Entry::Type::toggle: base[e->key] = e->on; break;
    }
  }
  return base;
}

}  // namespace tsbound::cli
