#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "randlab/core/bitstring.hpp"
#include "randlab/scenario/scenario.hpp"

namespace randlab::scenario {

/// Typed, line-aware access to one YAML mapping.
class Params {
 public:
  Params(YAML::Node node, std::string source, const Overrides* overrides)
      : node_(std::move(node)), source_(std::move(source)), overrides_(overrides) {}

  const YAML::Node& node() const noexcept { return node_; }
  bool has(const std::string& key) const { return node_.IsMap() && node_[key].IsDefined() && !node_[key].IsNull(); }
  YAML::Node at(const std::string& key) const;
  Params child(const std::string& key) const { return Params(at(key), source_, overrides_); }
  Params wrap(const YAML::Node& n) const { return Params(n, source_, overrides_); }

  template <class T>
  T get(const std::string& key, T fallback) const {
    if constexpr (std::is_arithmetic_v<T>)
      if (auto o = overridden(key)) return static_cast<T>(*o);
    return has(key) ? convert<T>(node_[key]) : fallback;
  }
  template <class T>
  T require(const std::string& key) const {
    if constexpr (std::is_arithmetic_v<T>)
      if (auto o = overridden(key)) return static_cast<T>(*o);
    return convert<T>(at(key));
  }
  template <class T>
  T convert(const YAML::Node& n) const {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, "cannot read value '" + text_of(n) + "'");
    }
  }

  BitString bits(const YAML::Node& n) const;
  BitString bits(const std::string& key, const BitString& fallback) const {
    return has(key) ? bits(node_[key]) : fallback;
  }
  std::vector<BitString> bit_list(const YAML::Node& n) const;

  std::string where(const YAML::Node& n) const;
  [[noreturn]] void fail(const YAML::Node& n, const std::string& message) const;
  [[noreturn]] void fail(const std::string& message) const { fail(node_, message); }

 private:
  std::optional<std::uint64_t> overridden(const std::string& key) const;
  static std::string text_of(const YAML::Node& n);

  YAML::Node node_;
  std::string source_;
  const Overrides* overrides_;
};

}  // namespace randlab::scenario
