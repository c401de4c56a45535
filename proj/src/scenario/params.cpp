#include "params.hpp"

namespace randlab::scenario {

YAML::Node Params::at(const std::string& key) const {
  if (!has(key)) fail("missing '" + key + "'");
  return node_[key];
}

BitString Params::bits(const YAML::Node& n) const {
  const std::string text = convert<std::string>(n);
  try {
    return BitString(text);
  } catch (const Error& e) {
    fail(n, e.what());
  }
}

std::vector<BitString> Params::bit_list(const YAML::Node& n) const {
  if (!n.IsSequence()) fail(n, "expected a list of bit strings");
  std::vector<BitString> out;
  for (const auto& item : n) out.push_back(bits(item));
  return out;
}

std::string Params::where(const YAML::Node& n) const {
  const int line = n.Mark().line;
  return source_ + (line >= 0 ? ":" + std::to_string(line + 1) : std::string());
}

void Params::fail(const YAML::Node& n, const std::string& message) const {
  throw ConfigError(where(n.IsDefined() ? n : node_) + ": " + message);
}

std::optional<std::uint64_t> Params::overridden(const std::string& key) const {
  if (overrides_ == nullptr) return std::nullopt;
  if (key == "horizon") return overrides_->horizon;
  if (key == "depth") return overrides_->depth;
  return std::nullopt;
}

std::string Params::text_of(const YAML::Node& n) {
  if (n.IsScalar()) return n.Scalar();
  YAML::Emitter e;
  e << YAML::Flow << n;
  return e.c_str();
}

}  // namespace randlab::scenario
