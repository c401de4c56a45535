#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "randlab/core/bitstring.hpp"

namespace randlab {

/// Binary representation without leading zeros; 0 maps to the empty string.
BitString binary(std::uint64_t a);

/// Self-delimiting payload code 1^{|ξ|} 0 ξ.
BitString payload_encode(const BitString& xi);

struct PayloadPrefix {
  BitString payload;
  std::size_t consumed = 0;
};

/// Parses one payload code from the start of `bits`; nullopt if `bits` is
/// too short to contain a complete code.
std::optional<PayloadPrefix> payload_decode_prefix(const BitString& bits);

/// Tuple ⟨a, ξ⟩ = 1^{|bin a|} 0 bin(a) ξ.
BitString tuple_encode(std::uint64_t a, const BitString& xi);
std::optional<std::pair<std::uint64_t, BitString>> tuple_decode(const BitString& bits);

/// Cantor pairing (e+k)(e+k+1)/2 + k.
std::uint64_t cantor_pair(std::uint64_t e, std::uint64_t k);

}  // namespace randlab
