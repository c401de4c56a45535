#include "randlab/staged/pairing.hpp"

namespace randlab {

BitString binary(std::uint64_t a) {
  std::size_t width = 0;
  while (width < 64 && (a >> width) != 0) ++width;
  return BitString::from_uint(a, width);
}

BitString payload_encode(const BitString& xi) {
  return BitString::ones(xi.size()).with_bit(0) + xi;
}

std::optional<PayloadPrefix> payload_decode_prefix(const BitString& bits) {
  std::size_t m = 0;
  while (m < bits.size() && bits[m] == 1) ++m;
  if (m == bits.size() || bits.size() < 2 * m + 1) return std::nullopt;
  return PayloadPrefix{bits.suffix_from(m + 1).prefix(m), 2 * m + 1};
}

BitString tuple_encode(std::uint64_t a, const BitString& xi) {
  const BitString b = binary(a);
  return BitString::ones(b.size()).with_bit(0) + b + xi;
}

std::optional<std::pair<std::uint64_t, BitString>> tuple_decode(const BitString& bits) {
  std::size_t m = 0;
  while (m < bits.size() && bits[m] == 1) ++m;
  if (m == bits.size() || m > 64 || bits.size() < 2 * m + 1) return std::nullopt;
  const std::uint64_t a = bits.suffix_from(m + 1).prefix(m).to_uint();
  return std::make_pair(a, bits.suffix_from(2 * m + 1));
}

std::uint64_t cantor_pair(std::uint64_t e, std::uint64_t k) { return (e + k) * (e + k + 1) / 2 + k; }

}  // namespace randlab
