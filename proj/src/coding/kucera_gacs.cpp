#include "randlab/coding/kucera_gacs.hpp"

#include <algorithm>

#include "randlab/core/error.hpp"
#include "randlab/staged/pairing.hpp"

namespace randlab::coding {

std::optional<std::size_t> find_kucera_depth(const BitString& sigma, const Pi01Tree& p, Stage s) {
  const CylinderSet inside = p.class_at(s).restrict_to(sigma);
  if (inside.empty()) return std::nullopt;
  // Two survivors first appear at the depth where the leftmost and rightmost
  // antichain elements (padded) part ways.
  const BitString& left = inside.antichain().front();
  const BitString& right = inside.antichain().back();
  std::size_t l = sigma.size() + 1;
  if (left == right) {
    // a single cylinder: it branches right after its own end
    l = std::max(l, left.size() + 1);
  } else {
    std::size_t common = sigma.size();
    while (common < left.size() && common < right.size() && left[common] == right[common]) ++common;
    l = std::max(l, common + 1);
  }
  if (l > p.depth()) return std::nullopt;
  return l;
}

std::size_t kucera_depth(const BitString& sigma, const Pi01Tree& p, Stage s) {
  if (auto l = find_kucera_depth(sigma, p, s)) return *l;
  throw Error("no branching survivor above " + sigma.str() + " within tree depth " + std::to_string(p.depth()));
}

BitString kg_encode_bits(const BitString& bits, const BitString& sigma, const Pi01Tree& p) {
  const Stage last = p.horizon();
  BitString tau = sigma;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::size_t l = kucera_depth(tau, p, last);
    tau = *(bits[i] ? p.rightmost(tau, l, last) : p.leftmost(tau, l, last));
  }
  return tau;
}

BitString kg_encode(const BitString& xi, const BitString& sigma, const Pi01Tree& p) {
  return kg_encode_bits(payload_encode(xi), sigma, p);
}

namespace {

// One decoding step above `current`: the bit read from x, and the new codeword.
std::optional<std::pair<int, BitString>> decode_step(const BitString& x, const BitString& current, const Pi01Tree& p,
                                                     Stage s) {
  const auto l = find_kucera_depth(current, p, s);
  if (!l || *l > x.size()) return std::nullopt;
  BitString candidate = x.prefix(*l);
  if (candidate == p.leftmost(current, *l, s)) return std::make_pair(0, std::move(candidate));
  if (candidate == p.rightmost(current, *l, s)) return std::make_pair(1, std::move(candidate));
  return std::nullopt;
}

}  // namespace

std::optional<BitString> kg_decode_bits(const BitString& tau, const BitString& sigma, const Pi01Tree& p, Stage s) {
  if (!sigma.is_prefix_of(tau)) return std::nullopt;
  BitString current = sigma;
  BitString bits;
  while (current != tau) {
    auto step = decode_step(tau, current, p, s);
    if (!step) return std::nullopt;
    bits.push_back(step->first);
    current = std::move(step->second);
  }
  return bits;
}

std::optional<DecodedPrefix> kg_decode_prefix(const BitString& x, const BitString& sigma, const Pi01Tree& p,
                                              Stage s) {
  if (!sigma.is_prefix_of(x)) return std::nullopt;
  BitString current = sigma;
  BitString bits;
  while (true) {
    if (auto parsed = payload_decode_prefix(bits)) return DecodedPrefix{std::move(parsed->payload), current};
    auto step = decode_step(x, current, p, s);
    if (!step) return std::nullopt;
    bits.push_back(step->first);
    current = std::move(step->second);
  }
}

std::optional<BitString> kg_decode(const BitString& tau, const BitString& sigma, const Pi01Tree& p, Stage s) {
  auto parsed = kg_decode_prefix(tau, sigma, p, s);
  if (!parsed || parsed->codeword != tau) return std::nullopt;
  return std::move(parsed->payload);
}

}  // namespace randlab::coding
