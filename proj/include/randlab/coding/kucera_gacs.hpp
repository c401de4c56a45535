#pragma once

#include <cstddef>
#include <optional>

#include "randlab/core/bitstring.hpp"
#include "randlab/staged/pi01_tree.hpp"

namespace randlab::coding {

/// Least l in (|σ|, depth] at which σ has two distinct surviving length-l
/// extensions at stage s; nullopt if there is none.
std::optional<std::size_t> find_kucera_depth(const BitString& sigma, const Pi01Tree& p, Stage s);

/// As find_kucera_depth, but throws Error when the tree is too shallow.
std::size_t kucera_depth(const BitString& sigma, const Pi01Tree& p, Stage s);

/// Codes each bit of `bits` above σ: 0 by the leftmost and 1 by the rightmost
/// survivor at the Kučera depth, using the final class.
BitString kg_encode_bits(const BitString& bits, const BitString& sigma, const Pi01Tree& p);

/// kg_encode_bits applied to the self-delimiting payload code of ξ. The
/// codewords for distinct ξ are pairwise incomparable.
BitString kg_encode(const BitString& xi, const BitString& sigma, const Pi01Tree& p);

/// Replays the coding with the stage-s class; nullopt (undecodable) if some
/// step of τ is neither extreme or τ stops inside a step.
std::optional<BitString> kg_decode_bits(const BitString& tau, const BitString& sigma, const Pi01Tree& p, Stage s);

struct DecodedPrefix {
  BitString payload;
  BitString codeword;  // the prefix of the input that was consumed
};

/// Decodes one payload code from the front of x (above σ). Returns nullopt if
/// x leaves the code tree or ends before a complete payload code.
std::optional<DecodedPrefix> kg_decode_prefix(const BitString& x, const BitString& sigma, const Pi01Tree& p,
                                              Stage s);

/// Exact inverse of kg_encode: τ must be a whole codeword.
std::optional<BitString> kg_decode(const BitString& tau, const BitString& sigma, const Pi01Tree& p, Stage s);

}  // namespace randlab::coding
