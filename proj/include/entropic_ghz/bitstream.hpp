// Measurement bit strings and the compression form of the entropic
// inequality: C(x111) <= C(x122) + C(x212) + C(x221), where x_ijk is the
// XOR of Alice's, Bob's and Charlie's bits in context (A_i, B_j, C_k).
//
// Bit mapping (project-wide): outcome +1 -> bit 0, outcome -1 -> bit 1, so
// the product of outcomes maps to the XOR of bits.
//
// Bit-string file: 8-byte little-endian length in bits, then the packed
// payload, most significant bit first within each byte, pad bits zero.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entropic_ghz/inequalities.hpp"
#include "entropic_ghz/qstate.hpp"

namespace eghz {

class BitString {
 public:
  BitString() = default;
  /// `length` zero bits.
  explicit BitString(std::size_t length);

  /// From a string of '0' / '1' characters.
  static BitString from_string(std::string_view bits);
  /// Requires exactly ceil(length / 8) bytes with zero pad bits.
  static BitString from_bytes(std::vector<std::uint8_t> payload, std::size_t length);

  std::size_t size() const { return length_; }
  bool empty() const { return length_ == 0; }
  bool get(std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u; }
  void set(std::size_t i, bool bit);
  void push_back(bool bit);

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::size_t count_ones() const;
  std::string to_string() const;

  bool operator==(const BitString&) const = default;

 private:
  std::size_t length_ = 0;
  std::vector<std::uint8_t> bytes_;
};

constexpr bool bit_of_outcome(int outcome) { return outcome == -1; }
constexpr int outcome_of_bit(bool bit) { return bit ? -1 : 1; }

/// Bitwise x ⊕ y ⊕ z; lengths must match.
BitString xor_strings(const BitString& x, const BitString& y, const BitString& z);

void write_bitstring_file(const std::filesystem::path& path, const BitString& bits);
BitString read_bitstring_file(const std::filesystem::path& path);

/// Bits recorded in each of the four contexts. Every context is sampled on
/// its own n fresh triples, so each context carries its own three strings.
struct RoundSamples {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  /// [context][party], contexts in kTripartiteContexts order (111, 122, 212, 221).
  std::array<std::array<BitString, 3>, 4> bits;

  const BitString& party_string(std::size_t context, std::size_t party) const {
    return bits.at(context).at(party);
  }
  BitString xor_string(std::size_t context) const;
};

/// Samples each context n times from its exact outcome distribution by
/// inverse CDF over the 8 outcomes in index order. Context k uses stream k
/// of the master seed, so results do not depend on `jobs`.
RoundSamples sample_rounds(const DensityMatrix& state, const TripartiteSettings& settings,
                           std::size_t n, std::uint64_t seed, int jobs = 1);

struct CompressionReport {
  std::string codec;
  std::size_t input_bits = 0;
  /// Codec stream size in bits, headers included; excludes the two-byte
  /// blob framing and the final byte padding.
  std::size_t output_bits = 0;
  bool lossless_verified = false;
};

struct CompressionInequality {
  InequalityReport report;
  /// One per XOR string, lhs first.
  std::array<CompressionReport, 4> strings;
  /// 64 · log2(n).
  double log_bound = 0.0;
  /// Each rhs term within log_bound.
  std::array<bool, 3> rhs_logarithmic{};
  bool side_condition_met = false;
};

/// Evaluates the compression inequality with the named codec. lhs and rhs
/// are output sizes in bits. Throws std::invalid_argument for unknown codecs.
CompressionInequality compression_inequality_report(const RoundSamples& samples,
                                                    std::string_view codec);

}  // namespace eghz
