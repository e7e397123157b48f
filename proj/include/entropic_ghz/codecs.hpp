// Self-contained lossless codecs for bit strings.
//
// Blob framing: byte 0 = format version 0x01, byte 1 = codec id
// (0x01 rle-elias, 0x02 block-huffman), then the codec stream packed MSB
// first and zero-padded to a byte boundary.
//
// rle-elias stream:
//   32 bits  input length in bits
//    8 bits  first bit value (0x00 or 0x01)
//   then each maximal run length r >= 1 as an Elias-gamma code:
//   floor(log2 r) zeros followed by r in binary.
//
// block-huffman stream:
//   32 bits  input length in bits
//    5 bits  block size B (1..16)
//    5 bits  bits in the final partial block (0 when the length divides B)
//    1 bit   mode: 0 = single distinct block (or empty input), 1 = Huffman
//   mode 0:  B bits symbol, 32 bits block count (omitted for empty input)
//   mode 1:  2^B code lengths, 5 bits each (0 = unused symbol), then the
//            canonical code of every block. The final partial block is
//            zero-padded to B bits before coding.
//   Huffman ties in frequency break by the smaller symbol value; canonical
//   codes are assigned in (length, symbol) order.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "entropic_ghz/bitstream.hpp"

namespace eghz {

inline constexpr std::uint8_t kBlobVersion = 0x01;
inline constexpr std::uint8_t kCodecRleElias = 0x01;
inline constexpr std::uint8_t kCodecBlockHuffman = 0x02;

class BitWriter {
 public:
  /// Writes the low `width` bits of value, most significant first.
  void write(std::uint64_t value, int width);
  void write_bit(bool bit);
  std::size_t bit_count() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  /// Throws std::runtime_error past the end of the data.
  bool read_bit();
  std::uint64_t read(int width);
  std::size_t position() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct Compressed {
  CompressionReport report;
  std::vector<std::uint8_t> blob;
};

Compressed rle_elias_compress(const BitString& input);
Compressed block_huffman_compress(const BitString& input, int block_bits = 8);

/// Decodes any blob produced above; throws std::runtime_error on malformed input.
BitString decompress(std::span<const std::uint8_t> blob);

/// "rle-elias" or "block-huffman" (block size 8); throws on other names.
Compressed compress(const BitString& input, std::string_view codec);

/// Elias-gamma length in bits of r >= 1.
int elias_gamma_bits(std::uint64_t r);

}  // namespace eghz
