#include "entropic_ghz/codecs.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace eghz {

namespace {

constexpr int kLengthBits = 32;
constexpr int kMaxCodeLength = 31;  // fits the 5-bit code length field

void require_encodable_length(const BitString& input) {
  if (input.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("codec input longer than 2^32 - 1 bits");
  }
}

std::vector<std::uint8_t> frame(std::uint8_t codec_id, const BitWriter& w) {
  std::vector<std::uint8_t> blob(2 + w.bytes().size());
  blob[0] = kBlobVersion;
  blob[1] = codec_id;
  std::copy(w.bytes().begin(), w.bytes().end(), blob.begin() + 2);
  return blob;
}

void write_gamma(BitWriter& w, std::uint64_t r) {
  const int width = std::bit_width(r);
  w.write(0, width - 1);
  w.write(r, width);
}

std::uint64_t read_gamma(BitReader& r) {
  int zeros = 0;
  while (!r.read_bit()) {
    if (++zeros > 63) throw std::runtime_error("malformed Elias-gamma code");
  }
  return (std::uint64_t{1} << zeros) | r.read(zeros);
}

// Huffman code lengths with (frequency, smallest symbol) ordering.
std::vector<int> huffman_lengths(const std::vector<std::uint64_t>& freq) {
  struct Node {
    std::uint64_t weight;
    std::uint32_t min_symbol;
    int left, right;  // -1 for leaves
  };
  std::vector<Node> nodes;
  auto later = [&nodes](int a, int b) {
    const auto& x = nodes[static_cast<std::size_t>(a)];
    const auto& y = nodes[static_cast<std::size_t>(b)];
    return x.weight != y.weight ? x.weight > y.weight : x.min_symbol > y.min_symbol;
  };
  std::priority_queue<int, std::vector<int>, decltype(later)> heap(later);
  for (std::uint32_t s = 0; s < freq.size(); ++s) {
    if (freq[s] == 0) continue;
    nodes.push_back({freq[s], s, -1, -1});
    heap.push(static_cast<int>(nodes.size() - 1));
  }
  while (heap.size() > 1) {
    const int a = heap.top();
    heap.pop();
    const int b = heap.top();
    heap.pop();
    nodes.push_back({nodes[static_cast<std::size_t>(a)].weight + nodes[static_cast<std::size_t>(b)].weight,
                     std::min(nodes[static_cast<std::size_t>(a)].min_symbol,
                              nodes[static_cast<std::size_t>(b)].min_symbol),
                     a, b});
    heap.push(static_cast<int>(nodes.size() - 1));
  }
  std::vector<int> lengths(freq.size(), 0);
  std::vector<std::pair<int, int>> stack{{heap.top(), 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const auto& node = nodes[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      lengths[node.min_symbol] = depth;
    } else {
      stack.push_back({node.left, depth + 1});
      stack.push_back({node.right, depth + 1});
    }
  }
  return lengths;
}

// Rescales frequencies until no code exceeds kMaxCodeLength.
std::vector<int> limited_huffman_lengths(std::vector<std::uint64_t> freq) {
  while (true) {
    auto lengths = huffman_lengths(freq);
    if (*std::max_element(lengths.begin(), lengths.end()) <= kMaxCodeLength) return lengths;
    for (auto& f : freq) {
      if (f > 0) f = (f + 1) / 2;
    }
  }
}

struct CanonicalCode {
  std::vector<std::uint32_t> code;  // per symbol
  std::vector<int> length;          // per symbol
};

CanonicalCode canonical_codes(const std::vector<int>& lengths) {
  std::vector<std::uint32_t> order;
  for (std::uint32_t s = 0; s < lengths.size(); ++s) {
    if (lengths[s] > 0) order.push_back(s);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return lengths[a] < lengths[b]; });
  CanonicalCode out{std::vector<std::uint32_t>(lengths.size(), 0), lengths};
  std::uint32_t code = 0;
  int prev = 0;
  for (auto s : order) {
    code <<= (lengths[s] - prev);
    out.code[s] = code++;
    prev = lengths[s];
  }
  return out;
}

class CanonicalDecoder {
 public:
  explicit CanonicalDecoder(const std::vector<int>& lengths)
      : count_(kMaxCodeLength + 1, 0), first_(kMaxCodeLength + 1, 0), offset_(kMaxCodeLength + 1, 0) {
    for (std::uint32_t s = 0; s < lengths.size(); ++s) {
      if (lengths[s] > 0) sorted_.push_back(s);
    }
    std::stable_sort(sorted_.begin(), sorted_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return lengths[a] < lengths[b]; });
    for (auto s : sorted_) ++count_[static_cast<std::size_t>(lengths[s])];
    // Kraft check: an over-subscribed table cannot come from the encoder.
    std::uint64_t code = 0;
    std::uint32_t index = 0;
    for (int len = 1; len <= kMaxCodeLength; ++len) {
      code <<= 1;
      first_[static_cast<std::size_t>(len)] = code;
      offset_[static_cast<std::size_t>(len)] = index;
      code += count_[static_cast<std::size_t>(len)];
      index += count_[static_cast<std::size_t>(len)];
      if (code > (std::uint64_t{1} << len)) throw std::runtime_error("invalid Huffman code lengths");
    }
    if (sorted_.size() < 2) throw std::runtime_error("Huffman table needs two symbols");
  }

  std::uint32_t decode(BitReader& r) const {
    std::uint64_t code = 0;
    for (int len = 1; len <= kMaxCodeLength; ++len) {
      code = (code << 1) | (r.read_bit() ? 1u : 0u);
      const auto l = static_cast<std::size_t>(len);
      if (code - first_[l] < count_[l] && code >= first_[l]) {
        return sorted_[offset_[l] + (code - first_[l])];
      }
    }
    throw std::runtime_error("invalid Huffman code in stream");
  }

 private:
  std::vector<std::uint32_t> sorted_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint64_t> first_;
  std::vector<std::uint32_t> offset_;
};

BitString rle_elias_decode(BitReader& r) {
  const std::uint64_t length = r.read(kLengthBits);
  const std::uint64_t marker = r.read(8);
  if (marker > 1) throw std::runtime_error("invalid leading-bit marker");
  BitString out(length);
  bool bit = marker == 1;
  std::uint64_t pos = 0;
  while (pos < length) {
    const std::uint64_t run = read_gamma(r);
    if (run > length - pos) throw std::runtime_error("run overflows the declared length");
    if (bit) {
      for (std::uint64_t i = 0; i < run; ++i) out.set(pos + i, true);
    }
    pos += run;
    bit = !bit;
  }
  return out;
}

BitString block_huffman_decode(BitReader& r) {
  const std::uint64_t length = r.read(kLengthBits);
  const int block = static_cast<int>(r.read(5));
  const std::uint64_t tail = r.read(5);
  const bool huffman = r.read_bit();
  if (block < 1 || block > 16) throw std::runtime_error("invalid block size");
  if (tail != length % static_cast<std::uint64_t>(block)) throw std::runtime_error("inconsistent tail length");
  const std::uint64_t blocks = (length + static_cast<std::uint64_t>(block) - 1) / static_cast<std::uint64_t>(block);

  BitString out(length);
  auto emit = [&](std::uint64_t index, std::uint32_t symbol) {
    for (int b = 0; b < block; ++b) {
      const std::uint64_t pos = index * static_cast<std::uint64_t>(block) + static_cast<std::uint64_t>(b);
      const bool bit = (symbol >> (block - 1 - b)) & 1u;
      if (pos < length) {
        if (bit) out.set(pos, true);
      } else if (bit) {
        throw std::runtime_error("nonzero padding in final block");
      }
    }
  };

  if (!huffman) {
    if (blocks == 0) return out;
    const auto symbol = static_cast<std::uint32_t>(r.read(block));
    if (r.read(kLengthBits) != blocks) throw std::runtime_error("block count mismatch");
    for (std::uint64_t i = 0; i < blocks; ++i) emit(i, symbol);
    return out;
  }
  std::vector<int> lengths(std::size_t{1} << block);
  for (auto& l : lengths) l = static_cast<int>(r.read(5));
  const CanonicalDecoder decoder(lengths);
  for (std::uint64_t i = 0; i < blocks; ++i) emit(i, decoder.decode(r));
  return out;
}

}  // namespace

void BitWriter::write(std::uint64_t value, int width) {
  for (int i = width - 1; i >= 0; --i) write_bit((value >> i) & 1u);
}

void BitWriter::write_bit(bool bit) {
  if (bits_ % 8 == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
  ++bits_;
}

bool BitReader::read_bit() {
  if (pos_ >= bytes_.size() * 8) throw std::runtime_error("unexpected end of compressed data");
  const bool bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::read(int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1u : 0u);
  return v;
}

int elias_gamma_bits(std::uint64_t r) {
  if (r == 0) throw std::invalid_argument("Elias-gamma codes start at 1");
  return 2 * std::bit_width(r) - 1;
}

Compressed rle_elias_compress(const BitString& input) {
  require_encodable_length(input);
  BitWriter w;
  w.write(input.size(), kLengthBits);
  w.write(!input.empty() && input.get(0) ? 1 : 0, 8);
  std::size_t i = 0;
  while (i < input.size()) {
    std::size_t j = i + 1;
    while (j < input.size() && input.get(j) == input.get(i)) ++j;
    write_gamma(w, j - i);
    i = j;
  }
  Compressed out{{"rle-elias", input.size(), w.bit_count(), false}, frame(kCodecRleElias, w)};
  out.report.lossless_verified = decompress(out.blob) == input;
  return out;
}

Compressed block_huffman_compress(const BitString& input, int block_bits) {
  if (block_bits < 1 || block_bits > 16) throw std::invalid_argument("block_bits must lie in [1, 16]");
  require_encodable_length(input);
  const auto block = static_cast<std::size_t>(block_bits);
  const std::size_t blocks = (input.size() + block - 1) / block;

  std::vector<std::uint32_t> symbols(blocks, 0);
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input.get(i)) symbols[i / block] |= 1u << (block - 1 - i % block);
  }
  std::vector<std::uint64_t> freq(std::size_t{1} << block_bits, 0);
  for (auto s : symbols) ++freq[s];
  const auto distinct = static_cast<std::size_t>(
      std::count_if(freq.begin(), freq.end(), [](std::uint64_t f) { return f > 0; }));

  BitWriter w;
  w.write(input.size(), kLengthBits);
  w.write(static_cast<std::uint64_t>(block_bits), 5);
  w.write(input.size() % block, 5);
  if (distinct <= 1) {
    w.write_bit(false);
    if (blocks > 0) {
      w.write(symbols.front(), block_bits);
      w.write(blocks, kLengthBits);
    }
  } else {
    w.write_bit(true);
    const auto lengths = limited_huffman_lengths(freq);
    for (int l : lengths) w.write(static_cast<std::uint64_t>(l), 5);
    const auto codes = canonical_codes(lengths);
    for (auto s : symbols) w.write(codes.code[s], codes.length[s]);
  }
  Compressed out{{"block-huffman", input.size(), w.bit_count(), false},
                 frame(kCodecBlockHuffman, w)};
  out.report.lossless_verified = decompress(out.blob) == input;
  return out;
}

BitString decompress(std::span<const std::uint8_t> blob) {
  if (blob.size() < 2) throw std::runtime_error("compressed blob too short");
  if (blob[0] != kBlobVersion) {
    throw std::runtime_error("unsupported blob version " + std::to_string(blob[0]));
  }
  BitReader r(blob.subspan(2));
  switch (blob[1]) {
    case kCodecRleElias: return rle_elias_decode(r);
    case kCodecBlockHuffman: return block_huffman_decode(r);
    default: throw std::runtime_error("unknown codec id " + std::to_string(blob[1]));
  }
}

Compressed compress(const BitString& input, std::string_view codec) {
  if (codec == "rle-elias") return rle_elias_compress(input);
  if (codec == "block-huffman" || codec == "huffman") return block_huffman_compress(input, 8);
  throw std::invalid_argument("unknown codec '" + std::string(codec) + "'");
}

}  // namespace eghz
