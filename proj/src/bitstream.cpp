#include "entropic_ghz/bitstream.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <future>
#include <stdexcept>

#include "entropic_ghz/codecs.hpp"
#include "entropic_ghz/rng.hpp"

namespace eghz {

BitString::BitString(std::size_t length) : length_(length), bytes_((length + 7) / 8, 0) {}

BitString BitString::from_string(std::string_view bits) {
  BitString out;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may only contain 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

BitString BitString::from_bytes(std::vector<std::uint8_t> payload, std::size_t length) {
  if (payload.size() != (length + 7) / 8) {
    throw std::invalid_argument("payload size does not match the bit length");
  }
  if (length % 8 != 0 && (payload.back() & (0xFFu >> (length % 8))) != 0) {
    throw std::invalid_argument("pad bits of the final byte must be zero");
  }
  BitString out;
  out.length_ = length;
  out.bytes_ = std::move(payload);
  return out;
}

void BitString::set(std::size_t i, bool bit) {
  if (i >= length_) throw std::out_of_range("bit index out of range");
  const auto mask = static_cast<std::uint8_t>(0x80u >> (i & 7));
  if (bit) {
    bytes_[i >> 3] |= mask;
  } else {
    bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
  }
}

void BitString::push_back(bool bit) {
  if (length_ % 8 == 0) bytes_.push_back(0);
  ++length_;
  set(length_ - 1, bit);
}

std::size_t BitString::count_ones() const {
  std::size_t ones = 0;
  for (auto b : bytes_) ones += static_cast<std::size_t>(std::popcount(b));
  return ones;
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(length_);
  for (std::size_t i = 0; i < length_; ++i) out.push_back(get(i) ? '1' : '0');
  return out;
}

BitString xor_strings(const BitString& x, const BitString& y, const BitString& z) {
  if (x.size() != y.size() || x.size() != z.size()) {
    throw std::invalid_argument("xor_strings needs strings of equal length");
  }
  std::vector<std::uint8_t> out(x.bytes().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(x.bytes()[i] ^ y.bytes()[i] ^ z.bytes()[i]);
  }
  return BitString::from_bytes(std::move(out), x.size());
}

void write_bitstring_file(const std::filesystem::path& path, const BitString& bits) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  std::uint64_t length = bits.size();
  char header[8];
  for (int i = 0; i < 8; ++i) header[i] = static_cast<char>((length >> (8 * i)) & 0xFFu);
  out.write(header, 8);
  out.write(reinterpret_cast<const char*>(bits.bytes().data()),
            static_cast<std::streamsize>(bits.bytes().size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

BitString read_bitstring_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  unsigned char header[8];
  if (!in.read(reinterpret_cast<char*>(header), 8)) {
    throw std::runtime_error(path.string() + ": truncated length header");
  }
  std::uint64_t length = 0;
  for (int i = 7; i >= 0; --i) length = (length << 8) | header[i];
  std::vector<std::uint8_t> payload((length + 7) / 8);
  if (!in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()))) {
    throw std::runtime_error(path.string() + ": truncated payload");
  }
  if (in.peek() != std::ifstream::traits_type::eof()) {
    throw std::runtime_error(path.string() + ": trailing bytes after payload");
  }
  return BitString::from_bytes(std::move(payload), length);
}

BitString RoundSamples::xor_string(std::size_t context) const {
  const auto& c = bits.at(context);
  return xor_strings(c[0], c[1], c[2]);
}

RoundSamples sample_rounds(const DensityMatrix& state, const TripartiteSettings& settings,
                           std::size_t n, std::uint64_t seed, int jobs) {
  if (n < 1) throw std::invalid_argument("need at least one round");
  if (state.n_qubits() != 3) throw std::invalid_argument("sampling needs a 3-qubit state");

  RoundSamples out;
  out.seed = seed;
  out.n = n;

  auto sample_context = [&](std::size_t k) {
    const auto dist = joint_outcome_distribution(state, settings.context(kTripartiteContexts[k]));
    std::array<double, 8> cdf{};
    double acc = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      acc += dist.prob(i);
      cdf[i] = acc;
    }
    // The last outcome with nonzero weight absorbs any rounding shortfall.
    std::size_t last = 7;
    while (last > 0 && dist.prob(last) == 0.0) --last;

    Rng rng(seed, k);
    std::array<BitString, 3> strings{BitString(n), BitString(n), BitString(n)};
    for (std::size_t round = 0; round < n; ++round) {
      const double u = rng.uniform();
      std::size_t idx = 0;
      while (idx < last && !(u < cdf[idx])) ++idx;
      // With index bit 1 <-> outcome -1, the index bits are the party bits.
      for (int party = 0; party < 3; ++party) {
        strings[static_cast<std::size_t>(party)].set(round, (idx >> (2 - party)) & 1u);
      }
    }
    out.bits[k] = std::move(strings);
  };

  if (jobs > 1) {
    std::vector<std::future<void>> futures;
    for (std::size_t k = 0; k < 4; ++k) futures.push_back(std::async(std::launch::async, sample_context, k));
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t k = 0; k < 4; ++k) sample_context(k);
  }
  return out;
}

CompressionInequality compression_inequality_report(const RoundSamples& samples,
                                                    std::string_view codec) {
  CompressionInequality out;
  std::array<double, 4> sizes{};
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto c = compress(samples.xor_string(k), codec);
    out.strings[k] = c.report;
    sizes[k] = static_cast<double>(c.report.output_bits);
    labels.push_back("C(x" + kTripartiteContexts[k].label() + ")");
  }
  out.report = InequalityReport::make(sizes[0], {sizes[1], sizes[2], sizes[3]}, std::move(labels));
  out.log_bound = samples.n > 1 ? 64.0 * std::log2(static_cast<double>(samples.n)) : 0.0;
  out.side_condition_met = true;
  for (std::size_t i = 0; i < 3; ++i) {
    out.rhs_logarithmic[i] = sizes[i + 1] <= out.log_bound;
    out.side_condition_met = out.side_condition_met && out.rhs_logarithmic[i];
  }
  return out;
}

}  // namespace eghz
