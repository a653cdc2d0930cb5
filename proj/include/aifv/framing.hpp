// Copyright 2026 The AIFV Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aifv/code_tree.hpp"
#include "aifv/codec.hpp"
#include "aifv/distribution.hpp"
#include "aifv/error.hpp"
#include "aifv/rational.hpp"
#include "aifv/serialize.hpp"
#include "aifv/validate.hpp"

namespace aifv {

using Bytes = std::vector<uint8_t>;

// Elias delta: gamma code of the bit length N, then the N-1 low bits of n.
inline Codeword elias_delta_encode(uint64_t n) {
  if (n == 0) fail(ErrorCode::kInvalidPrefix, "Elias delta is defined for n >= 1");
  int N = 64 - __builtin_clzll(n);
  int LL = 32 - __builtin_clz(static_cast<unsigned>(N));
  Codeword out;
  for (int i = 0; i < LL - 1; ++i) out.push_back(0);
  for (int i = LL - 1; i >= 0; --i) out.push_back(static_cast<uint8_t>(N >> i & 1));
  for (int i = N - 2; i >= 0; --i) out.push_back(static_cast<uint8_t>(n >> i & 1));
  return out;
}

inline uint64_t elias_delta_decode(const Codeword& bits, size_t& pos) {
  auto next = [&]() -> int {
    if (pos >= bits.size()) fail(ErrorCode::kInvalidPrefix, "Elias delta code runs past the input");
    int b = bits[pos++];
    if (b > 1) fail(ErrorCode::kInvalidPrefix, "non-binary symbol in Elias delta code");
    return b;
  };
  int zeros = 0;
  while (next() == 0) {
    if (++zeros > 6) fail(ErrorCode::kInvalidPrefix, "Elias delta length prefix too long");
  }
  uint64_t N = 1;
  for (int i = 0; i < zeros; ++i) N = N << 1 | static_cast<uint64_t>(next());
  if (N > 64) fail(ErrorCode::kInvalidPrefix, "Elias delta value exceeds 64 bits");
  uint64_t n = 1;
  for (uint64_t i = 1; i < N; ++i) n = n << 1 | static_cast<uint64_t>(next());
  return n;
}

inline uint64_t elias_delta_decode(const Codeword& bits) {
  size_t pos = 0;
  uint64_t n = elias_delta_decode(bits, pos);
  if (pos != bits.size()) fail(ErrorCode::kInvalidPrefix, "trailing bits after Elias delta code");
  return n;
}

// K = 2: MSB-first bits, last byte zero-padded. K >= 3: one ASCII digit
// (0-9, a-z) per symbol.
inline Bytes pack_symbols(const Codeword& stream, int K) {
  if (K < 2 || K > 36) fail(ErrorCode::kBadArity, "packing supports 2 <= K <= 36");
  for (auto s : stream) {
    if (s >= K) fail(ErrorCode::kSymbolOutOfRange, "code symbol " + std::to_string(s) + " >= K");
  }
  Bytes out;
  if (K == 2) {
    out.assign((stream.size() + 7) / 8, 0);
    for (size_t i = 0; i < stream.size(); ++i) {
      if (stream[i]) out[i / 8] |= static_cast<uint8_t>(0x80u >> (i % 8));
    }
  } else {
    for (auto s : stream) out.push_back(static_cast<uint8_t>(code_symbol_char(s)));
  }
  return out;
}

inline size_t packed_size(size_t symbols, int K) { return K == 2 ? (symbols + 7) / 8 : symbols; }

inline Codeword unpack_symbols(const Bytes& bytes, int K, size_t count) {
  if (K < 2 || K > 36) fail(ErrorCode::kBadArity, "packing supports 2 <= K <= 36");
  if (bytes.size() < packed_size(count, K)) fail(ErrorCode::kTruncatedStream, "packed payload is short");
  Codeword out;
  out.reserve(count);
  if (K == 2) {
    for (size_t i = 0; i < count; ++i) out.push_back(static_cast<uint8_t>(bytes[i / 8] >> (7 - i % 8) & 1));
    return out;
  }
  for (size_t i = 0; i < count; ++i) {
    const uint8_t c = bytes[i];
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
    if (v < 0 || v >= K) fail(ErrorCode::kSymbolOutOfRange, "payload byte is not a code symbol below K");
    out.push_back(static_cast<uint8_t>(v));
  }
  return out;
}

enum class Framing : uint8_t { kLength = 0, kEof = 1 };

inline constexpr uint8_t kContainerVersion = 1;
inline const std::string kEofLabel = "<EOF>";

// 2^-16.
inline Rational default_eof_probability() { return inv_pow(2, 16); }

// User distribution scaled by 1 - p_eof with the end marker appended last.
inline SourceDistribution with_eof(const SourceDistribution& dist, const Rational& p_eof = default_eof_probability()) {
  if (dist.index_of(kEofLabel)) fail(ErrorCode::kParse, "label " + kEofLabel + " is reserved");
  return extend_distribution(dist, kEofLabel, p_eof);
}

inline uint8_t family_byte(const Family& f) {
  switch (f.kind) {
    case Family::Kind::kBinary: return 0;
    case Family::Kind::kTernary: return 1;
    case Family::Kind::kKaryTwoTree: return 2;
    case Family::Kind::kKary: return 3;
  }
  return 0xff;
}

struct ContainerContents {
  AifvCode code;
  Framing framing = Framing::kLength;
  std::vector<int> message;  // symbol indices, end marker removed
  Codeword payload;
};

namespace detail {

inline void put_le(Bytes& out, uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

class ByteReader {
 public:
  explicit ByteReader(const Bytes& b) : b_(b) {}
  const uint8_t* take(size_t n) {
    if (b_.size() - pos_ < n) fail(ErrorCode::kTruncatedStream, "container ends early");
    const uint8_t* p = b_.data() + pos_;
    pos_ += n;
    return p;
  }
  uint64_t le(int bytes) {
    const uint8_t* p = take(static_cast<size_t>(bytes));
    uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = v << 8 | p[i];
    return v;
  }
  size_t remaining() const { return b_.size() - pos_; }
  size_t pos() const { return pos_; }

 private:
  const Bytes& b_;
  size_t pos_ = 0;
};

inline int eof_symbol(const AifvCode& code) {
  auto idx = code.symbol_index(kEofLabel);
  if (!idx) fail(ErrorCode::kAlphabetMismatch, "EOF framing needs a code built with the " + kEofLabel + " symbol");
  const int t = *idx;
  for (const auto& tree : code.trees()) {
    if (tree.node(tree.symbol_node(t)).kind != NodeKind::kLeaf) {
      fail(ErrorCode::kInvalidTree, "the end marker must sit on a leaf in every tree");
    }
  }
  return t;
}

}  // namespace detail

// "AIFV" | version | K | family | framing | u32 code-JSON length | JSON |
// [length framing: delta(n+1), byte padded] | u64 payload symbol count |
// packed payload. Integers little-endian.
inline Bytes write_container(const AifvCode& code, const std::vector<int>& message, Framing framing) {
  require_valid(code);
  std::vector<int> msg = message;
  if (framing == Framing::kEof) {
    int eof = detail::eof_symbol(code);
    for (int t : msg) {
      if (t == eof) fail(ErrorCode::kUnknownSymbol, "message contains the end marker");
    }
    msg.push_back(eof);
  }
  Codeword payload = encode(code, msg).stream;
  const std::string json = serialize_code(code);

  Bytes out{'A', 'I', 'F', 'V', kContainerVersion, static_cast<uint8_t>(code.arity()), family_byte(code.family()),
            static_cast<uint8_t>(framing)};
  detail::put_le(out, json.size(), 4);
  out.insert(out.end(), json.begin(), json.end());
  if (framing == Framing::kLength) {
    auto delta = pack_symbols(elias_delta_encode(static_cast<uint64_t>(message.size()) + 1), 2);
    out.insert(out.end(), delta.begin(), delta.end());
  }
  detail::put_le(out, payload.size(), 8);
  auto packed = pack_symbols(payload, code.arity());
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

inline Bytes write_container(const AifvCode& code, const std::vector<std::string>& message, Framing framing) {
  return write_container(code, symbols_from_labels(code, message), framing);
}

inline ContainerContents read_container(const Bytes& bytes) {
  detail::ByteReader r(bytes);
  if (bytes.size() < 4 || bytes[0] != 'A' || bytes[1] != 'I' || bytes[2] != 'F' || bytes[3] != 'V') {
    fail(ErrorCode::kBadMagic, "not an AIFV container");
  }
  r.take(4);
  const uint8_t* h = r.take(4);
  if (h[0] != kContainerVersion) fail(ErrorCode::kVersionMismatch, "container version " + std::to_string(h[0]));
  if (h[3] > 1) fail(ErrorCode::kCorruptStream, "unknown framing mode");
  ContainerContents c;
  c.framing = static_cast<Framing>(h[3]);
  const uint64_t json_len = r.le(4);
  const uint8_t* js = r.take(json_len);
  try {
    c.code = parse_code(std::string(reinterpret_cast<const char*>(js), json_len));
  } catch (const Error& e) {
    fail(ErrorCode::kCorruptStream, std::string("bad code section: ") + e.what());
  }
  if (c.code.arity() != h[1] || family_byte(c.code.family()) != h[2]) {
    fail(ErrorCode::kCorruptStream, "header disagrees with the code section");
  }
  require_valid(c.code);
  uint64_t n = 0;
  if (c.framing == Framing::kLength) {
    // The delta code is self-delimiting; read bits until it completes.
    Codeword bits;
    size_t pos = 0;
    while (true) {
      const uint8_t* b = r.take(1);
      for (int i = 7; i >= 0; --i) bits.push_back(static_cast<uint8_t>(*b >> i & 1));
      try {
        pos = 0;
        n = elias_delta_decode(bits, pos);
        break;
      } catch (const Error& e) {
        if (pos < bits.size()) fail(ErrorCode::kCorruptStream, e.what());
        if (bits.size() > 128) fail(ErrorCode::kCorruptStream, "length field too long");
      }
    }
    for (size_t i = pos; i < bits.size(); ++i) {
      if (bits[i]) fail(ErrorCode::kCorruptStream, "nonzero padding after the length field");
    }
    --n;
  }
  const uint64_t count = r.le(8);
  const size_t need = packed_size(count, c.code.arity());
  if (r.remaining() < need) fail(ErrorCode::kTruncatedStream, "payload shorter than its symbol count");
  if (r.remaining() > need) fail(ErrorCode::kCorruptStream, "bytes after the payload");
  Bytes packed(bytes.begin() + static_cast<long>(r.pos()), bytes.end());
  c.payload = unpack_symbols(packed, c.code.arity(), count);
  if (c.code.arity() == 2 && count % 8) {
    if (packed.back() & (0xffu >> (count % 8))) fail(ErrorCode::kCorruptStream, "nonzero padding bits");
  }
  Decoder dec(c.code);
  if (c.framing == Framing::kLength) {
    c.message = dec.decode(c.payload, n);
  } else {
    c.message = dec.decode_until(c.payload, detail::eof_symbol(c.code));
  }
  return c;
}

}  // namespace aifv
