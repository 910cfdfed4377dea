#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <string>

#include "mmdnov/error.hpp"
#include "mmdnov/tensor_io.hpp"

namespace mmdnov {
namespace {

constexpr std::size_t kPreambleSize = 10;  // magic(6) + version(2) + header_len(2)
constexpr unsigned char kMagic[] = {0x93, 'N', 'U', 'M', 'P', 'Y'};

struct NpyHeader {
  std::string descr;
  bool fortran_order = false;
  std::vector<std::size_t> shape;
  bool has_descr = false;
  bool has_order = false;
  bool has_shape = false;
};

// Parses the Python-literal dict of a v1.0 header. Offsets reported in
// errors are absolute file offsets.
class HeaderParser {
 public:
  HeaderParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  NpyHeader parse() {
    NpyHeader h;
    skip_ws();
    expect('{');
    while (true) {
      skip_ws();
      if (peek() == '}') {
        ++pos_;
        break;
      }
      const std::size_t key_at = pos_;
      std::string key = parse_string();
      skip_ws();
      expect(':');
      skip_ws();
      if (key == "descr") {
        h.descr = parse_string();
        h.has_descr = true;
      } else if (key == "fortran_order") {
        h.fortran_order = parse_bool();
        h.has_order = true;
      } else if (key == "shape") {
        h.shape = parse_tuple();
        h.has_shape = true;
      } else {
        fail("unexpected header key '" + key + "'", key_at);
      }
      skip_ws();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != '}') {
        fail("expected ',' or '}' in header dict", pos_);
      }
    }
    skip_ws();
    if (pos_ != text_.size()) fail("trailing bytes after header dict", pos_);
    if (!h.has_descr || !h.has_order || !h.has_shape) {
      fail("header dict must contain descr, fortran_order and shape", 0);
    }
    return h;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw FormatError("npy: " + what, base_ + at);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string parse_string() {
    const char quote = peek();
    if (quote != '\'' && quote != '"') fail("expected quoted string", pos_);
    const std::size_t start = ++pos_;
    while (pos_ < text_.size() && text_[pos_] != quote) ++pos_;
    if (pos_ >= text_.size()) fail("unterminated string", start);
    std::string out(text_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  bool parse_bool() {
    if (text_.substr(pos_, 4) == "True") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "False") {
      pos_ += 5;
      return false;
    }
    fail("expected True or False", pos_);
  }

  std::vector<std::size_t> parse_tuple() {
    expect('(');
    std::vector<std::size_t> dims;
    while (true) {
      skip_ws();
      if (peek() == ')') {
        ++pos_;
        return dims;
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected shape integer", pos_);
      std::size_t value = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        value = value * 10 + static_cast<std::size_t>(peek() - '0');
        ++pos_;
      }
      dims.push_back(value);
      skip_ws();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != ')') {
        fail("expected ',' or ')' in shape", pos_);
      }
    }
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

template <typename UInt>
UInt load_le(const std::byte* p) {
  UInt v;
  std::memcpy(&v, p, sizeof v);
  if constexpr (std::endian::native == std::endian::big) {
    UInt r = 0;
    for (std::size_t i = 0; i < sizeof v; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xFF);
    v = r;
  }
  return v;
}

template <typename UInt>
void store_le(UInt v, std::byte* p) {
  for (std::size_t i = 0; i < sizeof v; ++i) p[i] = static_cast<std::byte>((v >> (8 * i)) & 0xFF);
}

}  // namespace

EmbeddingMatrix parse_npy(std::span<const std::byte> bytes) {
  if (bytes.size() < kPreambleSize) throw FormatError("npy: truncated preamble", bytes.size());
  for (std::size_t i = 0; i < sizeof kMagic; ++i) {
    if (bytes[i] != static_cast<std::byte>(kMagic[i])) throw FormatError("npy: bad magic", i);
  }
  if (bytes[6] != std::byte{1} || bytes[7] != std::byte{0}) {
    throw FormatError("npy: only format version 1.0 is supported", 6);
  }
  const std::size_t header_len = load_le<std::uint16_t>(bytes.data() + 8);
  const std::size_t data_start = kPreambleSize + header_len;
  if (bytes.size() < data_start) throw FormatError("npy: truncated header", bytes.size());
  std::string_view header(reinterpret_cast<const char*>(bytes.data()) + kPreambleSize, header_len);
  if (header.empty() || header.back() != '\n') {
    throw FormatError("npy: header must end with a newline", data_start - 1);
  }
  header.remove_suffix(1);

  const NpyHeader h = HeaderParser(header, kPreambleSize).parse();
  std::size_t item_size = 0;
  if (h.descr == "<f8") {
    item_size = 8;
  } else if (h.descr == "<f4") {
    item_size = 4;
  } else {
    throw FormatError("npy: unsupported descr '" + h.descr + "' (need '<f4' or '<f8')", kPreambleSize);
  }
  if (h.fortran_order) throw FormatError("npy: fortran_order arrays are not supported", kPreambleSize);
  if (h.shape.size() != 2) {
    throw ShapeError("npy: expected a rank-2 array, got rank " + std::to_string(h.shape.size()));
  }
  const std::size_t rows = h.shape[0];
  const std::size_t cols = h.shape[1];
  if (cols == 0) throw ShapeError("npy: embedding dim must be >= 1");

  const std::size_t count = rows * cols;
  const std::size_t payload = bytes.size() - data_start;
  if (payload < count * item_size) {
    throw FormatError("npy: payload truncated, expected " + std::to_string(count * item_size) +
                          " bytes",
                      bytes.size());
  }
  if (payload > count * item_size) {
    throw FormatError("npy: unexpected trailing bytes after payload", data_start + count * item_size);
  }

  std::vector<double> values(count);
  const std::byte* p = bytes.data() + data_start;
  if (item_size == 8) {
    for (std::size_t k = 0; k < count; ++k) {
      values[k] = std::bit_cast<double>(load_le<std::uint64_t>(p + 8 * k));
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      values[k] = static_cast<double>(std::bit_cast<float>(load_le<std::uint32_t>(p + 4 * k)));
    }
  }
  return EmbeddingMatrix(rows, cols, std::move(values));
}

std::vector<std::byte> encode_npy(const EmbeddingMatrix& m) {
  std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (" +
                     std::to_string(m.rows()) + ", " + std::to_string(m.dim()) + "), }";
  // Pad with spaces so that preamble + header + '\n' is a multiple of 64.
  const std::size_t unpadded = kPreambleSize + dict.size() + 1;
  dict.append((64 - unpadded % 64) % 64, ' ');
  dict.push_back('\n');

  std::vector<std::byte> out(kPreambleSize + dict.size() + 8 * m.values().size());
  for (std::size_t i = 0; i < sizeof kMagic; ++i) out[i] = static_cast<std::byte>(kMagic[i]);
  out[6] = std::byte{1};
  out[7] = std::byte{0};
  store_le(static_cast<std::uint16_t>(dict.size()), out.data() + 8);
  std::memcpy(out.data() + kPreambleSize, dict.data(), dict.size());
  std::byte* p = out.data() + kPreambleSize + dict.size();
  for (double v : m.values()) {
    store_le(std::bit_cast<std::uint64_t>(v), p);
    p += 8;
  }
  return out;
}

}  // namespace mmdnov
