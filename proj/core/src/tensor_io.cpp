#include "mmdnov/tensor_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

#include "mmdnov/error.hpp"
#include "mmdnov/rng.hpp"

namespace mmdnov {
namespace {

std::vector<std::byte> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  std::vector<std::byte> out(raw.size());
  std::transform(raw.begin(), raw.end(), out.begin(), [](char c) { return static_cast<std::byte>(c); });
  return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits on '\n', dropping a '\r' before it and one trailing empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "npy") return MatrixFormat::kNpy;
  if (name == "csv") return MatrixFormat::kCsv;
  throw ConfigError("unknown matrix format '" + std::string(name) + "' (expected npy or csv)");
}

std::string_view to_string(MatrixFormat format) noexcept {
  return format == MatrixFormat::kNpy ? "npy" : "csv";
}

MatrixFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".npy") return MatrixFormat::kNpy;
  if (ext == ".csv") return MatrixFormat::kCsv;
  throw ConfigError("cannot infer matrix format from '" + path.string() + "' (use .npy or .csv)");
}

EmbeddingMatrix parse_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw FormatError("csv: no rows, dim cannot be inferred", 1);

  std::size_t dim = 0;
  std::vector<double> values;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::string_view line = lines[li];
    if (trim(line).empty()) throw FormatError("csv: empty line", line_no);

    std::size_t fields = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field =
          trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      double v = 0.0;
      const char* first = field.data();
      const char* last = field.data() + field.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec == std::errc::result_out_of_range) {
        v = std::numeric_limits<double>::infinity();  // rejected below as non-finite
      } else if (ec != std::errc() || ptr != last || field.empty()) {
        throw FormatError("csv: cannot parse '" + std::string(field) + "' as a number", line_no);
      }
      if (!std::isfinite(v)) throw ValidationError("csv: non-finite value", li, fields);
      values.push_back(v);
      ++fields;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (li == 0) {
      dim = fields;
    } else if (fields != dim) {
      throw FormatError("csv: row has " + std::to_string(fields) + " fields, expected " +
                            std::to_string(dim),
                        line_no);
    }
  }
  return EmbeddingMatrix(lines.size(), dim, std::move(values));
}

std::string encode_csv(const EmbeddingMatrix& m) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out.push_back(',');
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, r[j]);
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

EmbeddingMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  const auto bytes = read_file(path);
  if (format == MatrixFormat::kNpy) return parse_npy(bytes);
  return parse_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void write_matrix(const EmbeddingMatrix& m, const std::filesystem::path& path, MatrixFormat format) {
  if (format == MatrixFormat::kNpy) {
    write_file(path, encode_npy(m));
  } else {
    const std::string text = encode_csv(m);
    write_file(path, std::as_bytes(std::span(text.data(), text.size())));
  }
}

LabeledCorpus load_corpus(const std::filesystem::path& manifest, const CorpusOptions& options) {
  const auto bytes = read_file(manifest);
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  const std::filesystem::path base = manifest.parent_path();

  LabeledCorpus corpus;
  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view line = lines[li];
    if (trim(line).empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw FormatError("manifest: expected '<label>\\t<path>'", li + 1);
    }
    std::string label(line.substr(0, tab));
    std::filesystem::path path(std::string(trim(line.substr(tab + 1))));
    if (label.empty() || path.empty()) throw FormatError("manifest: empty label or path", li + 1);
    if (path.is_relative()) path = base / path;
    if (!std::filesystem::exists(path)) {
      throw IoError("manifest: file for label '" + label + "' not found: " + path.string());
    }

    EmbeddingMatrix m = read_matrix(path, format_from_extension(path));
    if (options.row_cap && m.rows() > *options.row_cap) {
      Rng rng(derive_seed(options.seed, {corpus.size()}));
      const auto rows = sample_without_replacement(m.rows(), *options.row_cap, rng);
      m = m.select_rows(rows);
    }
    corpus.add(std::move(label), std::move(m));
  }
  return corpus;
}

}  // namespace mmdnov
