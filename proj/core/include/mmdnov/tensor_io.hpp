#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmdnov/matrix.hpp"

namespace mmdnov {

enum class MatrixFormat { kNpy, kCsv };

/// "npy" / "csv". Throws ConfigError for anything else.
MatrixFormat parse_matrix_format(std::string_view name);
std::string_view to_string(MatrixFormat format) noexcept;

/// Infers the format from the file extension (.npy or .csv, any case).
MatrixFormat format_from_extension(const std::filesystem::path& path);

// NPY subset: version 1.0, C order, descr '<f4' or '<f8', rank 2. '<f4'
// payloads are widened to double exactly. Writing always emits '<f8' with
// the header padded so the payload starts on a 64-byte boundary.
EmbeddingMatrix parse_npy(std::span<const std::byte> bytes);
std::vector<std::byte> encode_npy(const EmbeddingMatrix& m);

// CSV dialect: comma separator, '.' decimal point, no header row, optional
// trailing newline. Values are written in shortest round-trip form. A file
// with no rows carries no dim and is rejected on read.
EmbeddingMatrix parse_csv(std::string_view text);
std::string encode_csv(const EmbeddingMatrix& m);

EmbeddingMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format);
void write_matrix(const EmbeddingMatrix& m, const std::filesystem::path& path, MatrixFormat format);

struct CorpusOptions {
  /// When set, labels with more rows are subsampled without replacement.
  std::optional<std::size_t> row_cap;
  std::uint64_t seed = 0;
};

/// Reads a manifest of `<label>\t<path>` lines. Relative paths resolve
/// against the manifest's directory; blank lines and lines starting with
/// '#' are skipped. The format of each matrix is taken from its extension.
LabeledCorpus load_corpus(const std::filesystem::path& manifest, const CorpusOptions& options = {});

}  // namespace mmdnov
