#pragma once

#include <filesystem>
#include <string>

#include "coclust/matrix.hpp"
#include "coclust/search_index.hpp"

namespace coclust::store {

// Link store file, version 1. Line-oriented plain text:
//
//   coclust-links 1
//   counters <next_id> <next_seq>
//   <id> <registered_seq> <last_visit_seq> <visit_count> <n>:<name><n>:<desc><n>:<keywords>
//
// String fields are length-prefixed so commas (and any other byte) survive
// round-trips. Saves are atomic: temp file in the same directory, then rename.

void save_links(const std::filesystem::path& path, const search::SearchIndex& index);

search::SearchIndex load_links(const std::filesystem::path& path,
                               corpus::Stoplist stoplist = corpus::default_stopwords());

// Matrix CSV: first line `rows,cols`, then rows lines of cols comma-separated
// values printed with enough digits to round-trip exactly.
void save_matrix(const std::filesystem::path& path, const Matrix& matrix);

// Validates dimensions and that every entry is finite and nonnegative.
Matrix load_matrix(const std::filesystem::path& path);

// Writes bytes to a temp file in the target directory and renames it over
// the destination, so readers never observe a half-written file.
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace coclust::store
