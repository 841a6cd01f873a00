#pragma once
// Instance files. The matrix file is a QAPLIB-style text layout:
//
//   # qapsat instance: flow matrix A then distance matrix B
//   <n>
//   <blank>
//   n rows of A, space-separated decimal integers
//   <blank>
//   n rows of B
//
// LF line endings, single-space separators, 1-based indices on all external
// surfaces. The optional sidecar is a JSON document (format_version 1)
// carrying the generative clause structure; when present it is the authority
// on matrix order and is fully re-validated against the matrices on load.

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "qapsat/core.hpp"

namespace qapsat {

struct InstanceFilePair {
  std::filesystem::path data_path;
  std::filesystem::path meta_path;
};

// Conventional sidecar path for a matrix file: "X.dat" -> "X.meta.json".
InstanceFilePair instance_paths(const std::filesystem::path& data_path);

void write_instance(const QapSatInstance& qs, const InstanceFilePair& pair);

// Matrix file only (no sidecar), for bare instances.
void write_matrix_file(const QapInstance& inst, const std::filesystem::path& path);

// Returns a QapSatInstance when the sidecar exists, otherwise a bare
// QapInstance. Malformed matrices and sidecar inconsistencies throw
// ValidationError naming the offending file and line.
std::variant<QapInstance, QapSatInstance> read_instance(const InstanceFilePair& pair);

// Convenience for callers that only need the matrices.
const QapInstance& instance_of(const std::variant<QapInstance, QapSatInstance>& v);

}  // namespace qapsat
