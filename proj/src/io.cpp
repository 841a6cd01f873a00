#include "qapsat/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qapsat {
namespace {

constexpr int kFormatVersion = 1;

void append_matrix(std::string& out, const SquareMatrix& m) {
  for (int32_t i = 0; i < m.n(); ++i) {
    for (int32_t j = 0; j < m.n(); ++j) {
      if (j > 0) out += ' ';
      out += std::to_string(m.at(i, j));
    }
    out += '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open for writing: " + path.string());
  f << content;
  f.flush();
  if (!f) throw ValidationError("write failed: " + path.string());
}

nlohmann::ordered_json clause_to_json(const ClauseSpec& c, bool with_submatrix) {
  nlohmann::ordered_json j;
  auto& vars = j["variables"] = nlohmann::ordered_json::array();
  for (int32_t v : c.variables) vars.push_back(v + 1);  // 1-based externally
  if (with_submatrix) {
    auto& sub = j["submatrix"] = nlohmann::ordered_json::array();
    for (int32_t i = 0; i < c.k(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (int32_t jj = 0; jj < c.k(); ++jj) row.push_back(c.submatrix.at(i, jj));
      sub.push_back(row);
    }
  }
  return j;
}

ClauseSpec clause_from_json(const nlohmann::json& j, int32_t k, const std::string& where) {
  ClauseSpec c;
  if (!j.contains("variables") || !j["variables"].is_array())
    throw ValidationError(where + ": clause is missing a 'variables' array");
  for (const auto& v : j["variables"]) {
    int64_t x = v.get<int64_t>();
    c.variables.push_back(static_cast<int32_t>(x - 1));  // to 0-based
  }
  if (j.contains("submatrix")) {
    const auto& sub = j["submatrix"];
    std::vector<int32_t> entries;
    for (const auto& row : sub)
      for (const auto& v : row) entries.push_back(v.get<int32_t>());
    c.submatrix = SquareMatrix(static_cast<int32_t>(sub.size()), std::move(entries));
  } else {
    // Distance clauses carry the canonical all-ones off-diagonal submatrix.
    std::vector<int32_t> entries(static_cast<size_t>(k) * static_cast<size_t>(k), 1);
    for (int32_t i = 0; i < k; ++i) entries[static_cast<size_t>(i) * static_cast<size_t>(k + 1)] = 0;
    c.submatrix = SquareMatrix(k, std::move(entries));
  }
  return c;
}

struct Lines {
  std::vector<std::string> text;
  std::filesystem::path path;

  [[noreturn]] void fail(size_t idx, const std::string& msg) const {
    throw ValidationError(path.string() + ":" + std::to_string(idx + 1) + ": " + msg);
  }
};

SquareMatrix parse_matrix(const Lines& lines, size_t& idx, int32_t n, const char* label) {
  std::vector<int32_t> entries;
  entries.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int32_t i = 0; i < n; ++i, ++idx) {
    if (idx >= lines.text.size()) lines.fail(lines.text.size() - 1, std::string("unexpected end of file inside matrix ") + label);
    std::istringstream ss(lines.text[idx]);
    int64_t v = 0;
    int32_t count = 0;
    while (ss >> v) {
      if (v < 0) lines.fail(idx, "negative entry " + std::to_string(v));
      if (v > kMaxEntry) lines.fail(idx, "entry " + std::to_string(v) + " exceeds the supported maximum");
      entries.push_back(static_cast<int32_t>(v));
      ++count;
    }
    if (!ss.eof()) lines.fail(idx, std::string("malformed integer in matrix ") + label);
    if (count != n)
      lines.fail(idx, "row has " + std::to_string(count) + " entries, expected " + std::to_string(n));
    if (entries[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(i)] != 0)
      lines.fail(idx, std::string("non-zero diagonal entry in matrix ") + label);
  }
  return SquareMatrix(n, std::move(entries));
}

}  // namespace

InstanceFilePair instance_paths(const std::filesystem::path& data_path) {
  std::filesystem::path meta = data_path;
  meta.replace_extension();
  meta += ".meta.json";
  return {data_path, meta};
}

void write_matrix_file(const QapInstance& inst, const std::filesystem::path& path) {
  std::string out = "# qapsat instance: flow matrix A then distance matrix B\n";
  out += std::to_string(inst.n());
  out += "\n\n";
  append_matrix(out, inst.flow());
  out += '\n';
  append_matrix(out, inst.dist());
  write_file(path, out);
}

void write_instance(const QapSatInstance& qs, const InstanceFilePair& pair) {
  validate_qapsat(qs);
  write_matrix_file(qs.instance, pair.data_path);

  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["seed"] = qs.seed;
  j["n"] = qs.n();
  j["k"] = qs.k();
  j["m"] = qs.m();
  j["m1"] = qs.m1();
  j["global_lower_bound"] = qs.global_lower_bound;
  auto& ac = j["a_clauses"] = nlohmann::ordered_json::array();
  for (const ClauseSpec& c : qs.a_clauses) ac.push_back(clause_to_json(c, true));
  auto& bc = j["b_clauses"] = nlohmann::ordered_json::array();
  for (const ClauseSpec& c : qs.b_clauses) bc.push_back(clause_to_json(c, false));
  write_file(pair.meta_path, j.dump(2) + "\n");
}

std::variant<QapInstance, QapSatInstance> read_instance(const InstanceFilePair& pair) {
  std::ifstream f(pair.data_path, std::ios::binary);
  if (!f) throw ValidationError("cannot open instance file: " + pair.data_path.string());

  Lines lines;
  lines.path = pair.data_path;
  for (std::string line; std::getline(f, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.text.push_back(line);
  }

  size_t idx = 0;
  auto skip_blank_and_comments = [&] {
    while (idx < lines.text.size() &&
           (lines.text[idx].empty() || lines.text[idx].front() == '#'))
      ++idx;
  };

  skip_blank_and_comments();
  if (idx >= lines.text.size()) throw ValidationError(pair.data_path.string() + ": empty instance file");
  int64_t n64 = 0;
  {
    std::istringstream ss(lines.text[idx]);
    if (!(ss >> n64) || n64 <= 0) lines.fail(idx, "expected the problem dimension n");
    std::string rest;
    if (ss >> rest) lines.fail(idx, "trailing content after dimension");
  }
  ++idx;
  const int32_t n = static_cast<int32_t>(n64);

  skip_blank_and_comments();
  SquareMatrix a = parse_matrix(lines, idx, n, "A");
  skip_blank_and_comments();
  SquareMatrix b = parse_matrix(lines, idx, n, "B");
  skip_blank_and_comments();
  if (idx < lines.text.size()) lines.fail(idx, "unexpected trailing content");

  QapInstance inst(std::move(a), std::move(b));

  if (!std::filesystem::exists(pair.meta_path)) return inst;

  std::ifstream mf(pair.meta_path, std::ios::binary);
  if (!mf) throw ValidationError("cannot open sidecar: " + pair.meta_path.string());
  nlohmann::json j;
  try {
    mf >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(pair.meta_path.string() + ": invalid JSON: " + e.what());
  }

  const std::string where = pair.meta_path.string();
  auto require = [&](const char* key) {
    if (!j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
    return j[key];
  };
  if (require("format_version").get<int>() != kFormatVersion)
    throw ValidationError(where + ": unsupported format_version");

  QapSatInstance qs;
  qs.instance = std::move(inst);
  qs.seed = require("seed").get<uint64_t>();
  const int32_t meta_n = require("n").get<int32_t>();
  if (meta_n != n)
    throw ValidationError(where + ": sidecar n=" + std::to_string(meta_n) +
                          " does not match matrix file n=" + std::to_string(n));
  const int32_t k = require("k").get<int32_t>();
  qs.global_lower_bound = require("global_lower_bound").get<int64_t>();
  for (const auto& cj : require("a_clauses")) qs.a_clauses.push_back(clause_from_json(cj, k, where));
  for (const auto& cj : require("b_clauses")) qs.b_clauses.push_back(clause_from_json(cj, k, where));
  if (qs.m() != require("m").get<int32_t>())
    throw ValidationError(where + ": field m does not match the a_clauses list");
  if (qs.m1() != require("m1").get<int32_t>())
    throw ValidationError(where + ": field m1 does not match the b_clauses list");

  try {
    validate_qapsat(qs);
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": sidecar inconsistent with matrices: " + e.what());
  }
  return qs;
}

const QapInstance& instance_of(const std::variant<QapInstance, QapSatInstance>& v) {
  if (std::holds_alternative<QapInstance>(v)) return std::get<QapInstance>(v);
  return std::get<QapSatInstance>(v).instance;
}

}  // namespace qapsat
