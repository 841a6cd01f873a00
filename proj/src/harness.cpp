#include "qapsat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qapsat/gen.hpp"

namespace qapsat {
namespace {

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("QAPSAT_LOG");
    if (!env) return 0;
    return std::atoi(env);
  }();
  return level;
}

std::vector<int32_t> parse_values(const nlohmann::json& j, const std::string& field) {
  std::vector<int32_t> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<int32_t>());
  } else if (j.is_object()) {
    const int32_t from = j.at("from").get<int32_t>();
    const int32_t to = j.at("to").get<int32_t>();
    const int32_t step = j.value("step", 1);
    if (step <= 0) throw ValidationError("plan field '" + field + "': step must be positive");
    for (int32_t v = from; v <= to; v += step) out.push_back(v);
  } else {
    out.push_back(j.get<int32_t>());
  }
  if (out.empty()) throw ValidationError("plan field '" + field + "' is empty");
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open plan file: " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  }
  ExperimentPlan plan;
  plan.k = j.value("k", 3);
  plan.n_values = parse_values(j.at("n"), "n");
  plan.m1_values = parse_values(j.at("m1"), "m1");
  plan.m_values = parse_values(j.at("m"), "m");
  plan.instances_per_cell = j.value("instances_per_cell", 1);
  plan.master_seed = j.value("master_seed", uint64_t{0});
  plan.solver = j.value("solver", std::string("bnb"));
  if (j.contains("rots")) {
    const auto& r = j["rots"];
    plan.rots_enabled = r.value("enabled", true);
    plan.rots_runs = r.value("runs", 30);
    plan.rots_max_iterations = r.value("max_iterations", 1000);
  }
  if (j.contains("node_cap") && !j["node_cap"].is_null())
    plan.node_cap = j["node_cap"].get<uint64_t>();
  plan.enumerate_cap = j.value("enumerate_cap", kEnumerateCap);
  plan.timing = j.value("timing", false);
  validate_plan(plan);
  return plan;
}

void validate_plan(const ExperimentPlan& plan) {
  if (plan.n_values.empty() || plan.m1_values.empty() || plan.m_values.empty())
    throw ValidationError("plan grid is empty");
  if (plan.instances_per_cell < 1) throw ValidationError("instances_per_cell must be >= 1");
  if (plan.solver != "bnb" && plan.solver != "enum")
    throw ValidationError("plan solver must be 'bnb' or 'enum'");
  if (plan.solver == "enum")
    for (int32_t n : plan.n_values)
      if (n > plan.enumerate_cap)
        throw ValidationError("plan uses solver 'enum' with n above the enumeration cap");
  if (plan.rots_enabled && (plan.rots_runs < 1 || plan.rots_max_iterations < 1))
    throw ValidationError("rots settings must be positive");
}

std::string ledger_header() {
  return "n,k,m,m1,replicate,seed,minimum,global_lower_bound,satisfied,proven,bnb_nodes,"
         "bnb_lap_calls,bnb_seconds,rots_success_rate,rots_mean_iterations,error";
}

std::string to_csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << r.n << ',' << r.k << ',' << r.m << ',' << r.m1 << ',' << r.replicate << ',' << r.seed
      << ',' << r.minimum << ',' << r.global_lower_bound << ',' << (r.satisfied ? 1 : 0) << ','
      << (r.proven ? 1 : 0) << ',' << r.bnb_nodes << ',' << r.bnb_lap_calls << ',';
  if (r.bnb_seconds) out << format_double(*r.bnb_seconds);
  out << ',';
  if (r.rots_success_rate) out << format_double(*r.rots_success_rate);
  out << ',';
  if (r.rots_mean_iterations) out << format_double(*r.rots_mean_iterations);
  out << ',';
  std::string err = r.error;
  for (char& ch : err)
    if (ch == ',' || ch == '\n') ch = ';';
  out << err;
  return out.str();
}

RunRecord parse_ledger_row(const std::string& line) {
  const std::vector<std::string> f = split_csv(line);
  if (f.size() != 16) throw ValidationError("ledger row has " + std::to_string(f.size()) +
                                            " fields, expected 16: " + line);
  RunRecord r;
  r.n = std::stoi(f[0]);
  r.k = std::stoi(f[1]);
  r.m = std::stoi(f[2]);
  r.m1 = std::stoi(f[3]);
  r.replicate = std::stoi(f[4]);
  r.seed = std::stoull(f[5]);
  r.minimum = std::stoll(f[6]);
  r.global_lower_bound = std::stoll(f[7]);
  r.satisfied = f[8] == "1";
  r.proven = f[9] == "1";
  r.bnb_nodes = std::stoull(f[10]);
  r.bnb_lap_calls = std::stoull(f[11]);
  if (!f[12].empty()) r.bnb_seconds = std::stod(f[12]);
  if (!f[13].empty()) r.rots_success_rate = std::stod(f[13]);
  if (!f[14].empty()) r.rots_mean_iterations = std::stod(f[14]);
  r.error = f[15];
  return r;
}

std::vector<RunRecord> read_ledger(const std::filesystem::path& path) {
  std::vector<RunRecord> out;
  std::ifstream f(path);
  if (!f) return out;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line != ledger_header())
        throw ValidationError(path.string() + ": unexpected ledger header");
      continue;
    }
    out.push_back(parse_ledger_row(line));
  }
  return out;
}

RunRecord run_one(const ExperimentPlan& plan, int32_t n, int32_t m1, int32_t m, int32_t replicate) {
  RunRecord rec;
  rec.n = n;
  rec.k = plan.k;
  rec.m = m;
  rec.m1 = m1;
  rec.replicate = replicate;
  rec.seed = instance_seed(plan.master_seed, n, plan.k, m1, m, replicate);
  try {
    GeneratorConfig cfg{n, plan.k, m, m1, rec.seed};
    const QapSatInstance qs = generate(cfg);
    rec.global_lower_bound = qs.global_lower_bound;

    SolveOutcome out;
    if (plan.solver == "enum") {
      out = enumerate_min(qs.instance, plan.enumerate_cap);
    } else {
      BnbOptions opt;
      opt.node_cap = plan.node_cap;
      out = branch_and_bound(qs.instance, opt);
    }
    rec.minimum = out.minimum;
    rec.proven = out.proven;
    rec.bnb_nodes = out.nodes_expanded;
    rec.bnb_lap_calls = out.lap_calls;
    if (plan.timing) rec.bnb_seconds = out.elapsed_seconds;
    rec.satisfied = out.proven && is_satisfied(qs, out.minimum);

    // ROTS needs a certified optimum; skip when the cap stopped the proof.
    if (plan.rots_enabled && out.proven) {
      RotsConfig rc;
      rc.runs = plan.rots_runs;
      rc.max_iterations = plan.rots_max_iterations;
      rc.seed = derive_seed(rec.seed, {0x524F5453});  // "ROTS"
      const RotsAggregate agg = rots_aggregate(qs.instance, out.minimum, rc);
      rec.rots_success_rate = agg.success_rate;
      rec.rots_mean_iterations = agg.mean_iterations;
    }
  } catch (const Error& e) {
    rec.error = e.what();
    rec.proven = false;
  }
  return rec;
}

std::vector<RunRecord> run_experiment(const ExperimentPlan& plan,
                                      const std::filesystem::path& ledger_path, int32_t workers) {
  validate_plan(plan);
  if (workers < 1) workers = 1;

  std::vector<RunRecord> existing = read_ledger(ledger_path);
  std::set<std::tuple<int32_t, int32_t, int32_t, int32_t>> have;
  for (const RunRecord& r : existing) have.insert(r.key());

  struct Task {
    int32_t n, m1, m, replicate;
  };
  std::vector<Task> tasks;
  for (int32_t n : plan.n_values)
    for (int32_t m1 : plan.m1_values)
      for (int32_t m : plan.m_values)
        for (int32_t rep = 0; rep < plan.instances_per_cell; ++rep)
          if (!have.count({n, m1, m, rep})) tasks.push_back({n, m1, m, rep});

  const bool have_file =
      std::filesystem::exists(ledger_path) && std::filesystem::file_size(ledger_path) > 0;
  std::ofstream out(ledger_path, have_file ? std::ios::app : std::ios::trunc);
  if (!out) throw ValidationError("cannot open ledger for writing: " + ledger_path.string());
  if (!have_file) out << ledger_header() << '\n';

  std::mutex write_mutex;
  std::atomic<size_t> next{0};
  std::atomic<size_t> completed{0};

  auto worker = [&] {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      const Task& t = tasks[idx];
      RunRecord rec = run_one(plan, t.n, t.m1, t.m, t.replicate);
      {
        std::lock_guard<std::mutex> lock(write_mutex);
        out << to_csv_row(rec) << '\n';
        out.flush();
        existing.push_back(std::move(rec));
      }
      const size_t done = completed.fetch_add(1) + 1;
      if (log_level() >= 1 && (done % 200 == 0 || done == tasks.size()))
        std::cerr << "qapsat: experiment " << done << "/" << tasks.size() << " instances\n";
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int32_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  out.close();

  // Canonical order: the ledger is append-only while running, and rewritten
  // sorted by key once complete so that reruns and different worker counts
  // produce identical bytes.
  std::sort(existing.begin(), existing.end(),
            [](const RunRecord& x, const RunRecord& y) { return x.key() < y.key(); });
  const std::filesystem::path tmp = ledger_path.string() + ".tmp";
  {
    std::ofstream sorted(tmp, std::ios::trunc | std::ios::binary);
    if (!sorted) throw ValidationError("cannot write " + tmp.string());
    sorted << ledger_header() << '\n';
    for (const RunRecord& r : existing) sorted << to_csv_row(r) << '\n';
  }
  std::filesystem::rename(tmp, ledger_path);
  return existing;
}

}  // namespace qapsat
