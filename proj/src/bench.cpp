#include "dfo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dfo {

namespace {

struct CellResult {
  BenchmarkRecord rec;
};

BenchmarkRecord run_cell(const Problem& prob, int t, int acc, const BenchPreset& preset,
                         std::uint64_t seed) {
  if (!prob.f_best) throw std::invalid_argument("run_benchmark: " + prob.name + " has no f_best");
  const double target = *prob.f_best + std::pow(10.0, -acc);

  BenchmarkRecord rec;
  rec.problem = prob.name;
  rec.n = prob.n;
  rec.solver = solver_label(t);
  rec.acc = acc;

  const auto t0 = std::chrono::steady_clock::now();
  auto run_pass = [&](double eps, long budget, long& hit_feval, DfoTrace& trace) {
    long count = 0;
    hit_feval = -1;
    Objective wrapped = [&](const Vector& x) {
      const double v = prob.objective(x);
      ++count;
      if (hit_feval < 0 && v <= target) hit_feval = count;
      return v;
    };
    DfoConfig cfg;
    cfg.t = t;
    cfg.eps_g = eps;
    cfg.delta_stop = eps;
    cfg.max_fevals = budget;
    cfg.seed = seed;
    trace = run_dfo_tr(wrapped, prob.start, cfg);
  };

  long hit = -1;
  DfoTrace trace;
  run_pass(preset.eps_g, preset.budget, hit, trace);
  rec.pass_used = 1;
  if (preset.two_pass && hit < 0) {
    run_pass(preset.eps_tight, preset.budget, hit, trace);
    rec.pass_used = 2;
  }

  rec.success = hit >= 0;
  rec.fevals = preset.count_to_accuracy ? (hit >= 0 ? hit : trace.fevals) : trace.fevals;
  rec.final_f = trace.final_f;
  rec.final_gnorm = trace.final_gnorm;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<BenchmarkRecord> run_benchmark(const std::vector<Problem>& problems,
                                           const std::vector<int>& solver_ts, int acc,
                                           const BenchPreset& preset, std::uint64_t seed,
                                           int threads) {
  struct Cell {
    const Problem* prob;
    int t;
  };
  std::vector<Cell> cells;
  for (const Problem& p : problems)
    for (const int t : solver_ts) cells.push_back({&p, t});

  std::vector<BenchmarkRecord> records(cells.size());
  const int hw = threads > 0 ? threads
                             : std::max(1u, std::thread::hardware_concurrency());
  const int nthreads = std::min<int>(hw, static_cast<int>(cells.size()));

  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      records[i] = run_cell(*cells[i].prob, cells[i].t, acc, preset, seed);
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::sort(records.begin(), records.end(), [](const BenchmarkRecord& a, const BenchmarkRecord& b) {
    if (a.problem != b.problem) return a.problem < b.problem;
    return a.solver < b.solver;
  });
  return records;
}

ProfileTable performance_profile(const std::vector<BenchmarkRecord>& records) {
  if (records.empty()) throw std::invalid_argument("performance_profile: no records");

  std::set<std::string> problems, solvers;
  for (const auto& r : records) {
    problems.insert(r.problem);
    solvers.insert(r.solver);
  }
  // performance ratios
  std::map<std::pair<std::string, std::string>, double> ratio;
  std::set<double> taus = {1.0};
  for (const auto& pname : problems) {
    double best = kProfileFailSentinel;
    for (const auto& r : records)
      if (r.problem == pname && r.success) best = std::min(best, static_cast<double>(r.fevals));
    for (const auto& r : records) {
      if (r.problem != pname) continue;
      double rr = kProfileFailSentinel;
      if (r.success && best < kProfileFailSentinel) rr = static_cast<double>(r.fevals) / best;
      ratio[{pname, r.solver}] = rr;
      if (rr < kProfileFailSentinel) taus.insert(rr);
    }
  }

  ProfileTable table;
  table.tau.assign(taus.begin(), taus.end());
  table.solvers.assign(solvers.begin(), solvers.end());
  const double np = static_cast<double>(problems.size());
  for (const auto& s : table.solvers) {
    std::vector<double> rho(table.tau.size(), 0.0);
    for (size_t i = 0; i < table.tau.size(); ++i) {
      int count = 0;
      for (const auto& pname : problems) {
        const auto it = ratio.find({pname, s});
        if (it != ratio.end() && it->second <= table.tau[i]) ++count;
      }
      rho[i] = count / np;
    }
    table.rho[s] = std::move(rho);
  }
  return table;
}

void emit_outputs(const std::vector<BenchmarkRecord>* records, const ProfileTable* profile,
                  const std::vector<RecoveryReport>* recovery, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("emit_outputs: cannot create " + dir + ": " + ec.message());

  auto open = [&](const std::string& name) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error("emit_outputs: cannot write " + (fs::path(dir) / name).string());
    return out;
  };

  if (records) {
    std::ofstream out = open("records.csv");
    out << "problem,n,solver,acc,fevals,final_f,final_gnorm,status\n";
    for (const auto& r : *records) {
      out << csv_field(r.problem) << ',' << r.n << ',' << csv_field(r.solver) << ',' << r.acc
          << ',' << r.fevals << ',' << format_double(r.final_f) << ','
          << format_double(r.final_gnorm) << ',' << (r.success ? "OK" : "FAIL") << '\n';
    }
  }

  if (profile) {
    std::ofstream out = open("profile.csv");
    out << "tau";
    for (const auto& s : profile->solvers) out << ",rho_" << s;
    out << '\n';
    for (size_t i = 0; i < profile->tau.size(); ++i) {
      out << format_double(profile->tau[i]);
      for (const auto& s : profile->solvers) out << ',' << format_double(profile->rho.at(s)[i]);
      out << '\n';
    }
  }

  if (recovery) {
    std::ofstream out = open("recovery.csv");
    out << "trial,seed,n,h,p,success,coef_err,ef,eg,eh\n";
    for (const auto& rep : *recovery) {
      for (const auto& tr : rep.trials) {
        out << tr.trial << ',' << tr.seed << ',' << rep.n << ',' << rep.h << ',' << rep.p << ','
            << (tr.success ? 1 : 0) << ',' << format_double(tr.coef_err) << ','
            << format_double(tr.ef) << ',' << format_double(tr.eg) << ','
            << format_double(tr.eh) << '\n';
      }
    }
  }
}

std::vector<BenchmarkRecord> parse_records_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("parse_records_csv: cannot open " + path);

  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    return fields;
  };

  std::vector<BenchmarkRecord> records;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) throw std::runtime_error("parse_records_csv: malformed row in " + path);
    BenchmarkRecord r;
    r.problem = f[0];
    r.n = std::stoi(f[1]);
    r.solver = f[2];
    r.acc = std::stoi(f[3]);
    r.fevals = std::stol(f[4]);
    r.final_f = std::stod(f[5]);
    r.final_gnorm = std::stod(f[6]);
    r.success = f[7] == "OK";
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace dfo
