#include "aoib/experiment.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "aoib/csv.hpp"
#include "aoib/simulate.hpp"

namespace aoib {
namespace {

struct ScalarAcc {
  std::int64_t n = 0;
  std::int64_t sum = 0;
  __int128 sumsq = 0;

  void add(std::int64_t v) {
    ++n;
    sum += v;
    sumsq += static_cast<__int128>(v) * static_cast<__int128>(v);
  }
  double mean() const {
    return n > 0 ? static_cast<double>(sum) / static_cast<double>(n) : 0.0;
  }
  double stderr_() const {
    if (n < 2) return 0.0;
    const double dn = static_cast<double>(n);
    const double ds = static_cast<double>(sum);
    double var = (static_cast<double>(sumsq) - ds * ds / dn) / (dn - 1.0);
    if (var < 0.0) var = 0.0;
    return std::sqrt(var / dn);
  }
};

struct PolicyAccumulators {
  RegretAccumulator regret;
  std::vector<std::int64_t> pull_sums;              // M x N
  ScalarAcc collisions;
  std::vector<std::int64_t> source_aoi_sums;        // M
  std::vector<std::int64_t> source_collision_sums;  // M

  PolicyAccumulators(int M, int N, std::int64_t T)
      : regret(T),
        pull_sums(static_cast<std::size_t>(M) * static_cast<std::size_t>(N), 0),
        source_aoi_sums(static_cast<std::size_t>(M), 0),
        source_collision_sums(static_cast<std::size_t>(M), 0) {}

  void fold(const RunTrace& trace, const RunTrace& oracle) {
    regret.add(trace, oracle);
    for (std::size_t i = 0; i < pull_sums.size(); ++i) pull_sums[i] += trace.pulls[i];
    collisions.add(trace.collisions);
    for (int m = 0; m < trace.M; ++m) {
      std::int64_t total = 0;
      for (std::int64_t t = 1; t <= trace.T; ++t) total += trace.aoi(m, t);
      source_aoi_sums[static_cast<std::size_t>(m)] += total;
      source_collision_sums[static_cast<std::size_t>(m)] +=
          trace.per_source_collisions[static_cast<std::size_t>(m)];
    }
  }
};

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish_csv(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

const PolicyAggregate& ExperimentResult::for_policy(PolicyKind kind) const {
  for (const PolicyAggregate& agg : policies) {
    if (agg.policy == kind) return agg;
  }
  throw std::out_of_range("policy not part of this experiment");
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
  const ProblemInstance instance = config.instance.build();
  const int M = instance.M;
  const int N = instance.N;
  const std::int64_t T = config.T;

  std::vector<PolicyAccumulators> accs;
  accs.reserve(config.policies.size());
  for (std::size_t i = 0; i < config.policies.size(); ++i) {
    accs.emplace_back(M, N, T);
  }

  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = static_cast<int>(
      std::min<std::int64_t>(threads, config.iterations));

  std::atomic<std::int64_t> next{0};
  std::mutex fold_mutex;
  std::exception_ptr failure;

  auto worker = [&]() {
    try {
      for (;;) {
        const std::int64_t it = next.fetch_add(1);
        if (it >= config.iterations) break;
        const auto iteration = static_cast<std::uint64_t>(it);

        RngEngine tape_stream = derive_stream(
            {config.master_seed, iteration, StreamRole::ChannelTape});
        const ChannelTape tape = make_tape(instance, T, tape_stream);

        const RunTrace oracle = simulate_run(
            instance, tape, PolicyKind::OracleRR,
            RunStreams{config.master_seed, iteration, PolicyKind::OracleRR},
            config.hybrid_mn);

        std::vector<RunTrace> traces;
        traces.reserve(config.policies.size());
        for (PolicyKind kind : config.policies) {
          traces.push_back(simulate_run(
              instance, tape, kind,
              RunStreams{config.master_seed, iteration, kind}, config.hybrid_mn));
        }

        std::lock_guard<std::mutex> lock(fold_mutex);
        for (std::size_t i = 0; i < traces.size(); ++i) {
          accs[i].fold(traces[i], oracle);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(fold_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.M = M;
  result.N = N;
  result.T = T;
  result.iterations = config.iterations;
  result.policies.reserve(config.policies.size());
  const double runs = static_cast<double>(config.iterations);
  for (std::size_t i = 0; i < config.policies.size(); ++i) {
    PolicyAggregate agg;
    agg.policy = config.policies[i];
    agg.regret = accs[i].regret.curve();
    agg.mean_pulls.resize(accs[i].pull_sums.size());
    for (std::size_t j = 0; j < agg.mean_pulls.size(); ++j) {
      agg.mean_pulls[j] = static_cast<double>(accs[i].pull_sums[j]) / runs;
    }
    agg.collisions.mean = accs[i].collisions.mean();
    agg.collisions.stderr_ = accs[i].collisions.stderr_();
    agg.mean_source_aoi.resize(static_cast<std::size_t>(M));
    agg.mean_source_collisions.resize(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
      agg.mean_source_aoi[static_cast<std::size_t>(m)] =
          static_cast<double>(accs[i].source_aoi_sums[static_cast<std::size_t>(m)]) /
          (runs * static_cast<double>(T));
      agg.mean_source_collisions[static_cast<std::size_t>(m)] =
          static_cast<double>(
              accs[i].source_collision_sums[static_cast<std::size_t>(m)]) /
          runs;
    }
    result.policies.push_back(std::move(agg));
  }
  return result;
}

void write_experiment_csvs(const ExperimentResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);

  {
    const fs::path path = fs::path(dir) / "regret_curve.csv";
    auto out = open_csv(path);
    out << "t,policy,mean_regret,stderr\n";
    for (const PolicyAggregate& agg : result.policies) {
      const auto name = to_string(agg.policy);
      for (std::int64_t t = 1; t <= result.T; ++t) {
        out << t << ',' << name << ','
            << format_double(agg.regret.mean[static_cast<std::size_t>(t - 1)]) << ','
            << format_double(agg.regret.stderr_[static_cast<std::size_t>(t - 1)])
            << '\n';
      }
    }
    finish_csv(out, path);
  }
  {
    const fs::path path = fs::path(dir) / "pulls.csv";
    auto out = open_csv(path);
    out << "policy,source,channel,mean_pulls\n";
    for (const PolicyAggregate& agg : result.policies) {
      const auto name = to_string(agg.policy);
      for (int m = 0; m < result.M; ++m) {
        for (int n = 0; n < result.N; ++n) {
          out << name << ',' << (m + 1) << ',' << (n + 1) << ','
              << format_double(
                     agg.mean_pulls[static_cast<std::size_t>(m) *
                                        static_cast<std::size_t>(result.N) +
                                    static_cast<std::size_t>(n)])
              << '\n';
        }
      }
    }
    finish_csv(out, path);
  }
  {
    const fs::path path = fs::path(dir) / "collisions.csv";
    auto out = open_csv(path);
    out << "policy,mean_collisions,stderr\n";
    for (const PolicyAggregate& agg : result.policies) {
      out << to_string(agg.policy) << ',' << format_double(agg.collisions.mean)
          << ',' << format_double(agg.collisions.stderr_) << '\n';
    }
    finish_csv(out, path);
  }
  {
    const fs::path path = fs::path(dir) / "summary.csv";
    auto out = open_csv(path);
    out << "policy,metric,source,channel,value\n";
    for (const PolicyAggregate& agg : result.policies) {
      const auto name = to_string(agg.policy);
      out << name << ",final_regret,,," << format_double(agg.regret.final_mean())
          << '\n';
      out << name << ",final_regret_stderr,,,"
          << format_double(agg.regret.final_stderr()) << '\n';
      out << name << ",mean_collisions,,," << format_double(agg.collisions.mean)
          << '\n';
      out << name << ",collisions_stderr,,,"
          << format_double(agg.collisions.stderr_) << '\n';
      for (int m = 0; m < result.M; ++m) {
        out << name << ",mean_source_aoi," << (m + 1) << ",,"
            << format_double(agg.mean_source_aoi[static_cast<std::size_t>(m)])
            << '\n';
        out << name << ",mean_source_collisions," << (m + 1) << ",,"
            << format_double(
                   agg.mean_source_collisions[static_cast<std::size_t>(m)])
            << '\n';
      }
      for (int m = 0; m < result.M; ++m) {
        for (int n = 0; n < result.N; ++n) {
          out << name << ",mean_pulls," << (m + 1) << ',' << (n + 1) << ','
              << format_double(
                     agg.mean_pulls[static_cast<std::size_t>(m) *
                                        static_cast<std::size_t>(result.N) +
                                    static_cast<std::size_t>(n)])
              << '\n';
        }
      }
    }
    finish_csv(out, path);
  }
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::N: return "N";
    case SweepAxis::M: return "M";
    case SweepAxis::Delta: return "delta";
  }
  return "?";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
  if (name == "N" || name == "n") return SweepAxis::N;
  if (name == "M" || name == "m") return SweepAxis::M;
  if (name == "delta" || name == "Delta") return SweepAxis::Delta;
  return std::nullopt;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepAxis axis,
                                std::span<const double> values, int threads) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<SweepRow> rows;
  for (double value : values) {
    ExperimentConfig config = base;
    switch (axis) {
      case SweepAxis::N: {
        if (!config.instance.is_generator()) {
          throw ConfigError("N sweep needs the (mu1, delta) instance form");
        }
        config.instance.N = static_cast<int>(value);
        if (static_cast<double>(config.instance.N) != value) {
          throw ConfigError("N sweep values must be integers");
        }
        break;
      }
      case SweepAxis::M: {
        config.instance.M = static_cast<int>(value);
        if (static_cast<double>(config.instance.M) != value) {
          throw ConfigError("M sweep values must be integers");
        }
        break;
      }
      case SweepAxis::Delta: {
        if (!config.instance.is_generator()) {
          throw ConfigError("delta sweep needs the (mu1, delta) instance form");
        }
        config.instance.delta = value;
        break;
      }
    }
    ExperimentResult result = run_experiment(config, threads);
    for (const PolicyAggregate& agg : result.policies) {
      SweepRow row;
      row.axis = axis;
      row.value = value;
      row.policy = agg.policy;
      row.final_regret = agg.regret.final_mean();
      row.stderr_ = agg.regret.final_stderr();
      row.final_regret_per_m = row.final_regret / static_cast<double>(result.M);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);

  const fs::path path = fs::path(dir) / "sweep.csv";
  auto out = open_csv(path);
  out << "axis,value,policy,final_regret,stderr,final_regret_per_M\n";
  for (const SweepRow& row : rows) {
    out << to_string(row.axis) << ',' << format_double(row.value) << ','
        << to_string(row.policy) << ',' << format_double(row.final_regret) << ','
        << format_double(row.stderr_) << ','
        << format_double(row.final_regret_per_m) << '\n';
  }
  finish_csv(out, path);
}

bool VerificationReport::all_passed() const {
  for (const VerificationCheck& check : checks) {
    if (!check.passed) return false;
  }
  return true;
}

VerificationReport run_verification(const ProblemInstance& instance,
                                    std::int64_t T, int samples,
                                    const std::string& schedules_csv_path) {
  VerificationReport report;

  if (instance.M <= 4) {
    EnumerationResult enumeration = enumerate_symmetric_policies(instance);
    const double best = enumeration.schedules.front().total_aoi;
    const double rr = enumeration.round_robin_total;
    report.checks.push_back(
        {"round_robin_minimal_among_symmetric", rr <= best + 1e-9,
         "round-robin " + format_double(rr) + " vs best " + format_double(best) +
             " over " + format_int(static_cast<std::int64_t>(enumeration.schedules.size())) +
             " schedules"});

    bool majorization_ok = true;
    for (const EvaluatedSchedule& entry : enumeration.schedules) {
      if (!entry.uniform_windows && entry.total_aoi < rr - 1e-9) {
        majorization_ok = false;
        break;
      }
    }
    report.checks.push_back(
        {"majorizing_schedules_no_better", majorization_ok,
         "schedules with clustered channel use never beat round-robin"});

    if (!schedules_csv_path.empty()) {
      std::ofstream out(schedules_csv_path, std::ios::binary);
      if (!out) throw IoError("cannot open " + schedules_csv_path + " for writing");
      out << "schedule,total_expected_aoi,is_round_robin\n";
      for (const EvaluatedSchedule& entry : enumeration.schedules) {
        std::string encoded;
        for (int col = 0; col < entry.schedule.period; ++col) {
          if (col > 0) encoded += '|';
          for (int m = 0; m < entry.schedule.M; ++m) {
            if (m > 0) encoded += ' ';
            encoded += format_int(entry.schedule.cell(m, col) + 1);
          }
        }
        out << encoded << ',' << format_double(entry.total_aoi) << ','
            << (entry.is_round_robin ? 1 : 0) << '\n';
      }
      out.flush();
      if (!out) throw IoError("failed writing " + schedules_csv_path);
    }
  }

  {
    RrIidComparison cmp = compare_rr_iid(instance);
    report.checks.push_back(
        {"round_robin_no_worse_than_iid", cmp.rr_no_worse,
         "round-robin " + format_double(cmp.rr_total) + " vs IID " +
             format_double(cmp.iid_total)});
  }
  {
    IidOptimumCheck check = check_iid_optimum(instance, samples);
    report.checks.push_back(
        {"uniform_iid_weights_optimal", check.worst_delta >= -1e-9,
         "worst improvement over uniform " + format_double(check.worst_delta) +
             " across " + format_int(samples) + " samples"});
  }
  if (instance.M >= 2 && T > instance.N) {
    BoundTerms bound = dlf_regret_bound(instance, T);
    report.checks.push_back(
        {"dlf_regret_bound_evaluates", bound.total_bound > 0.0,
         "c=" + format_double(bound.c) + " total=" + format_double(bound.total_bound) +
             " at T=" + format_int(T)});
  }
  return report;
}

}  // namespace aoib
