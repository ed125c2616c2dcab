#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bp2d/instance.hpp"
#include "bp2d/master.hpp"

namespace bp2d {

/// Synthetic instance following the ten classical generation schemes
/// (classes 1-6: growing square bins with small uniform items; classes 7-10:
/// 100x100 bins with one of four item shapes dominating at 70%).
/// Deterministic in (cls, n, index).
Instance gen_instance(int cls, int n, int index);

/// cl<CC>_<NNN>_<II>.2bp
std::string gen_filename(int cls, int n, int index);

struct InstanceTag {
    int cls = 0, n = 0, index = 0;
};

/// Extracts (class, n, index) from benchmark-style file names.
std::optional<InstanceTag> parse_instance_tag(const std::string& filename);

struct BenchInstance {
    std::string path;
    InstanceTag tag;
    PreSolveInfo pre;
    Solution sol;
    bool failed = false;
    std::string error;
};

struct BenchRow {
    int cls = 0, n = 0, count = 0;
    double lc_sum = 0.0, lcp_sum = 0.0;
    double pct_rmv_avg = 0.0;
    long long l0_sum = 0, u0_sum = 0;
    double sec0_avg = 0.0;
    int opt0 = 0;
    long long l_sum = 0, u_sum = 0;
    double opp_avg = 0.0, cuts_avg = 0.0, sec_opp_avg = 0.0, sec_avg = 0.0;
    int opt = 0;
};

struct BenchReport {
    std::vector<BenchInstance> instances;  // deterministic order
    std::vector<BenchRow> rows;            // grouped by (class, n)
};

/// Solves every benchmark file in the directory (recognized by its name tag)
/// with a worker pool and aggregates per (class, n) group.
BenchReport run_bench(const std::string& dir, const MasterConfig& cfg,
                      int threads, DimsOrder order = DimsOrder::WH);

BenchReport run_bench_files(const std::vector<std::string>& files,
                            const MasterConfig& cfg, int threads,
                            DimsOrder order = DimsOrder::WH);

std::string bench_table_text(const std::vector<BenchRow>& rows);
std::string bench_csv(const BenchReport& report);

/// Re-parses the per-instance section written by bench_csv.
std::vector<BenchRow> bench_rows_from_csv(const std::string& csv);

}  // namespace bp2d
