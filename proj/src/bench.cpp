#include "bp2d/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <thread>

namespace bp2d {

namespace {

// Small deterministic generator so instances are identical across platforms
// and standard libraries.
struct Rng {
    uint64_t s;
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int uniform(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % (hi - lo + 1));
    }
};

}  // namespace

Instance gen_instance(int cls, int n, int index) {
    Rng rng{0x2b9d3f5a17ULL ^ (uint64_t(cls) << 40) ^ (uint64_t(n) << 20) ^
            uint64_t(index)};
    Instance inst;
    auto type_item = [&](int t, int W, int H) -> std::pair<int, int> {
        switch (t) {
            case 1: return {rng.uniform(2 * W / 3, W), rng.uniform(1, H / 2)};
            case 2: return {rng.uniform(1, W / 2), rng.uniform(2 * H / 3, H)};
            case 3: return {rng.uniform(W / 2, W), rng.uniform(H / 2, H)};
            default: return {rng.uniform(1, W / 2), rng.uniform(1, H / 2)};
        }
    };
    int W = 10, H = 10;
    switch (cls) {
        case 1: W = H = 10; break;
        case 2: W = H = 30; break;
        case 3: W = H = 40; break;
        case 4: W = H = 100; break;
        case 5: W = H = 100; break;
        case 6: W = H = 300; break;
        default: W = H = 100; break;
    }
    inst.W = W;
    inst.H = H;
    for (int j = 0; j < n; ++j) {
        int w = 1, h = 1;
        if (cls <= 6) {
            int span = (cls == 1 || cls == 2) ? 10 : (cls <= 4 ? 35 : 100);
            w = rng.uniform(1, span);
            h = rng.uniform(1, span);
        } else {
            int favored = cls - 6;  // class 7 -> type 1, ..., class 10 -> type 4
            int roll = rng.uniform(1, 10);
            int t;
            if (roll <= 7) {
                t = favored;
            } else {
                // The three remaining types, 10% each.
                int others[3], k = 0;
                for (int u = 1; u <= 4; ++u)
                    if (u != favored) others[k++] = u;
                t = others[roll - 8];
            }
            auto [tw, th] = type_item(t, W, H);
            w = tw;
            h = th;
        }
        inst.items.push_back({j, w, h});
    }
    inst.m = n;
    return inst;
}

std::string gen_filename(int cls, int n, int index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "cl%02d_%03d_%02d.2bp", cls, n, index);
    return buf;
}

std::optional<InstanceTag> parse_instance_tag(const std::string& filename) {
    // Accepts cl01_020_01.2bp and similar <digits>_<digits>_<digits> shapes.
    std::vector<long long> nums;
    long long cur = -1;
    for (char c : filename) {
        if (c >= '0' && c <= '9') {
            cur = (cur < 0 ? 0 : cur) * 10 + (c - '0');
        } else {
            if (cur >= 0) nums.push_back(cur);
            cur = -1;
        }
    }
    if (cur >= 0) nums.push_back(cur);
    // Drop a trailing "2" picked up from the ".2bp" extension.
    if (filename.size() > 4 &&
        filename.compare(filename.size() - 4, 4, ".2bp") == 0 &&
        !nums.empty() && nums.back() == 2)
        nums.pop_back();
    if (nums.size() < 3) return std::nullopt;
    InstanceTag tag;
    tag.cls = static_cast<int>(nums[nums.size() - 3]);
    tag.n = static_cast<int>(nums[nums.size() - 2]);
    tag.index = static_cast<int>(nums[nums.size() - 1]);
    if (tag.cls < 1 || tag.n < 1 || tag.index < 0) return std::nullopt;
    return tag;
}

BenchReport run_bench_files(const std::vector<std::string>& files,
                            const MasterConfig& cfg, int threads,
                            DimsOrder order) {
    BenchReport report;
    report.instances.resize(files.size());
    for (size_t i = 0; i < files.size(); ++i) {
        report.instances[i].path = files[i];
        std::string name = std::filesystem::path(files[i]).filename().string();
        if (auto tag = parse_instance_tag(name)) report.instances[i].tag = *tag;
    }

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            BenchInstance& bi = report.instances[i];
            try {
                Instance inst = load_instance(bi.path, FileFormat::TwoBP, order);
                bi.pre = presolve_report(inst, cfg.eta);
                bi.sol = solve(inst, cfg);
            } catch (const std::exception& e) {
                bi.failed = true;
                bi.error = e.what();
            }
        }
    };
    int nt = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::map<std::pair<int, int>, BenchRow> groups;
    for (const BenchInstance& bi : report.instances) {
        if (bi.failed) continue;
        BenchRow& row = groups[{bi.tag.cls, bi.tag.n}];
        row.cls = bi.tag.cls;
        row.n = bi.tag.n;
        ++row.count;
        row.lc_sum += boost::rational_cast<double>(bi.pre.lc);
        row.lcp_sum += boost::rational_cast<double>(bi.pre.lc_reduced);
        row.pct_rmv_avg += bi.pre.pct_removed;
        row.l0_sum += bi.pre.l0;
        row.u0_sum += bi.pre.u0;
        row.sec0_avg += bi.pre.sec0;
        if (bi.pre.l0 == bi.pre.u0) ++row.opt0;
        row.l_sum += bi.sol.lower_bound;
        row.u_sum += bi.sol.upper_bound;
        row.opp_avg += static_cast<double>(bi.sol.stats.opp_calls);
        row.cuts_avg += static_cast<double>(bi.sol.stats.cuts_added);
        row.sec_opp_avg += bi.sol.stats.sec_opp;
        row.sec_avg += bi.sol.stats.sec_total;
        if (bi.sol.status == SolveStatus::Optimal) ++row.opt;
    }
    for (auto& [key, row] : groups) {
        row.pct_rmv_avg /= row.count;
        row.sec0_avg /= row.count;
        row.opp_avg /= row.count;
        row.cuts_avg /= row.count;
        row.sec_opp_avg /= row.count;
        row.sec_avg /= row.count;
        report.rows.push_back(row);
    }
    return report;
}

BenchReport run_bench(const std::string& dir, const MasterConfig& cfg,
                      int threads, DimsOrder order) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (parse_instance_tag(name)) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    return run_bench_files(files, cfg, threads, order);
}

std::string bench_table_text(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%5s %4s | %8s %6s %8s %6s %6s %7s %5s | %6s %6s %8s %8s "
                  "%8s %8s %4s\n",
                  "class", "n", "Lc", "%rmv", "L'c", "L0", "U0", "sec0",
                  "opt0", "L", "U", "#OPP", "#cuts", "secOPP", "sec", "opt");
    out << buf;
    BenchRow total;
    for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "%5d %4d | %8.1f %5.0f%% %8.1f %6lld %6lld %7.2f %5d | "
                      "%6lld %6lld %8.1f %8.1f %8.2f %8.2f %4d\n",
                      r.cls, r.n, r.lc_sum, r.pct_rmv_avg, r.lcp_sum, r.l0_sum,
                      r.u0_sum, r.sec0_avg, r.opt0, r.l_sum, r.u_sum, r.opp_avg,
                      r.cuts_avg, r.sec_opp_avg, r.sec_avg, r.opt);
        out << buf;
        total.count += r.count;
        total.lc_sum += r.lc_sum;
        total.lcp_sum += r.lcp_sum;
        total.l0_sum += r.l0_sum;
        total.u0_sum += r.u0_sum;
        total.opt0 += r.opt0;
        total.l_sum += r.l_sum;
        total.u_sum += r.u_sum;
        total.opt += r.opt;
    }
    std::snprintf(buf, sizeof buf,
                  "%10s | %8.1f %6s %8.1f %6lld %6lld %7s %5d | %6lld %6lld "
                  "%8s %8s %8s %8s %4d\n",
                  "overall", total.lc_sum, "", total.lcp_sum, total.l0_sum,
                  total.u0_sum, "", total.opt0, total.l_sum, total.u_sum, "",
                  "", "", "", total.opt);
    out << buf;
    return out.str();
}

std::string bench_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "file,class,n,index,Lc,pct_rmv,Lc_reduced,L0,U0,sec0,L,U,status,"
           "opp_calls,cuts,sec_opp,sec\n";
    char buf[512];
    for (const BenchInstance& bi : report.instances) {
        if (bi.failed) {
            out << bi.path << ",ERROR,,,,,,,,,,,,,,,\n";
            continue;
        }
        std::snprintf(
            buf, sizeof buf,
            "%s,%d,%d,%d,%.6f,%.2f,%.6f,%d,%d,%.3f,%d,%d,%s,%lld,%lld,%.3f,"
            "%.3f\n",
            std::filesystem::path(bi.path).filename().string().c_str(),
            bi.tag.cls, bi.tag.n, bi.tag.index,
            boost::rational_cast<double>(bi.pre.lc), bi.pre.pct_removed,
            boost::rational_cast<double>(bi.pre.lc_reduced), bi.pre.l0,
            bi.pre.u0, bi.pre.sec0, bi.sol.lower_bound, bi.sol.upper_bound,
            to_string(bi.sol.status).c_str(), bi.sol.stats.opp_calls,
            bi.sol.stats.cuts_added, bi.sol.stats.sec_opp,
            bi.sol.stats.sec_total);
        out << buf;
    }
    out << "group,class,n,count,Lc,pct_rmv,Lc_reduced,L0,U0,sec0,opt0,L,U,"
           "opp,cuts,sec_opp,sec,opt\n";
    for (const BenchRow& r : report.rows) {
        std::snprintf(buf, sizeof buf,
                      "group,%d,%d,%d,%.6f,%.2f,%.6f,%lld,%lld,%.3f,%d,%lld,"
                      "%lld,%.1f,%.1f,%.3f,%.3f,%d\n",
                      r.cls, r.n, r.count, r.lc_sum, r.pct_rmv_avg, r.lcp_sum,
                      r.l0_sum, r.u0_sum, r.sec0_avg, r.opt0, r.l_sum, r.u_sum,
                      r.opp_avg, r.cuts_avg, r.sec_opp_avg, r.sec_avg, r.opt);
        out << buf;
    }
    return out.str();
}

std::vector<BenchRow> bench_rows_from_csv(const std::string& csv) {
    std::vector<BenchRow> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("group,", 0) != 0) continue;
        if (line.find("class") != std::string::npos) continue;  // header
        BenchRow r;
        int consumed = std::sscanf(
            line.c_str(),
            "group,%d,%d,%d,%lf,%lf,%lf,%lld,%lld,%lf,%d,%lld,%lld,%lf,%lf,"
            "%lf,%lf,%d",
            &r.cls, &r.n, &r.count, &r.lc_sum, &r.pct_rmv_avg, &r.lcp_sum,
            &r.l0_sum, &r.u0_sum, &r.sec0_avg, &r.opt0, &r.l_sum, &r.u_sum,
            &r.opp_avg, &r.cuts_avg, &r.sec_opp_avg, &r.sec_avg, &r.opt);
        if (consumed == 18) rows.push_back(r);
    }
    return rows;
}

}  // namespace bp2d
