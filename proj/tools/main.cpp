#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bp2d/bench.hpp"
#include "bp2d/dff.hpp"
#include "bp2d/instance.hpp"
#include "bp2d/master.hpp"
#include "bp2d/opp.hpp"
#include "bp2d/preprocess.hpp"

namespace {

using namespace bp2d;

FileFormat format_for(const std::string& path, const std::string& forced) {
    if (forced == "native") return FileFormat::Native;
    if (forced == "2bp") return FileFormat::TwoBP;
    return std::filesystem::path(path).extension() == ".2bp"
               ? FileFormat::TwoBP
               : FileFormat::Native;
}

void add_solver_flags(CLI::App* cmd, MasterConfig& cfg) {
    cmd->add_option("--time-limit", cfg.time_limit, "seconds per solve");
    cmd->add_option("--alpha", cfg.alpha, "DFF inequality pairs");
    cmd->add_option("--beta", cfg.beta, "conservative-scale inequality pairs");
    cmd->add_option("--gamma", cfg.gamma, "extra random MIS passes");
    cmd->add_option("--tilde-n", cfg.tilde_n,
                    "skip checks of this size after an infeasible bin");
    cmd->add_option("--eta", cfg.eta, "conservative-scale iterations");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--log", cfg.log_path, "JSON-lines solve log");
}

int run_solve(const std::string& path, MasterConfig cfg, int given_u0,
              const std::string& fmt, DimsOrder order,
              const std::string& json_out) {
    if (given_u0 > 0) cfg.given_u0 = given_u0;
    Instance inst = load_instance(path, format_for(path, fmt), order);
    Solution sol = solve(inst, cfg);
    std::cout << "status " << to_string(sol.status) << "\n"
              << "L " << sol.lower_bound << "\n"
              << "U " << sol.upper_bound << "\n"
              << "bins " << sol.bins.size() << "\n"
              << "nodes " << sol.stats.nodes << "\n"
              << "opp_calls " << sol.stats.opp_calls << "\n"
              << "cuts " << sol.stats.cuts_added << "\n"
              << "sec_bounds " << sol.stats.sec_bounds << "\n"
              << "sec_opp " << sol.stats.sec_opp << "\n"
              << "sec " << sol.stats.sec_total << "\n";
    for (const BinPacking& bin : sol.bins) {
        std::cout << "bin";
        for (const PlacedItem& p : bin.coords)
            std::cout << " " << p.id << "@(" << p.x << "," << p.y << ")";
        std::cout << "\n";
    }
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << solution_to_json(sol) << "\n";
    }
    return 0;
}

int run_bound(const std::string& path, const std::string& fmt,
              DimsOrder order, int eta) {
    Instance inst = load_instance(path, format_for(path, fmt), order);
    PreSolveInfo info = presolve_report(inst, eta);
    std::cout << "Lc " << boost::rational_cast<double>(info.lc) << "\n"
              << "L'c " << boost::rational_cast<double>(info.lc_reduced)
              << "\n"
              << "L2_CCM " << info.l2ccm << "\n"
              << "L_BKRS " << info.lbkrs << "\n"
              << "L0 " << info.l0 << "\n"
              << "U0 " << info.u0 << "\n"
              << "sec0 " << info.sec0 << "\n";
    return 0;
}

int run_preprocess(const std::string& path, const std::string& fmt,
                   DimsOrder order) {
    Instance inst = load_instance(path, format_for(path, fmt), order);
    FixResult fix = fix_and_remove(inst);
    Instance red = apply_global_reduction(fix.reduced);
    double rmv = 100.0 * (inst.n() - fix.reduced.n()) / std::max(1, inst.n());
    std::cout << "n " << inst.n() << "\n"
              << "removed " << inst.n() - fix.reduced.n() << " (" << rmv
              << "%)\n"
              << "fixed_bins " << fix.fixed_bins() << "\n"
              << "W* " << red.W << "\nH* " << red.H << "\n";
    std::cout << "enlarged";
    for (const auto& [id, wh] : fix.record.enlarged)
        std::cout << " " << id << ":" << wh.first << "x" << wh.second;
    std::cout << "\n";
    if (red.n() > 0)
        std::cout << "L'c "
                  << boost::rational_cast<double>(continuous_bound(red)) +
                         fix.fixed_bins()
                  << "\n";
    else
        std::cout << "L'c " << fix.fixed_bins() << "\n";
    return 0;
}

int run_opp(const std::string& path, double time_limit) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    int W, H;
    if (!(in >> W >> H)) throw std::runtime_error("bad bin line");
    std::vector<Item> items;
    int w, h, id = 0;
    while (in >> w >> h) items.push_back({id++, w, h});
    OppResult res = opp_check(items, W, H, time_limit);
    std::cout << (res.verdict == OppVerdict::Feasible    ? "Feasible"
                  : res.verdict == OppVerdict::Infeasible ? "Infeasible"
                                                          : "Timeout")
              << "\n";
    for (const PlacedItem& p : res.placement)
        std::cout << p.id << " " << p.x << " " << p.y << "\n";
    return res.verdict == OppVerdict::Timeout ? 3 : 0;
}

int run_gen(const std::string& dir, std::vector<int> classes,
            std::vector<int> sizes, int per) {
    std::filesystem::create_directories(dir);
    for (int cls : classes)
        for (int n : sizes)
            for (int i = 1; i <= per; ++i) {
                Instance inst = gen_instance(cls, n, i);
                std::ofstream out(std::filesystem::path(dir) /
                                  gen_filename(cls, n, i));
                out << serialize_instance(inst, FileFormat::TwoBP);
            }
    return 0;
}

int run_bench_cmd(const std::string& dir, MasterConfig cfg, int threads,
                  DimsOrder order, const std::string& csv_out, int given_mode) {
    (void)given_mode;
    BenchReport report = run_bench(dir, cfg, threads, order);
    std::cout << bench_table_text(report.rows);
    for (const BenchInstance& bi : report.instances)
        if (bi.failed)
            std::cerr << "warning: " << bi.path << ": " << bi.error << "\n";
    if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        out << bench_csv(report);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact two-dimensional bin packing solver"};
    app.require_subcommand(1);

    std::string path, fmt = "auto", dims = "wh", json_out, csv_out;
    int given_u0 = 0, threads = 1, eta = 8, per = 10;
    double opp_limit = 3600.0;
    std::vector<int> classes{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<int> sizes{20, 40, 60, 80, 100};
    MasterConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", fmt, "native|2bp|auto");
        cmd->add_option("--dims-order", dims, "wh|hw");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance");
    solve_cmd->add_option("file", path)->required();
    add_common(solve_cmd);
    add_solver_flags(solve_cmd, cfg);
    solve_cmd->add_option("--u0", given_u0, "externally known upper bound");
    solve_cmd->add_option("--json", json_out, "write the solution as JSON");

    CLI::App* bound_cmd = app.add_subcommand("bound", "lower bounds only");
    bound_cmd->add_option("file", path)->required();
    add_common(bound_cmd);
    bound_cmd->add_option("--eta", eta);

    CLI::App* pre_cmd = app.add_subcommand("preprocess", "reduction report");
    pre_cmd->add_option("file", path)->required();
    add_common(pre_cmd);

    CLI::App* opp_cmd =
        app.add_subcommand("opp", "single-bin feasibility check");
    opp_cmd->add_option("file", path)->required();
    opp_cmd->add_option("--time-limit", opp_limit);

    CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark a directory");
    bench_cmd->add_option("dir", path)->required();
    add_common(bench_cmd);
    add_solver_flags(bench_cmd, cfg);
    bench_cmd->add_option("--threads", threads);
    bench_cmd->add_option("--csv", csv_out, "per-instance CSV output");

    CLI::App* gen_cmd =
        app.add_subcommand("gen", "generate a synthetic benchmark suite");
    gen_cmd->add_option("dir", path)->required();
    gen_cmd->add_option("--classes", classes);
    gen_cmd->add_option("--sizes", sizes);
    gen_cmd->add_option("--per", per, "instances per (class, n) group");

    CLI11_PARSE(app, argc, argv);

    DimsOrder order = dims == "hw" ? DimsOrder::HW : DimsOrder::WH;
    try {
        if (solve_cmd->parsed())
            return run_solve(path, cfg, given_u0, fmt, order, json_out);
        if (bound_cmd->parsed()) return run_bound(path, fmt, order, eta);
        if (pre_cmd->parsed()) return run_preprocess(path, fmt, order);
        if (opp_cmd->parsed()) return run_opp(path, opp_limit);
        if (bench_cmd->parsed())
            return run_bench_cmd(path, cfg, threads, order, csv_out, 0);
        if (gen_cmd->parsed()) return run_gen(path, classes, sizes, per);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
