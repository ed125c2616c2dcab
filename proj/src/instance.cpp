#include "bp2d/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bp2d {

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Feasible: return "Feasible";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::TimedOut: return "TimedOut";
    }
    return "?";
}

namespace {

struct Token {
    long long value;
    int line;
};

// Tokenizes the numeric content of an instance file. Lines containing any
// non-numeric token are treated as comments and skipped whole; the TwoBP
// benchmark files occasionally carry textual headers.
std::vector<Token> numeric_tokens(const std::string& text) {
    std::vector<Token> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::vector<Token> row;
        std::string tok;
        bool comment = false;
        while (ls >> tok) {
            try {
                size_t pos = 0;
                long long v = std::stoll(tok, &pos);
                if (pos != tok.size()) { comment = true; break; }
                row.push_back({v, lineno});
            } catch (const std::exception&) {
                comment = true;
                break;
            }
        }
        if (!comment) out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError(line, msg);
}

Instance build_instance(const std::vector<Token>& toks, size_t dim_at,
                        int n, DimsOrder order) {
    Instance inst;
    const Token& tw = toks[dim_at];
    const Token& th = toks[dim_at + 1];
    long long W = order == DimsOrder::WH ? tw.value : th.value;
    long long H = order == DimsOrder::WH ? th.value : tw.value;
    if (W <= 0 || H <= 0) fail(tw.line, "non-positive bin dimension");
    inst.W = static_cast<int>(W);
    inst.H = static_cast<int>(H);
    inst.items.reserve(n);
    for (int j = 0; j < n; ++j) {
        const Token& ta = toks[dim_at + 2 + 2 * j];
        const Token& tb = toks[dim_at + 3 + 2 * j];
        long long w = order == DimsOrder::WH ? ta.value : tb.value;
        long long h = order == DimsOrder::WH ? tb.value : ta.value;
        if (w <= 0 || h <= 0)
            fail(ta.line, "item " + std::to_string(j) + " has non-positive dimension");
        if (w > inst.W)
            fail(ta.line, "item " + std::to_string(j) + " exceeds bin width");
        if (h > inst.H)
            fail(ta.line, "item " + std::to_string(j) + " exceeds bin height");
        inst.items.push_back({j, static_cast<int>(w), static_cast<int>(h)});
    }
    inst.m = n;
    return inst;
}

}  // namespace

Instance parse_instance(const std::string& text, FileFormat format,
                        DimsOrder order) {
    std::vector<Token> toks = numeric_tokens(text);
    if (toks.empty()) fail(1, "empty instance file");
    long long n_ll = toks[0].value;
    if (n_ll < 1) fail(toks[0].line, "item count must be positive");
    int n = static_cast<int>(n_ll);
    size_t need_plain = 1 + 2 + 2 * static_cast<size_t>(n);
    if (format == FileFormat::Native) {
        if (toks.size() < need_plain)
            fail(toks.back().line, "truncated instance: expected " +
                                       std::to_string(need_plain) + " numbers");
        return build_instance(toks, 1, n, order);
    }
    // TwoBP: an optional numeric class/relative-id pair may sit between n and
    // the bin line. Disambiguate by total token count.
    if (toks.size() == need_plain) return build_instance(toks, 1, n, order);
    if (toks.size() == need_plain + 2) return build_instance(toks, 3, n, order);
    if (toks.size() < need_plain)
        fail(toks.back().line, "truncated instance: expected " +
                                   std::to_string(need_plain) + " numbers");
    fail(toks[1].line, "unrecognized header layout (" +
                           std::to_string(toks.size()) + " numbers for n=" +
                           std::to_string(n) + ")");
}

Instance load_instance(const std::string& path, FileFormat format,
                       DimsOrder order) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), format, order);
}

std::string serialize_instance(const Instance& inst, FileFormat format,
                               DimsOrder order) {
    (void)format;  // both formats share the canonical layout on output
    std::ostringstream out;
    out << inst.n() << "\n";
    auto emit = [&](int a, int b) {
        if (order == DimsOrder::WH)
            out << a << " " << b << "\n";
        else
            out << b << " " << a << "\n";
    };
    emit(inst.W, inst.H);
    for (const Item& it : inst.items) emit(it.w, it.h);
    return out.str();
}

Rational continuous_bound(const Instance& inst) {
    return Rational(inst.total_item_area(), inst.bin_area());
}

std::optional<std::string> verify_solution(const Instance& inst,
                                           const Solution& sol) {
    std::vector<int> seen(inst.n(), 0);
    for (size_t b = 0; b < sol.bins.size(); ++b) {
        const BinPacking& bin = sol.bins[b];
        if (bin.items.size() != bin.coords.size())
            return "bin " + std::to_string(b) + " has " +
                   std::to_string(bin.items.size()) + " items but " +
                   std::to_string(bin.coords.size()) + " coordinates";
        for (const PlacedItem& p : bin.coords) {
            if (p.id < 0 || p.id >= inst.n())
                return "unknown item id " + std::to_string(p.id);
            if (seen[p.id]++)
                return "item " + std::to_string(p.id) + " assigned twice";
            const Item& it = inst.items[p.id];
            if (p.x < 0 || p.y < 0 || p.x + it.w > inst.W || p.y + it.h > inst.H)
                return "item " + std::to_string(p.id) + " out of bounds at (" +
                       std::to_string(p.x) + "," + std::to_string(p.y) + ")";
        }
        for (size_t a = 0; a < bin.coords.size(); ++a) {
            for (size_t c = a + 1; c < bin.coords.size(); ++c) {
                const PlacedItem& p = bin.coords[a];
                const PlacedItem& q = bin.coords[c];
                const Item& ip = inst.items[p.id];
                const Item& iq = inst.items[q.id];
                bool overlap = p.x < q.x + iq.w && q.x < p.x + ip.w &&
                               p.y < q.y + iq.h && q.y < p.y + ip.h;
                if (overlap)
                    return "overlap(" + std::to_string(p.id) + "," +
                           std::to_string(q.id) + ")";
            }
        }
    }
    for (int j = 0; j < inst.n(); ++j)
        if (!seen[j]) return "item " + std::to_string(j) + " unassigned";
    return std::nullopt;
}

std::string solution_to_json(const Solution& sol) {
    nlohmann::json j;
    j["status"] = to_string(sol.status);
    j["L"] = sol.lower_bound;
    j["U"] = sol.upper_bound;
    j["external_bound"] = sol.external_bound;
    j["bins"] = nlohmann::json::array();
    for (const BinPacking& bin : sol.bins) {
        nlohmann::json jb;
        jb["items"] = bin.items;
        jb["coords"] = nlohmann::json::array();
        for (const PlacedItem& p : bin.coords)
            jb["coords"].push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}});
        j["bins"].push_back(jb);
    }
    j["stats"] = {{"nodes", sol.stats.nodes},
                  {"opp_calls", sol.stats.opp_calls},
                  {"memo_hits", sol.stats.memo_hits},
                  {"cuts_added", sol.stats.cuts_added},
                  {"incumbent_updates", sol.stats.incumbent_updates},
                  {"sec_total", sol.stats.sec_total},
                  {"sec_opp", sol.stats.sec_opp},
                  {"sec_bounds", sol.stats.sec_bounds}};
    return j.dump(2);
}

}  // namespace bp2d
