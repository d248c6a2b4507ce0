// khtool: compute Khovanov homology of link diagrams, render paper-style
// tables, compare links, and check mutant pairs.
//
// Link specs:  pd:<text> | file:<path> | torus2:<n> | fixture:<name> |
//              unknot | disjoint(a,b) | connect(a,b) | mirror(a)
// Exit codes:  0 success / equal; 1 computed but different (compare, mutate);
//              2 usage or input error; 3 internal consistency failure.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "kh/document.hpp"
#include "kh/fixtures.hpp"
#include "kh/invariants.hpp"
#include "kh/table_io.hpp"
#include "kh/tangle.hpp"

using namespace kh;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good())
        throw parse_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// split "a,b" at the top-level comma (one nesting level of parentheses)
std::pair<std::string, std::string> split_args(const std::string& s) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (s[i] == ',' && depth == 0)
            return {s.substr(0, i), s.substr(i + 1)};
    }
    throw parse_error("expected two comma-separated link specs in '" + s + "'");
}

PlanarDiagram resolve_spec(const std::string& raw) {
    std::string s = trim(raw);
    auto strip_call = [&](const char* name) -> std::string {
        std::string prefix = std::string(name) + "(";
        if (s.rfind(prefix, 0) == 0 && s.back() == ')')
            return s.substr(prefix.size(), s.size() - prefix.size() - 1);
        return "";
    };
    if (s == "unknot")
        return unknot();
    if (std::string inner = strip_call("disjoint"); !inner.empty()) {
        auto [a, b] = split_args(inner);
        return disjoint_union(resolve_spec(a), resolve_spec(b));
    }
    if (std::string inner = strip_call("connect"); !inner.empty()) {
        auto [a, b] = split_args(inner);
        return connected_sum(resolve_spec(a), resolve_spec(b));
    }
    if (std::string inner = strip_call("mirror"); !inner.empty())
        return mirror(resolve_spec(inner));
    if (s.rfind("pd:", 0) == 0)
        return parse_pd(s.substr(3));
    if (s.rfind("file:", 0) == 0)
        return parse_pd(read_file(s.substr(5)));
    if (s.rfind("torus2:", 0) == 0)
        return torus_link_2(std::stoi(s.substr(7)));
    if (s.rfind("fixture:", 0) == 0)
        return fixture(s.substr(8));
    throw parse_error("unrecognized link spec: '" + s + "'");
}

struct ToolOptions {
    std::string format = "table";
    std::string coeffs = "z";
    int cap = 16;
    std::string cache_dir;
    bool no_cache = false;
};

std::string default_cache_dir() {
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
        return std::string(xdg) + "/khtool";
    if (const char* home = std::getenv("HOME"))
        return std::string(home) + "/.cache/khtool";
    return ".khtool-cache";
}

ResultDocument compute_document(const PlanarDiagram& d, const ToolOptions& opt) {
    std::string cache_dir = opt.cache_dir.empty() ? default_cache_dir() : opt.cache_dir;
    std::string key = canonical_hash(d) + (opt.coeffs == "q" ? "-q" : "-z");
    std::string cache_path = cache_dir + "/" + key + ".json";
    if (!opt.no_cache) {
        std::ifstream in(cache_path);
        if (in.good()) {
            nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
            if (!j.is_discarded() && j.value("version", "") == version)
                return document_from_json(j);
        }
    }
    ComputeOptions copt;
    copt.cap = opt.cap;
    copt.torsion = opt.coeffs != "q";
    auto t0 = std::chrono::steady_clock::now();
    HomologyTable table = khovanov_homology(d, copt);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    ResultDocument doc = make_document(d, table, ms);
    if (!opt.no_cache) {
        std::error_code ec;
        std::filesystem::create_directories(cache_dir, ec);
        std::string tmp = cache_path + ".tmp" + std::to_string(::getpid());
        std::ofstream out(tmp);
        if (out.good()) {
            out << document_to_json(doc).dump(2) << "\n";
            out.close();
            std::filesystem::rename(tmp, cache_path, ec);
            if (ec)
                std::filesystem::remove(tmp, ec);
        }
    }
    return doc;
}

void print_document(const ResultDocument& doc, const std::string& format) {
    if (format == "json") {
        std::cout << document_to_json(doc).dump(2) << "\n";
        return;
    }
    std::cout << render_table(doc.table);
    std::cout << "Kh(t,q) = " << doc.kh_poly.str() << "\n";
    std::cout << "V(q)    = " << doc.v_poly.str("q") << "\n";
    std::cout << "W(t)    = " << doc.w_poly.str("t") << "\n";
}

int cmd_compute(const std::string& spec, const ToolOptions& opt) {
    PlanarDiagram d = resolve_spec(spec);
    ResultDocument doc = compute_document(d, opt);
    print_document(doc, opt.format);
    return 0;
}

int cmd_jones(const std::string& spec, const ToolOptions& opt) {
    PlanarDiagram d = resolve_spec(spec);
    Laurent oracle = jones_oracle(d, opt.cap);
    ToolOptions fast = opt;
    fast.coeffs = "q";
    ResultDocument doc = compute_document(d, fast);
    std::cout << "bracket oracle: " << oracle.str("q") << "\n";
    std::cout << "Kh(-1,q):       " << doc.v_poly.str("q") << "\n";
    if (oracle != doc.v_poly) {
        std::cerr << "internal consistency failure: graded Euler characteristic "
                     "disagrees with the Kauffman bracket\n";
        return 3;
    }
    std::cout << "consistent\n";
    return 0;
}

int cmd_compare(const std::string& spec_a, const std::string& spec_b, const ToolOptions& opt) {
    PlanarDiagram da = resolve_spec(spec_a);
    PlanarDiagram db = resolve_spec(spec_b);
    ResultDocument a = compute_document(da, opt);
    ResultDocument b = compute_document(db, opt);
    std::set<Bigrading> keys;
    for (auto& [ij, g] : a.table.groups)
        keys.insert(ij);
    for (auto& [ij, g] : b.table.groups)
        keys.insert(ij);
    int differing = 0;
    for (auto& ij : keys) {
        AbelianGroup ga = a.table.group(ij.first, ij.second);
        AbelianGroup gb = b.table.group(ij.first, ij.second);
        if (ga != gb) {
            ++differing;
            std::cout << "H{" << ij.first << "," << ij.second << "}: " << ga.str() << "  vs  "
                      << gb.str() << "\n";
        }
    }
    bool same_chains = a.table.chain_ranks == b.table.chain_ranks;
    std::cout << "homology " << (differing == 0 ? "identical" : "differs at " +
                                 std::to_string(differing) + " bidegree(s)")
              << "; chain ranks " << (same_chains ? "equal" : "differ") << "\n";
    std::cout << "Kh " << (a.kh_poly == b.kh_poly ? "equal" : "different") << "; V "
              << (a.v_poly == b.v_poly ? "equal" : "different") << "; W "
              << (a.w_poly == b.w_poly ? "equal" : "different") << "\n";
    return differing == 0 ? 0 : 1;
}

int cmd_mutate(const std::string& path, int rho, const ToolOptions& opt) {
    std::string text = read_file(path);
    size_t sep = text.find("\n---");
    if (sep == std::string::npos)
        throw parse_error("tangle file must hold two tangles separated by a '---' line");
    Tangle t1 = parse_tangle(text.substr(0, sep));
    Tangle t2 = parse_tangle(text.substr(text.find('\n', sep + 1) + 1));
    auto [l, lp] = mutant_pair(t1, t2, rho);
    ResultDocument a = compute_document(l, opt);
    ResultDocument b = compute_document(lp, opt);
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["closure"] = document_to_json(a);
        j["mutated_closure"] = document_to_json(b);
        j["equal_chain_ranks"] = a.table.chain_ranks == b.table.chain_ranks;
        j["equal_v"] = a.v_poly == b.v_poly;
        nlohmann::ordered_json diffs = nlohmann::ordered_json::array();
        std::set<Bigrading> keys;
        for (auto& [ij, g] : a.table.groups)
            keys.insert(ij);
        for (auto& [ij, g] : b.table.groups)
            keys.insert(ij);
        for (auto& ij : keys)
            if (a.table.group(ij.first, ij.second) != b.table.group(ij.first, ij.second))
                diffs.push_back({ij.first, ij.second});
        j["homology_differs_at"] = diffs;
        std::cout << j.dump(2) << "\n";
        return diffs.empty() ? 0 : 1;
    }
    std::cout << "closure of T1 T2:\n" << render_table(a.table) << "\n";
    std::cout << "closure of T1 rho" << rho << "(T2):\n" << render_table(b.table) << "\n";
    std::cout << "chain ranks " << (a.table.chain_ranks == b.table.chain_ranks ? "equal" : "DIFFER")
              << "; V " << (a.v_poly == b.v_poly ? "equal" : "DIFFER") << "\n";
    int differing = 0;
    std::set<Bigrading> keys;
    for (auto& [ij, g] : a.table.groups)
        keys.insert(ij);
    for (auto& [ij, g] : b.table.groups)
        keys.insert(ij);
    for (auto& ij : keys) {
        AbelianGroup ga = a.table.group(ij.first, ij.second);
        AbelianGroup gb = b.table.group(ij.first, ij.second);
        if (ga != gb) {
            ++differing;
            std::cout << "homology differs at (" << ij.first << "," << ij.second
                      << "): " << ga.str() << " vs " << gb.str() << "\n";
        }
    }
    if (differing == 0)
        std::cout << "homology identical\n";
    return differing == 0 ? 0 : 1;
}

int cmd_golden(const std::string& dir, const ToolOptions& opt) {
    for (auto& name : fixture_names()) {
        ToolOptions o = opt;
        o.no_cache = true;
        ResultDocument doc = compute_document(fixture(name), o);
        std::string path = dir + "/" + name + ".kht";
        std::ofstream out(path);
        if (!out.good())
            throw parse_error("cannot write " + path);
        out << table_to_text(doc.table);
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Khovanov homology of link diagrams"};
    app.require_subcommand(1);

    ToolOptions opt;
    std::string spec, spec_b, tangle_file;
    int rho = 1;
    std::string golden_dir = std::string(KH_SOURCE_DIR) + "/tests/golden";

    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", opt.format, "table or json")
            ->check(CLI::IsMember({"table", "json"}));
        c->add_option("--coeffs", opt.coeffs,
                      "z: full integer homology; q: ranks only, skips Smith forms")
            ->check(CLI::IsMember({"z", "q"}));
        c->add_option("--cap", opt.cap, "crossing cap (default 16)");
        c->add_option("--cache-dir", opt.cache_dir, "result cache directory");
        c->add_flag("--no-cache", opt.no_cache, "disable the result cache");
    };

    CLI::App* compute = app.add_subcommand("compute", "compute homology of a link spec");
    compute->add_option("spec", spec, "link spec")->required();
    add_common(compute);

    CLI::App* jones = app.add_subcommand("jones", "Kauffman-bracket oracle vs Kh(-1,q)");
    jones->add_option("spec", spec, "link spec")->required();
    add_common(jones);

    CLI::App* compare = app.add_subcommand("compare", "compare the homology of two links");
    compare->add_option("a", spec, "first link spec")->required();
    compare->add_option("b", spec_b, "second link spec")->required();
    add_common(compare);

    CLI::App* mut = app.add_subcommand("mutate", "mutate the second tangle of a file and compare closures");
    mut->add_option("file", tangle_file, "file with two tangles separated by ---")->required();
    mut->add_option("--rho", rho, "which involution: 1, 2 or 3")->check(CLI::Range(1, 3));
    add_common(mut);

    CLI::App* golden = app.add_subcommand("golden", "regenerate golden fixture tables");
    golden->add_option("--dir", golden_dir, "output directory");
    add_common(golden);

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed())
            return cmd_compute(spec, opt);
        if (jones->parsed())
            return cmd_jones(spec, opt);
        if (compare->parsed())
            return cmd_compare(spec, spec_b, opt);
        if (mut->parsed())
            return cmd_mutate(tangle_file, rho, opt);
        if (golden->parsed())
            return cmd_golden(golden_dir, opt);
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
