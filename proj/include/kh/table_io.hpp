#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "kh/invariants.hpp"

namespace kh {

// Cell text in the published style: "a[b]/c" with a the free rank, b the
// number of Z/2 factors (omitted when zero), c the chain rank.  Torsion other
// than Z/2 never occurred in our runs; if it does, the factors are listed.
inline std::string cell_text(const HomologyTable& t, int i, int j) {
    long long c = t.chain_rank(i, j);
    if (c == 0)
        return "";
    AbelianGroup g = t.group(i, j);
    std::ostringstream os;
    os << g.free_rank;
    bool all_two = true;
    for (auto& f : g.torsion)
        if (f != 2)
            all_two = false;
    if (!g.torsion.empty()) {
        if (all_two) {
            os << "[" << g.torsion.size() << "]";
        } else {
            os << "[";
            for (size_t k = 0; k < g.torsion.size(); ++k)
                os << (k ? "," : "") << g.torsion[k];
            os << "]";
        }
    }
    os << "/" << c;
    return os.str();
}

// Paper-style grid: columns are homological degrees, rows quantum degrees
// (descending); differential ranks sit on the arrows between columns.
inline std::string render_table(const HomologyTable& t) {
    if (t.chain_ranks.empty())
        return "(empty table)\n";
    int imin = 1 << 30, imax = -(1 << 30), jmin = 1 << 30, jmax = -(1 << 30);
    for (auto& [ij, c] : t.chain_ranks) {
        imin = std::min(imin, ij.first);
        imax = std::max(imax, ij.first);
        jmin = std::min(jmin, ij.second);
        jmax = std::max(jmax, ij.second);
    }
    std::vector<int> is, js;
    for (int i = imin; i <= imax; ++i)
        is.push_back(i);
    for (int j = jmax; j >= jmin; --j) {
        bool live = false;
        for (int i = imin; i <= imax && !live; ++i)
            live = t.chain_rank(i, j) > 0;
        if (live)
            js.push_back(j);
    }

    auto arrow_text = [&](int i, int j) -> std::string {
        if (t.chain_rank(i, j) == 0 || t.chain_rank(i + 1, j) == 0)
            return "";
        return " -" + std::to_string(t.diff_rank(i, j)) + "->";
    };

    std::vector<size_t> cell_w(is.size(), 1), gap_w(is.size(), 0);
    for (size_t k = 0; k < is.size(); ++k) {
        cell_w[k] = std::max(cell_w[k], std::to_string(is[k]).size());
        for (int j : js) {
            cell_w[k] = std::max(cell_w[k], cell_text(t, is[k], j).size());
            if (k + 1 < is.size())
                gap_w[k] = std::max(gap_w[k], arrow_text(is[k], j).size());
        }
    }

    std::ostringstream os;
    size_t label_w = std::max(std::to_string(jmin).size(), std::to_string(jmax).size()) + 4;
    os << std::setw(static_cast<int>(label_w)) << "j \\ i";
    for (size_t k = 0; k < is.size(); ++k) {
        os << "  " << std::setw(static_cast<int>(cell_w[k])) << is[k];
        if (k + 1 < is.size())
            os << std::string(gap_w[k], ' ');
    }
    os << "\n";
    for (int j : js) {
        os << std::setw(static_cast<int>(label_w)) << j;
        for (size_t k = 0; k < is.size(); ++k) {
            os << "  " << std::setw(static_cast<int>(cell_w[k])) << cell_text(t, is[k], j);
            if (k + 1 < is.size()) {
                std::string a = arrow_text(is[k], j);
                os << a << std::string(gap_w[k] - a.size(), ' ');
            }
        }
        os << "\n";
    }
    return os.str();
}

// Stable line-based serialization used for golden files.
inline std::string table_to_text(const HomologyTable& t) {
    std::ostringstream os;
    os << "# khovanov homology table v1\n";
    for (auto& [ij, c] : t.chain_ranks)
        os << "chain " << ij.first << " " << ij.second << " " << c << "\n";
    for (auto& [ij, g] : t.groups) {
        os << "group " << ij.first << " " << ij.second << " " << g.free_rank << " ";
        if (g.torsion.empty()) {
            os << "-";
        } else {
            for (size_t k = 0; k < g.torsion.size(); ++k)
                os << (k ? "," : "") << g.torsion[k];
        }
        os << "\n";
    }
    for (auto& [ij, r] : t.diff_ranks)
        os << "dout " << ij.first << " " << ij.second << " " << r << "\n";
    return os.str();
}

inline HomologyTable table_from_text(const std::string& text) {
    HomologyTable t;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "chain") {
            int i, j;
            long long c;
            if (!(ls >> i >> j >> c))
                throw parse_error("bad chain line: " + line);
            t.chain_ranks[{i, j}] = c;
        } else if (kind == "group") {
            int i, j, rank;
            std::string tor;
            if (!(ls >> i >> j >> rank >> tor))
                throw parse_error("bad group line: " + line);
            AbelianGroup g;
            g.free_rank = rank;
            if (tor != "-") {
                std::istringstream ts(tor);
                std::string item;
                while (std::getline(ts, item, ','))
                    g.torsion.push_back(bigint(item));
            }
            t.groups[{i, j}] = g;
        } else if (kind == "dout") {
            int i, j, r;
            if (!(ls >> i >> j >> r))
                throw parse_error("bad dout line: " + line);
            t.diff_ranks[{i, j}] = r;
        } else {
            throw parse_error("unknown table line: " + line);
        }
    }
    return t;
}

}
