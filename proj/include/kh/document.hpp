#pragma once

#include <json.hpp>
#include <string>

#include "kh/diagram.hpp"
#include "kh/invariants.hpp"
#include "kh/version.hpp"

namespace kh {

// The JSON result document emitted by the CLI (and cached on disk).
// Recomputing the same input reproduces the document byte-for-byte except
// for the timings block.
struct ResultDocument {
    std::string diagram_hash;
    HomologyTable table;
    BigradedLaurent kh_poly;
    Laurent v_poly, w_poly;
    double total_ms = 0.0;
    bool ranks_only = false;
};

inline ResultDocument make_document(const PlanarDiagram& d, const HomologyTable& t,
                                    double total_ms) {
    ResultDocument doc;
    doc.diagram_hash = canonical_hash(d);
    doc.table = t;
    doc.kh_poly = poincare_polynomial(t);
    doc.v_poly = v_polynomial(doc.kh_poly);
    doc.w_poly = w_polynomial(doc.kh_poly);
    doc.total_ms = total_ms;
    doc.ranks_only = t.ranks_only;
    return doc;
}

inline nlohmann::ordered_json document_to_json(const ResultDocument& doc) {
    nlohmann::ordered_json j;
    j["version"] = version;
    j["diagram_hash"] = doc.diagram_hash;
    j["ranks_only"] = doc.ranks_only;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (auto& [ij, c] : doc.table.chain_ranks) {
        nlohmann::ordered_json row;
        row["i"] = ij.first;
        row["j"] = ij.second;
        AbelianGroup g = doc.table.group(ij.first, ij.second);
        row["rank"] = g.free_rank;
        nlohmann::ordered_json tor = nlohmann::ordered_json::array();
        for (auto& f : g.torsion)
            tor.push_back(f.convert_to<long long>());
        row["torsion"] = tor;
        row["chain_rank"] = c;
        row["diff_rank"] = doc.table.diff_rank(ij.first, ij.second);
        rows.push_back(row);
    }
    j["bidegrees"] = rows;
    auto poly2 = [](const BigradedLaurent& p) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (auto& [ij, c] : p.coeffs())
            out.push_back({ij.first, ij.second, c});
        return out;
    };
    auto poly1 = [](const Laurent& p) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (auto& [e, c] : p.coeffs())
            out.push_back({e, c});
        return out;
    };
    j["kh"] = poly2(doc.kh_poly);
    j["v"] = poly1(doc.v_poly);
    j["w"] = poly1(doc.w_poly);
    j["timings"] = {{"total_ms", doc.total_ms}};
    return j;
}

inline ResultDocument document_from_json(const nlohmann::json& j) {
    ResultDocument doc;
    doc.diagram_hash = j.at("diagram_hash").get<std::string>();
    doc.ranks_only = j.value("ranks_only", false);
    doc.table.ranks_only = doc.ranks_only;
    std::map<Bigrading, int> douts;
    for (auto& row : j.at("bidegrees")) {
        int i = row.at("i").get<int>();
        int jj = row.at("j").get<int>();
        doc.table.chain_ranks[{i, jj}] = row.at("chain_rank").get<long long>();
        AbelianGroup g;
        g.free_rank = row.at("rank").get<int>();
        for (auto& f : row.at("torsion"))
            g.torsion.push_back(bigint(f.get<long long>()));
        if (!g.is_trivial())
            doc.table.groups[{i, jj}] = g;
        douts[{i, jj}] = row.at("diff_rank").get<int>();
    }
    // diff_ranks carries an entry only where a differential can leave
    for (auto& [ij, r] : douts)
        if (r > 0 || doc.table.chain_ranks.count({ij.first + 1, ij.second}))
            doc.table.diff_ranks[ij] = r;
    for (auto& item : j.at("kh"))
        doc.kh_poly.add(item[0].get<int>(), item[1].get<int>(), item[2].get<long long>());
    for (auto& item : j.at("v"))
        doc.v_poly.add(item[0].get<int>(), item[1].get<long long>());
    for (auto& item : j.at("w"))
        doc.w_poly.add(item[0].get<int>(), item[1].get<long long>());
    doc.total_ms = j.at("timings").at("total_ms").get<double>();
    return doc;
}

inline bool documents_equal_ignoring_timings(const ResultDocument& a, const ResultDocument& b) {
    return a.diagram_hash == b.diagram_hash && a.table == b.table && a.kh_poly == b.kh_poly &&
           a.v_poly == b.v_poly && a.w_poly == b.w_poly && a.ranks_only == b.ranks_only;
}

}
