#pragma once

#include <map>
#include <string>
#include <vector>

#include "kh/diagram.hpp"
#include "kh/errors.hpp"

namespace kh {

// Curated diagrams.  The same PD text lives in data/fixtures/*.pd for use
// through the CLI's file: scheme; a test pins the two copies together.
//
// Provenance: the Kinoshita-Terasaka and Conway codes were obtained from the
// 11x11 grid (arc) presentations of the pair KT_{2,1} / C_{2,1}, projected to
// planar diagrams, reduced to 11 crossings by Reidemeister moves, and
// mirrored once so that the homology matches the published table for this
// pair (H^{5,9} = Z, H^{-6,-13} = Z, support -6..5).  The two diagrams have
// equal Jones polynomials and equal Khovanov homology, as mutants must.
inline const std::map<std::string, std::string>& fixture_pd_texts() {
    static const std::map<std::string, std::string> table = {
        {"unknot", "O"},
        {"trefoil", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"},
        // same trefoil diagram with all edge labels shifted by one
        {"trefoil_pd_twin", "X[2,5,3,6] X[4,1,5,2] X[6,3,1,4]"},
        // trefoil with one negative Reidemeister-1 kink on edge 6
        {"trefoil_kinked", "X[1,4,2,5] X[3,8,4,1] X[5,2,6,3] X[6,7,7,8]"},
        {"granny_disjoint_unknot",
         "X[7,4,2,5] X[5,2,6,3] X[3,6,4,1] X[1,10,8,11] X[11,8,12,9] X[9,12,10,7] O"},
        {"trefoil_disjoint_trefoil",
         "X[1,4,2,5] X[5,2,6,3] X[3,6,4,1] X[7,10,8,11] X[11,8,12,9] X[9,12,10,7]"},
        {"kinoshita_terasaka",
         "X[1,6,2,7] X[12,8,13,7] X[3,17,4,16] X[10,15,11,16] X[8,14,9,13] X[5,22,6,1] "
         "X[21,4,22,5] X[17,3,18,2] X[14,19,15,20] X[18,11,19,12] X[20,10,21,9]"},
        {"conway",
         "X[15,8,16,9] X[22,9,1,10] X[2,6,3,5] X[7,18,8,19] X[19,15,20,14] X[11,16,12,17] "
         "X[4,22,5,21] X[10,1,11,2] X[20,4,21,3] X[13,7,14,6] X[17,12,18,13]"},
    };
    return table;
}

inline std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (auto& [name, pd] : fixture_pd_texts())
        names.push_back(name);
    return names;
}

inline PlanarDiagram fixture(const std::string& name) {
    auto& table = fixture_pd_texts();
    auto it = table.find(name);
    if (it == table.end()) {
        std::string known;
        for (auto& [n, pd] : table)
            known += (known.empty() ? "" : ", ") + n;
        throw parse_error("unknown fixture '" + name + "' (known: " + known + ")");
    }
    return parse_pd(it->second);
}

}
