#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kh/diagram.hpp"
#include "kh/errors.hpp"
#include "kh/invariants.hpp"

namespace kh {

enum class Corner { NW = 0, NE = 1, SW = 2, SE = 3 };

inline const char* corner_name(Corner c) {
    switch (c) {
    case Corner::NW: return "NW";
    case Corner::NE: return "NE";
    case Corner::SW: return "SW";
    case Corner::SE: return "SE";
    }
    return "?";
}

// One boundary endpoint.  dir: +1 the strand enters the tangle here, -1 it
// leaves, 0 the edge is a crossing-free arc between two corners and its
// orientation is fixed only at composition/closure time.
struct TangleEnd {
    int edge = -1;
    int dir = 0;
};

// An oriented 2-tangle: crossings as in PlanarDiagram plus four labeled
// boundary endpoints.  A boundary edge occurs once at a crossing and once at
// a corner; an edge listed at two corners is a crossing-free bridge.
struct Tangle {
    std::vector<Crossing> crossings;
    int free_circles = 0;
    std::array<TangleEnd, 4> ends{}; // indexed by Corner

    TangleEnd& end(Corner c) { return ends[static_cast<int>(c)]; }
    const TangleEnd& end(Corner c) const { return ends[static_cast<int>(c)]; }
    int crossing_count() const { return static_cast<int>(crossings.size()); }
};

namespace detail {

inline void validate_tangle(const Tangle& t) {
    std::map<int, int> corner_count;
    for (auto& e : t.ends) {
        if (e.edge < 0)
            throw parse_error("tangle: missing boundary endpoint");
        corner_count[e.edge]++;
    }
    std::map<int, std::vector<EdgeOcc>> occ;
    for (int ci = 0; ci < t.crossing_count(); ++ci)
        for (int s = 0; s < 4; ++s)
            occ[t.crossings[ci].e[s]].push_back({ci, s});
    auto slot_in = [&](const EdgeOcc& o) {
        const Crossing& x = t.crossings[o.crossing];
        return o.slot == 0 || o.slot == (x.sign < 0 ? 1 : 3);
    };
    for (auto& [label, v] : occ) {
        int corners = corner_count.count(label) ? corner_count[label] : 0;
        if (static_cast<int>(v.size()) + corners != 2)
            throw parse_error("tangle: edge " + std::to_string(label) + " used " +
                              std::to_string(v.size() + corners) + " times (expected 2)");
        if (v.size() == 2) {
            int ins = slot_in(v[0]) + slot_in(v[1]);
            if (ins != 1)
                throw orientation_error("tangle: interior edge " + std::to_string(label) +
                                        " has inconsistent orientation");
        }
    }
    for (auto& [label, k] : corner_count)
        if (k == 2 && occ.count(label))
            throw parse_error("tangle: bridge edge " + std::to_string(label) +
                              " also meets a crossing");
    // rigid in/out balance; bridges contribute one of each
    int in = 0, out = 0, flex = 0;
    for (auto& e : t.ends) {
        if (e.dir > 0)
            ++in;
        else if (e.dir < 0)
            ++out;
        else
            ++flex;
    }
    if (in > 2 || out > 2 || (flex % 2) != (4 - in - out) % 2)
        throw orientation_error("tangle: boundary directions unbalanced");
}

// Recompute corner directions from crossing roles (bridges stay flexible).
inline void refresh_dirs(Tangle& t) {
    std::map<int, std::vector<EdgeOcc>> occ;
    for (int ci = 0; ci < t.crossing_count(); ++ci)
        for (int s = 0; s < 4; ++s)
            occ[t.crossings[ci].e[s]].push_back({ci, s});
    for (auto& e : t.ends) {
        auto it = occ.find(e.edge);
        if (it == occ.end()) {
            e.dir = 0; // bridge
        } else {
            const EdgeOcc& o = it->second.front();
            const Crossing& x = t.crossings[o.crossing];
            bool incoming_at_crossing = o.slot == 0 || o.slot == (x.sign < 0 ? 1 : 3);
            // edge flows into the crossing => it came from the boundary
            e.dir = incoming_at_crossing ? +1 : -1;
        }
    }
}

// Like infer_signs for closed diagrams, but boundary edges occur only once
// at a crossing and contribute no constraint.
inline void infer_signs_tangle(Tangle& t) {
    int n = t.crossing_count();
    std::map<int, std::vector<EdgeOcc>> occ;
    for (int ci = 0; ci < n; ++ci)
        for (int s = 0; s < 4; ++s)
            occ[t.crossings[ci].e[s]].push_back({ci, s});
    std::vector<int> dir(n, 0);
    auto over_slot_in = [](int slot, int d) { return slot == 1 ? d == -1 : d == +1; };
    auto assign = [&](int ci, int d) {
        if (dir[ci] == 0)
            dir[ci] = d;
        else if (dir[ci] != d)
            throw orientation_error("tangle: inconsistent orientation assignment");
    };
    for (auto& [label, v] : occ) {
        if (v.size() != 2)
            continue;
        for (int k = 0; k < 2; ++k) {
            const EdgeOcc& u = v[k];
            const EdgeOcc& o = v[1 - k];
            if ((u.slot == 0 || u.slot == 2) && (o.slot == 1 || o.slot == 3)) {
                bool in_at_over = (u.slot == 2);
                int d = (o.slot == 1) ? (in_at_over ? -1 : +1) : (in_at_over ? +1 : -1);
                assign(o.crossing, d);
            }
        }
    }
    std::vector<std::pair<EdgeOcc, EdgeOcc>> over_edges;
    for (auto& [label, v] : occ)
        if (v.size() == 2 && (v[0].slot == 1 || v[0].slot == 3) &&
            (v[1].slot == 1 || v[1].slot == 3))
            over_edges.push_back({v[0], v[1]});
    bool moved = true;
    while (moved) {
        moved = false;
        for (auto& [o1, o2] : over_edges)
            for (int k = 0; k < 2; ++k) {
                const EdgeOcc& a = (k == 0) ? o1 : o2;
                const EdgeOcc& b = (k == 0) ? o2 : o1;
                if (dir[a.crossing] != 0 && dir[b.crossing] == 0) {
                    bool a_in = over_slot_in(a.slot, dir[a.crossing]);
                    assign(b.crossing, b.slot == 1 ? (a_in ? +1 : -1) : (a_in ? -1 : +1));
                    moved = true;
                }
            }
        if (!moved)
            for (int ci = 0; ci < n && !moved; ++ci)
                if (dir[ci] == 0) {
                    const Crossing& x = t.crossings[ci];
                    assign(ci, (x.e[1] == x.e[3] + 1) ? +1 : -1);
                    moved = true;
                }
    }
    for (int ci = 0; ci < n; ++ci)
        t.crossings[ci].sign = dir[ci];
}

} // namespace detail

// Half-turn involutions on oriented 2-tangles.  rho1 is the half-turn about
// the axis normal to the page (orientations kept).  rho2 and rho3 are the
// half-turns about the horizontal and vertical in-page axes followed by
// reversing the orientations of all strings.  An in-page half-turn flips the
// sheet, so each crossing record is reversed cyclically and restarted at the
// (reversed) over-strand's outgoing end; crossing signs are preserved.
inline Tangle mutate(const Tangle& t, int which) {
    if (which < 1 || which > 3)
        throw parse_error("mutate: which must be 1, 2 or 3");
    Tangle out = t;
    auto swap_ends = [&](Corner a, Corner b) {
        std::swap(out.end(a), out.end(b));
    };
    if (which == 1) {
        swap_ends(Corner::NW, Corner::SE);
        swap_ends(Corner::NE, Corner::SW);
        return out;
    }
    if (which == 2) {
        swap_ends(Corner::NW, Corner::SW);
        swap_ends(Corner::NE, Corner::SE);
    } else {
        swap_ends(Corner::NW, Corner::NE);
        swap_ends(Corner::SW, Corner::SE);
    }
    for (auto& x : out.crossings) {
        auto e = x.e;
        if (x.sign < 0)
            x.e = {e[3], e[2], e[1], e[0]};
        else
            x.e = {e[1], e[0], e[3], e[2]};
    }
    for (auto& e : out.ends)
        e.dir = -e.dir;
    return out;
}

namespace detail {

struct JoinState {
    std::vector<Crossing> crossings;
    int free_circles = 0;
    // live boundary ends by a stable handle
    std::map<int, TangleEnd> ends; // handle -> end

    void rename_edge(int from, int to) {
        for (auto& x : crossings)
            for (auto& e : x.e)
                if (e == from)
                    e = to;
        for (auto& [h, e] : ends)
            if (e.edge == from)
                e.edge = to;
    }

    // Join two boundary ends with an arc; consumes both handles.
    void join(int ha, int hb) {
        TangleEnd a = ends.at(ha);
        TangleEnd b = ends.at(hb);
        ends.erase(ha);
        ends.erase(hb);
        if (a.edge == b.edge) {
            // a bridge whose two corners meet: a crossing-free circle
            ++free_circles;
            return;
        }
        if (a.dir != 0 && b.dir != 0 && a.dir == b.dir)
            throw orientation_error("cannot join boundary ends: orientation mismatch");
        // a far bridge end inherits the rigid side's junction direction
        // (the flow runs straight through the joining arc)
        int d = a.dir != 0 ? a.dir : b.dir;
        rename_edge(b.edge, a.edge);
        if (d != 0)
            for (auto& [h, e] : ends)
                if (e.edge == a.edge && e.dir == 0)
                    e.dir = d;
    }
};

} // namespace detail

// Horizontal composition: t1's East side is glued to t2's West side
// (NE1-NW2 and SE1-SW2); the composite keeps t1's West and t2's East corners.
inline Tangle compose(const Tangle& t1, const Tangle& t2) {
    detail::validate_tangle(t1);
    detail::validate_tangle(t2);
    int edge_off = 0, id_off = 0;
    for (auto& x : t1.crossings) {
        id_off = std::max(id_off, x.id);
        for (int v : x.e)
            edge_off = std::max(edge_off, v);
    }
    for (auto& e : t1.ends)
        edge_off = std::max(edge_off, e.edge);
    Tangle b = t2;
    for (auto& x : b.crossings) {
        x.id += id_off;
        for (auto& e : x.e)
            e += edge_off;
    }
    for (auto& e : b.ends)
        e.edge += edge_off;

    detail::JoinState js;
    js.crossings = t1.crossings;
    js.crossings.insert(js.crossings.end(), b.crossings.begin(), b.crossings.end());
    js.free_circles = t1.free_circles + b.free_circles;
    // handles 0..3: composite corners NW,NE,SW,SE; 4..7: junction ends
    js.ends[0] = t1.end(Corner::NW);
    js.ends[2] = t1.end(Corner::SW);
    js.ends[1] = b.end(Corner::NE);
    js.ends[3] = b.end(Corner::SE);
    js.ends[4] = t1.end(Corner::NE);
    js.ends[5] = b.end(Corner::NW);
    js.ends[6] = t1.end(Corner::SE);
    js.ends[7] = b.end(Corner::SW);
    js.join(4, 5);
    js.join(6, 7);

    Tangle out;
    out.crossings = std::move(js.crossings);
    out.free_circles = js.free_circles;
    out.end(Corner::NW) = js.ends.at(0);
    out.end(Corner::NE) = js.ends.at(1);
    out.end(Corner::SW) = js.ends.at(2);
    out.end(Corner::SE) = js.ends.at(3);
    detail::refresh_dirs(out);
    detail::validate_tangle(out);
    return out;
}

// Standard closure: arcs join NE to NW over the top and SE to SW under
// the bottom.
inline PlanarDiagram closure(const Tangle& t) {
    detail::validate_tangle(t);
    detail::JoinState js;
    js.crossings = t.crossings;
    js.free_circles = t.free_circles;
    js.ends[0] = t.end(Corner::NW);
    js.ends[1] = t.end(Corner::NE);
    js.ends[2] = t.end(Corner::SW);
    js.ends[3] = t.end(Corner::SE);
    js.join(1, 0);
    js.join(3, 2);
    PlanarDiagram d;
    d.crossings = std::move(js.crossings);
    d.free_circles = js.free_circles;
    d.finalize();
    return d;
}

inline std::pair<PlanarDiagram, PlanarDiagram> mutant_pair(const Tangle& t1, const Tangle& t2,
                                                           int which) {
    PlanarDiagram l = closure(compose(t1, t2));
    PlanarDiagram lp = closure(compose(t1, mutate(t2, which)));
    return {l, lp};
}

// Switch the chosen crossing positive / negative / orientedly smoothed.
struct SkeinTriple {
    PlanarDiagram l_plus, l_minus, l_zero;
};

inline SkeinTriple skein_triple(const PlanarDiagram& d, int crossing_id) {
    int pos = -1;
    for (int ci = 0; ci < d.crossing_count(); ++ci)
        if (d.crossings[ci].id == crossing_id)
            pos = ci;
    if (pos < 0)
        throw parse_error("skein_triple: unknown crossing id " + std::to_string(crossing_id));

    auto switched = [&](int target_sign) {
        PlanarDiagram out = d;
        Crossing& x = out.crossings[pos];
        if (x.sign != target_sign) {
            auto e = x.e;
            // swap over/under at this crossing only
            if (x.sign < 0) {
                x.e = {e[1], e[2], e[3], e[0]};
                x.sign = +1;
            } else {
                x.e = {e[3], e[0], e[1], e[2]};
                x.sign = -1;
            }
        }
        out.finalize();
        return out;
    };

    SkeinTriple out;
    out.l_plus = switched(+1);
    out.l_minus = switched(-1);

    // oriented smoothing: negative joins {e0,e3},{e1,e2}; positive {e0,e1},{e2,e3}
    PlanarDiagram z = d;
    Crossing x = z.crossings[pos];
    z.crossings.erase(z.crossings.begin() + pos);
    std::array<std::pair<int, int>, 2> pairs;
    if (x.sign < 0)
        pairs = {std::pair{x.e[0], x.e[3]}, std::pair{x.e[1], x.e[2]}};
    else
        pairs = {std::pair{x.e[0], x.e[1]}, std::pair{x.e[2], x.e[3]}};
    // merge each pair; classes may interact when the crossing carries loops
    std::map<int, int> repr;
    auto find = [&](int a) {
        while (repr.count(a) && repr[a] != a)
            a = repr[a];
        return a;
    };
    for (auto [p, q] : pairs) {
        repr.emplace(p, p);
        repr.emplace(q, q);
        repr[find(q)] = find(p);
    }
    std::map<int, std::vector<int>> classes;
    for (auto& [e, r] : repr)
        classes[find(e)].push_back(e);
    for (auto& [root, members] : classes) {
        // count occurrences of the class in the remaining crossings
        std::vector<std::pair<int, int>> locs; // (ci, slot)
        for (int ci = 0; ci < z.crossing_count(); ++ci)
            for (int s = 0; s < 4; ++s)
                for (int m : members)
                    if (z.crossings[ci].e[s] == m)
                        locs.push_back({ci, s});
        if (locs.empty()) {
            ++z.free_circles; // the smoothing closed this strand into a circle
            continue;
        }
        if (locs.size() != 2)
            throw consistency_error("skein_triple: bad smoothing locus");
        // keep the label of the upstream end (the one leaving another crossing)
        int keep = -1;
        for (auto [ci, s] : locs) {
            bool incoming = z.slot_is_incoming(ci, s);
            if (!incoming)
                keep = z.crossings[ci].e[s];
        }
        if (keep < 0)
            keep = z.crossings[locs[0].first].e[locs[0].second];
        for (auto [ci, s] : locs)
            z.crossings[ci].e[s] = keep;
    }
    z.finalize();
    out.l_zero = z;
    if (out.l_zero.crossing_count() != d.crossing_count() - 1)
        throw consistency_error("skein_triple: smoothing did not drop one crossing");
    return out;
}

// The mutant-pair tangles: T1 is the (2,n1) braid with its left column closed
// inside the box and a crossing-free bridge on the West side; T2 is the
// (2,n2) braid with its right column closed and the bridge on the East side.
// closure(T1 T2) is then U ⊔ (K1 # K2) with the bridge pair forming the
// round circle, and closure(T1 rho1(T2)) is K1 ⊔ K2.
inline std::pair<Tangle, Tangle> figure3_tangles(int n1, int n2) {
    if (n1 < 1 || n2 < 1)
        throw parse_error("figure3_tangles: braid words need at least one crossing");
    auto braid = [](int n, int base_id) {
        // edges: L_k = k+1, R_k = n+2+k (k = 0..n); both strands upward,
        // all crossings negative
        Tangle t;
        for (int k = 0; k < n; ++k) {
            Crossing x;
            x.id = base_id + k;
            x.e = {k + 1, n + 2 + k, n + 3 + k, k + 2};
            x.sign = -1;
            t.crossings.push_back(x);
        }
        return t;
    };
    int bridge1 = 1000, bridge2 = 1000;

    Tangle t1 = braid(n1, 1);
    // left closure: identify L_{n1} (tail at the top crossing) with L_0
    for (auto& x : t1.crossings)
        for (auto& e : x.e)
            if (e == 1)
                e = n1 + 1;
    t1.end(Corner::NE) = {2 * n1 + 2, -1}; // R_{n1} leaves at the top
    t1.end(Corner::SE) = {n1 + 2, +1};     // R_0 enters at the bottom
    t1.end(Corner::NW) = {bridge1, 0};
    t1.end(Corner::SW) = {bridge1, 0};
    detail::refresh_dirs(t1);
    detail::validate_tangle(t1);

    Tangle t2 = braid(n2, 100);
    // right closure: identify R_{n2} with R_0
    for (auto& x : t2.crossings)
        for (auto& e : x.e)
            if (e == n2 + 2)
                e = 2 * n2 + 2;
    t2.end(Corner::NW) = {1, +1};          // L_0 enters at the top
    t2.end(Corner::SW) = {n2 + 1, -1};     // L_{n2} leaves at the bottom
    t2.end(Corner::NE) = {bridge2, 0};
    t2.end(Corner::SE) = {bridge2, 0};
    detail::refresh_dirs(t2);
    detail::validate_tangle(t2);
    return {t1, t2};
}

// L = U ⊔ (K1 # K2) and L' = K1 ⊔ K2, via the link constructors.  The same
// pair arises from mutant_pair(figure3_tangles(n1,n2)..., rho = 1).
inline std::pair<PlanarDiagram, PlanarDiagram> figure3_pair(int n1, int n2) {
    if (n1 < 2 || n2 < 2)
        throw parse_error("figure3_pair: torus link parameters must be >= 2");
    PlanarDiagram l =
        disjoint_union(unknot(), connected_sum(torus_link_2(n1), torus_link_2(n2)));
    PlanarDiagram lp = disjoint_union(torus_link_2(n1), torus_link_2(n2));
    return {l, lp};
}

// --- tangle text format ----------------------------------------------------
// PD records plus one boundary record, e.g.
//   X[1,4,2,5] X[3,6,4,1] B[NW:2,NE:5,SW:3,SE:6]
// Directions are inferred from component orientations.

inline Tangle parse_tangle(const std::string& text) {
    // split off B[...] record
    std::string pd_part;
    std::string b_part;
    size_t bpos = std::string::npos;
    for (size_t i = 0; i + 1 < text.size(); ++i)
        if ((text[i] == 'B') && text[i + 1] == '[') {
            bpos = i;
            break;
        }
    if (bpos == std::string::npos)
        throw parse_error("tangle text: missing B[...] boundary record");
    size_t bend = text.find(']', bpos);
    if (bend == std::string::npos)
        throw parse_error("tangle text: unterminated boundary record");
    pd_part = text.substr(0, bpos) + text.substr(bend + 1);
    b_part = text.substr(bpos + 2, bend - bpos - 2);

    Tangle t;
    auto tokens = detail::tokenize_pd(pd_part);
    int id = 1;
    for (auto& tok : tokens) {
        if (tok.is_circle) {
            ++t.free_circles;
        } else {
            Crossing x;
            x.id = id++;
            x.e = tok.e;
            t.crossings.push_back(x);
        }
    }
    // boundary entries NW:e,...
    std::map<std::string, int> corner_edges;
    std::istringstream bs(b_part);
    std::string item;
    while (std::getline(bs, item, ',')) {
        size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw parse_error("tangle boundary: expected CORNER:edge");
        std::string name = item.substr(0, colon);
        name.erase(remove_if(name.begin(), name.end(), ::isspace), name.end());
        int edge = std::stoi(item.substr(colon + 1));
        if (corner_edges.count(name))
            throw parse_error("tangle boundary: duplicate corner " + name);
        corner_edges[name] = edge;
    }
    if (corner_edges.size() != 4)
        throw parse_error("tangle boundary: need exactly NW, NE, SW, SE");
    auto pick = [&](const char* n) {
        auto it = corner_edges.find(n);
        if (it == corner_edges.end())
            throw parse_error(std::string("tangle boundary: missing corner ") + n);
        return it->second;
    };
    t.end(Corner::NW) = {pick("NW"), 0};
    t.end(Corner::NE) = {pick("NE"), 0};
    t.end(Corner::SW) = {pick("SW"), 0};
    t.end(Corner::SE) = {pick("SE"), 0};

    detail::infer_signs_tangle(t);
    detail::refresh_dirs(t);
    detail::validate_tangle(t);
    return t;
}

inline std::string serialize(const Tangle& t) {
    std::ostringstream os;
    for (auto& x : t.crossings)
        os << "X[" << x.e[0] << "," << x.e[1] << "," << x.e[2] << "," << x.e[3] << "] ";
    for (int k = 0; k < t.free_circles; ++k)
        os << "O ";
    os << "B[NW:" << t.end(Corner::NW).edge << ",NE:" << t.end(Corner::NE).edge
       << ",SW:" << t.end(Corner::SW).edge << ",SE:" << t.end(Corner::SE).edge << "]";
    return os.str();
}

// --- the n2 = 2 remark ------------------------------------------------------

inline AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    AbelianGroup g;
    g.free_rank = a.free_rank + b.free_rank;
    g.torsion = a.torsion;
    g.torsion.insert(g.torsion.end(), b.torsion.begin(), b.torsion.end());
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

inline bool remark_isomorphism_check(int n1) {
    if (n1 < 3)
        throw parse_error("remark_isomorphism_check: n1 must be >= 3");
    auto [l, lp] = figure3_pair(n1, 2);
    HomologyTable hl = khovanov_homology(l);
    HomologyTable hlp = khovanov_homology(lp);
    HomologyTable huk = khovanov_homology(disjoint_union(unknot(), torus_link_2(n1)));
    std::set<Bigrading> candidates;
    for (auto& [ij, g] : hl.groups)
        candidates.insert(ij);
    for (auto& [ij, g] : hlp.groups)
        candidates.insert(ij);
    for (auto& [ij, g] : huk.groups) {
        candidates.insert({ij.first - 2, ij.second - 5});
        candidates.insert({ij.first, ij.second - 1});
    }
    for (auto& [i, j] : candidates) {
        AbelianGroup target = direct_sum(huk.group(i + 2, j + 5), huk.group(i, j + 1));
        if (hl.group(i, j) != target || hlp.group(i, j) != target)
            return false;
    }
    return true;
}

}
