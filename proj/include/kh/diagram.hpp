#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kh/errors.hpp"

namespace kh {

// One crossing of an oriented diagram, Knot-Atlas style: the four edge labels
// are listed counterclockwise starting at the incoming under-strand.  The
// under-strand runs e[0] -> e[2]; the over-strand runs e[1] -> e[3] when the
// crossing is negative and e[3] -> e[1] when positive.
struct Crossing {
    int id = 0;
    std::array<int, 4> e{};
    int sign = 0;

    int under_in() const { return e[0]; }
    int under_out() const { return e[2]; }
    int over_in() const { return sign < 0 ? e[1] : e[3]; }
    int over_out() const { return sign < 0 ? e[3] : e[1]; }

    bool operator==(const Crossing& o) const { return id == o.id && e == o.e && sign == o.sign; }
};

struct EdgeOcc {
    int crossing = -1; // index into crossings
    int slot = -1;     // 0..3
};

// An oriented link diagram: crossings plus explicitly counted crossing-free
// circles (a circle is not faked with kink crossings; the chain complex needs
// a rank-2 algebra factor per free circle).
class PlanarDiagram {
  public:
    std::vector<Crossing> crossings;
    int free_circles = 0;

    int n_plus = 0;
    int n_minus = 0;
    int components = 0;

    int crossing_count() const { return static_cast<int>(crossings.size()); }
    int edge_count() const { return 2 * crossing_count(); }
    int writhe() const { return n_plus - n_minus; }

    bool slot_is_incoming(int ci, int slot) const {
        const Crossing& x = crossings[ci];
        return slot == 0 || slot == (x.sign < 0 ? 1 : 3);
    }

    // label -> its two occurrences (one incoming, one outgoing once validated)
    std::map<int, std::vector<EdgeOcc>> occurrences() const {
        std::map<int, std::vector<EdgeOcc>> occ;
        for (int ci = 0; ci < crossing_count(); ++ci)
            for (int s = 0; s < 4; ++s)
                occ[crossings[ci].e[s]].push_back({ci, s});
        return occ;
    }

    std::vector<int> edge_labels() const {
        std::set<int> s;
        for (auto& x : crossings)
            for (int v : x.e)
                s.insert(v);
        return std::vector<int>(s.begin(), s.end());
    }

    // Validates edge usage and orientation consistency, then recomputes
    // n_plus/n_minus and the component count.
    void finalize() {
        n_plus = n_minus = 0;
        for (auto& x : crossings) {
            if (x.sign == 1)
                ++n_plus;
            else if (x.sign == -1)
                ++n_minus;
            else
                throw consistency_error("crossing without a sign");
        }
        auto occ = occurrences();
        std::map<int, EdgeOcc> head; // incoming occurrence per label
        for (auto& [label, v] : occ) {
            if (v.size() != 2)
                throw parse_error("edge " + std::to_string(label) + " used " +
                                  std::to_string(v.size()) + " times (expected 2)");
            int in_count = 0;
            for (auto& o : v)
                if (slot_is_incoming(o.crossing, o.slot)) {
                    ++in_count;
                    head[label] = o;
                }
            if (in_count != 1)
                throw orientation_error("edge " + std::to_string(label) +
                                        " has inconsistent orientation");
        }
        // trace strands: an edge arriving at a crossing continues on the same
        // strand (under stays under, over stays over)
        components = free_circles;
        std::set<int> seen;
        for (auto& [label, v] : occ) {
            if (seen.count(label))
                continue;
            int e = label;
            while (!seen.count(e)) {
                seen.insert(e);
                EdgeOcc h = head.at(e);
                const Crossing& x = crossings[h.crossing];
                e = (h.slot == 0) ? x.e[2] : x.over_out();
            }
            ++components;
        }
        if (components == 0)
            throw parse_error("empty diagram");
    }

    bool operator==(const PlanarDiagram& o) const {
        return crossings == o.crossings && free_circles == o.free_circles;
    }
};

namespace detail {

struct PdToken {
    bool is_circle = false;
    std::array<int, 4> e{};
};

inline std::vector<PdToken> tokenize_pd(const std::string& text) {
    std::vector<PdToken> out;
    size_t i = 0, n = text.size();
    auto skip_ws = [&] {
        while (i < n) {
            if (std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
            } else if (text[i] == '#') {
                while (i < n && text[i] != '\n')
                    ++i;
            } else {
                break;
            }
        }
    };
    for (;;) {
        skip_ws();
        if (i >= n)
            break;
        char c = text[i];
        if (c == 'O' || c == 'o') {
            ++i;
            out.push_back({true, {}});
            continue;
        }
        if (c != 'X' && c != 'x')
            throw parse_error("unexpected character '" + std::string(1, c) + "' in PD text");
        ++i;
        skip_ws();
        if (i >= n || text[i] != '[')
            throw parse_error("malformed crossing record: expected '['");
        ++i;
        PdToken t;
        for (int k = 0; k < 4; ++k) {
            skip_ws();
            bool neg = false;
            if (i < n && text[i] == '-') {
                neg = true;
                ++i;
            }
            if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw parse_error("malformed crossing record: expected edge label");
            long v = 0;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            t.e[k] = neg ? -static_cast<int>(v) : static_cast<int>(v);
            skip_ws();
            if (k < 3) {
                if (i >= n || text[i] != ',')
                    throw parse_error("malformed crossing record: expected ','");
                ++i;
            }
        }
        if (i >= n || text[i] != ']')
            throw parse_error("malformed crossing record: expected ']'");
        ++i;
        out.push_back(t);
    }
    return out;
}

// Decide each crossing's over-strand direction (hence its sign).  Roles forced
// by under-strand slots are propagated across shared edges; components that
// never pass under fall back to the ascending-label convention.
inline void infer_signs(std::vector<Crossing>& crossings) {
    int n = static_cast<int>(crossings.size());
    std::map<int, std::vector<EdgeOcc>> occ;
    for (int ci = 0; ci < n; ++ci)
        for (int s = 0; s < 4; ++s)
            occ[crossings[ci].e[s]].push_back({ci, s});
    for (auto& [label, v] : occ)
        if (v.size() != 2)
            throw parse_error("edge " + std::to_string(label) + " used " +
                              std::to_string(v.size()) + " times (expected 2)");

    std::vector<int> dir(n, 0); // +1: over d->b (positive), -1: over b->d
    // role of an over slot given the crossing direction: slot 1 (b) is
    // incoming iff dir == -1; slot 3 (d) is incoming iff dir == +1.
    auto over_slot_in = [](int slot, int d) { return slot == 1 ? d == -1 : d == +1; };

    std::vector<int> queue;
    auto assign = [&](int ci, int d) {
        if (dir[ci] == 0) {
            dir[ci] = d;
            queue.push_back(ci);
        } else if (dir[ci] != d) {
            throw orientation_error("inconsistent orientation assignment at crossing " +
                                    std::to_string(crossings[ci].id));
        }
    };

    // seeds: an edge shared between an under slot and an over slot
    for (auto& [label, v] : occ) {
        for (int k = 0; k < 2; ++k) {
            const EdgeOcc& u = v[k];
            const EdgeOcc& o = v[1 - k];
            if ((u.slot == 0 || u.slot == 2) && (o.slot == 1 || o.slot == 3)) {
                bool in_at_over = (u.slot == 2); // out of the under slot => in at the over slot
                int d;
                if (o.slot == 1)
                    d = in_at_over ? -1 : +1;
                else
                    d = in_at_over ? +1 : -1;
                assign(o.crossing, d);
            }
        }
    }
    // propagate across over-over edges
    std::map<int, std::vector<std::pair<int, int>>> over_adj; // ci -> (cj, via edge occ pair idx)
    std::vector<std::pair<EdgeOcc, EdgeOcc>> over_edges;
    for (auto& [label, v] : occ)
        if ((v[0].slot == 1 || v[0].slot == 3) && (v[1].slot == 1 || v[1].slot == 3))
            over_edges.push_back({v[0], v[1]});
    bool moved = true;
    while (moved) {
        moved = false;
        for (auto& [o1, o2] : over_edges) {
            for (int k = 0; k < 2; ++k) {
                const EdgeOcc& a = (k == 0) ? o1 : o2;
                const EdgeOcc& b = (k == 0) ? o2 : o1;
                if (dir[a.crossing] != 0 && dir[b.crossing] == 0) {
                    bool a_in = over_slot_in(a.slot, dir[a.crossing]);
                    // the other end must have the opposite role
                    int d = b.slot == 1 ? (a_in ? +1 : -1) : (a_in ? -1 : +1);
                    assign(b.crossing, d);
                    moved = true;
                }
            }
        }
        if (!moved) {
            // seed one undecided crossing from the label convention
            for (int ci = 0; ci < n && !moved; ++ci)
                if (dir[ci] == 0) {
                    const Crossing& x = crossings[ci];
                    int d = (x.e[1] == x.e[3] + 1) ? +1 : -1;
                    assign(ci, d);
                    moved = true;
                }
        }
    }
    for (int ci = 0; ci < n; ++ci)
        crossings[ci].sign = dir[ci];
}

} // namespace detail

// Parses Knot-Atlas style PD text: whitespace-separated records X[a,b,c,d]
// with '#' comments; a bare token 'O' adds one crossing-free circle.
// Orientations are recovered assuming edge labels increase along components.
inline PlanarDiagram parse_pd(const std::string& text) {
    auto tokens = detail::tokenize_pd(text);
    if (tokens.empty())
        throw parse_error("empty PD text (the unknot is 'O', not an empty string)");
    PlanarDiagram d;
    int id = 1;
    for (auto& t : tokens) {
        if (t.is_circle) {
            ++d.free_circles;
        } else {
            Crossing x;
            x.id = id++;
            x.e = t.e;
            d.crossings.push_back(x);
        }
    }
    detail::infer_signs(d.crossings);
    d.finalize();
    return d;
}

// Canonical text: crossings sorted by id, then circles.
inline std::string serialize(const PlanarDiagram& d) {
    std::vector<const Crossing*> xs;
    for (auto& x : d.crossings)
        xs.push_back(&x);
    std::sort(xs.begin(), xs.end(), [](auto* a, auto* b) { return a->id < b->id; });
    std::ostringstream os;
    bool first = true;
    for (auto* x : xs) {
        if (!first)
            os << " ";
        first = false;
        os << "X[" << x->e[0] << "," << x->e[1] << "," << x->e[2] << "," << x->e[3] << "]";
    }
    for (int k = 0; k < d.free_circles; ++k) {
        if (!first)
            os << " ";
        first = false;
        os << "O";
    }
    return os.str();
}

inline PlanarDiagram unknot() {
    PlanarDiagram d;
    d.free_circles = 1;
    d.finalize();
    return d;
}

// Closed 2-braid with |n| equal crossings.  For n > 0 every crossing is
// negative (so the torus-link W formulas hold verbatim, with support in
// nonpositive powers of t); n < 0 gives the mirror.  One component when n is
// odd, two when even.
inline PlanarDiagram torus_link_2(int n) {
    if (n == 0)
        throw parse_error("torus_link_2(0): request the 2-component unlink via "
                          "disjoint_union(unknot(), unknot())");
    int m = n > 0 ? n : -n;
    bool negative = n > 0;
    // provisional labels: left strand edges 0..m-1, right strand m..2m-1
    auto L = [&](int k) { return (k % m) + 1; };
    auto R = [&](int k) { return m + (k % m) + 1; };
    PlanarDiagram d;
    for (int k = 0; k < m; ++k) {
        Crossing x;
        x.id = k + 1;
        if (negative) {
            x.e = {L(k), R(k), R(k + 1), L(k + 1)};
            x.sign = -1;
        } else {
            x.e = {R(k), R(k + 1), L(k + 1), L(k)};
            x.sign = +1;
        }
        d.crossings.push_back(x);
    }
    d.finalize();
    // relabel edges so labels ascend along each component, starting from the
    // bottom-left edge (keeps the published trefoil code X[1,4,2,5] ... exact)
    auto occ = d.occurrences();
    std::map<int, EdgeOcc> head;
    for (auto& [label, v] : occ)
        for (auto& o : v)
            if (d.slot_is_incoming(o.crossing, o.slot))
                head[label] = o;
    std::map<int, int> relabel;
    int next = 1;
    for (int start : {L(0), L(1)}) {
        if (relabel.count(start))
            continue;
        int e = start;
        while (!relabel.count(e)) {
            relabel[e] = next++;
            EdgeOcc h = head.at(e);
            const Crossing& x = d.crossings[h.crossing];
            e = (h.slot == 0) ? x.e[2] : x.over_out();
        }
    }
    for (auto& x : d.crossings)
        for (auto& e : x.e)
            e = relabel.at(e);
    d.finalize();
    return d;
}

namespace detail {

inline int max_edge_label(const PlanarDiagram& d) {
    int m = 0;
    for (auto& x : d.crossings)
        for (int v : x.e)
            m = std::max(m, v);
    return m;
}

inline int max_crossing_id(const PlanarDiagram& d) {
    int m = 0;
    for (auto& x : d.crossings)
        m = std::max(m, x.id);
    return m;
}

inline PlanarDiagram shifted(const PlanarDiagram& d, int edge_offset, int id_offset) {
    PlanarDiagram out = d;
    for (auto& x : out.crossings) {
        x.id += id_offset;
        for (auto& e : x.e)
            e += edge_offset;
    }
    return out;
}

} // namespace detail

inline PlanarDiagram disjoint_union(const PlanarDiagram& a, const PlanarDiagram& b) {
    PlanarDiagram out = a;
    PlanarDiagram bs = detail::shifted(b, detail::max_edge_label(a), detail::max_crossing_id(a));
    out.crossings.insert(out.crossings.end(), bs.crossings.begin(), bs.crossings.end());
    out.free_circles += bs.free_circles;
    out.finalize();
    return out;
}

// Connected sum spliced at the lowest-numbered edge of each diagram.  The
// spliced strands keep consistent orientation by cross-joining tail->head,
// so no component ever needs reversing.
inline PlanarDiagram connected_sum(const PlanarDiagram& a, const PlanarDiagram& b) {
    if (a.crossings.empty() || b.crossings.empty()) {
        // splice into the closed-circle record: a circle is an identity summand
        const PlanarDiagram& circle = a.crossings.empty() ? a : b;
        const PlanarDiagram& other = a.crossings.empty() ? b : a;
        if (circle.free_circles < 1)
            throw parse_error("connected_sum: empty operand");
        PlanarDiagram out = other;
        out.free_circles += circle.free_circles - 1;
        if (out.crossings.empty() && out.free_circles < 1)
            throw parse_error("connected_sum: empty result");
        out.finalize();
        return out;
    }
    PlanarDiagram out = a;
    PlanarDiagram bs = detail::shifted(b, detail::max_edge_label(a), detail::max_crossing_id(a));
    std::vector<int> ea = out.edge_labels(), eb = bs.edge_labels();
    int e1 = *std::min_element(ea.begin(), ea.end());
    int e2 = *std::min_element(eb.begin(), eb.end());
    auto head_of = [](PlanarDiagram& d, int label) -> std::pair<int, int> {
        for (int ci = 0; ci < d.crossing_count(); ++ci)
            for (int s = 0; s < 4; ++s)
                if (d.crossings[ci].e[s] == label && d.slot_is_incoming(ci, s))
                    return {ci, s};
        throw consistency_error("connected_sum: head occurrence missing");
    };
    auto h1 = head_of(out, e1);
    int nb = out.crossing_count();
    out.crossings.insert(out.crossings.end(), bs.crossings.begin(), bs.crossings.end());
    out.free_circles += bs.free_circles;
    auto h2 = head_of(out, e2);
    if (h2.first < nb)
        throw consistency_error("connected_sum: splice edge resolution failed");
    // cross the strands: e1 now flows into b's diagram, e2 into a's
    out.crossings[h2.first].e[h2.second] = e1;
    out.crossings[h1.first].e[h1.second] = e2;
    out.finalize();
    if (out.components != a.components + b.components - 1)
        throw consistency_error("connected_sum: component count mismatch");
    return out;
}

// Swap over- and under-strands at every crossing.
inline PlanarDiagram mirror(const PlanarDiagram& d) {
    PlanarDiagram out = d;
    for (auto& x : out.crossings) {
        std::array<int, 4> e = x.e;
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
}

// --- canonical form ------------------------------------------------------
// Canonicalizes the labeled diagram (crossings sorted, edges renumbered by a
// deterministic traversal minimized over starting edges).  Used for cache
// keys; this is diagram-level, not link-level, canonicalization.

namespace detail {

inline std::string canonical_piece_text(const PlanarDiagram& d, const std::vector<int>& piece,
                                        int start_edge) {
    auto occ = d.occurrences();
    std::map<int, EdgeOcc> head;
    for (auto& [label, v] : occ)
        for (auto& o : v)
            if (d.slot_is_incoming(o.crossing, o.slot))
                head[label] = o;
    std::set<int> piece_set(piece.begin(), piece.end());
    std::map<int, int> relabel;
    int next = 1;
    auto walk = [&](int e0) {
        int e = e0;
        while (!relabel.count(e)) {
            relabel[e] = next++;
            EdgeOcc h = head.at(e);
            const Crossing& x = d.crossings[h.crossing];
            e = (h.slot == 0) ? x.e[2] : x.over_out();
        }
    };
    walk(start_edge);
    for (;;) {
        // next start: unlabeled edge adjacent to the smallest new label
        int best_edge = -1;
        std::pair<int, int> best_key{INT32_MAX, INT32_MAX};
        for (int ci : piece_set) {
            const Crossing& x = d.crossings[ci];
            int min_lab = INT32_MAX;
            for (int v : x.e)
                if (relabel.count(v))
                    min_lab = std::min(min_lab, relabel.at(v));
            if (min_lab == INT32_MAX)
                continue;
            for (int s = 0; s < 4; ++s)
                if (!relabel.count(x.e[s])) {
                    std::pair<int, int> key{min_lab, s};
                    if (key < best_key) {
                        best_key = key;
                        best_edge = x.e[s];
                    }
                }
        }
        if (best_edge < 0)
            break;
        walk(best_edge);
    }
    std::vector<std::array<int, 5>> recs;
    for (int ci : piece)
        recs.push_back({relabel.at(d.crossings[ci].e[0]), relabel.at(d.crossings[ci].e[1]),
                        relabel.at(d.crossings[ci].e[2]), relabel.at(d.crossings[ci].e[3]),
                        d.crossings[ci].sign});
    std::sort(recs.begin(), recs.end());
    std::ostringstream os;
    for (auto& r : recs)
        os << "X[" << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << ";"
           << (r[4] > 0 ? "+" : "-") << "]";
    return os.str();
}

} // namespace detail

inline std::string canonical_text(const PlanarDiagram& d) {
    // connected pieces under shared-edge adjacency
    int n = d.crossing_count();
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i)
        parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, std::vector<int>> by_edge;
    for (int ci = 0; ci < n; ++ci)
        for (int v : d.crossings[ci].e)
            by_edge[v].push_back(ci);
    for (auto& [label, cis] : by_edge)
        for (size_t k = 1; k < cis.size(); ++k)
            parent[find(cis[k])] = find(cis[0]);
    std::map<int, std::vector<int>> pieces;
    for (int ci = 0; ci < n; ++ci)
        pieces[find(ci)].push_back(ci);
    std::vector<std::string> texts;
    for (auto& [root, piece] : pieces) {
        std::set<int> edges;
        for (int ci : piece)
            for (int v : d.crossings[ci].e)
                edges.insert(v);
        std::string best;
        for (int e : edges) {
            std::string t = detail::canonical_piece_text(d, piece, e);
            if (best.empty() || t < best)
                best = t;
        }
        texts.push_back(best);
    }
    std::sort(texts.begin(), texts.end());
    std::ostringstream os;
    for (auto& t : texts)
        os << t << " ";
    os << "O:" << d.free_circles;
    return os.str();
}

inline std::string fnv1a_hex(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline std::string canonical_hash(const PlanarDiagram& d) { return fnv1a_hex(canonical_text(d)); }

}
