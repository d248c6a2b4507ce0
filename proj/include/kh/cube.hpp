#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kh/diagram.hpp"
#include "kh/errors.hpp"
#include "kh/zlinalg.hpp"

namespace kh {

using Bigrading = std::pair<int, int>; // (homological i, quantum j)

// One Kauffman state: a 0/1 smoothing choice per crossing.  Smoothings in PD
// coordinates are crossing-sign independent: 0 joins {e0,e1},{e2,e3} and
// 1 joins {e0,e3},{e1,e2}.  Circles are numbered by smallest member edge
// label; the diagram's crossing-free circles come last.
struct ResolutionVertex {
    uint32_t mask = 0;
    int circles = 0;
    std::vector<int> edge_circle; // dense edge index -> circle
};

// A cube edge flips one crossing 0 -> 1 and either merges two circles or
// splits one.  sign = (-1)^{number of 1-bits below the flipped position}.
struct CubeEdge {
    uint32_t from_mask = 0, to_mask = 0;
    int crossing = 0;
    int sign = 1;
    bool is_merge = false;
    int from_a = -1, from_b = -1; // merge inputs / split input (from_a)
    int to_a = -1, to_b = -1;     // merge output (to_a) / split outputs
    std::vector<int> circle_map;  // from-circle -> to-circle (-1 for the split input)
};

class Cube {
  public:
    PlanarDiagram d;
    int n = 0;
    std::vector<int> labels; // dense edge index -> label, ascending
    std::unordered_map<int, int> label_index;
    std::vector<ResolutionVertex> verts;          // size 2^n
    std::vector<std::vector<CubeEdge>> edges_from; // indexed by from-mask

    int circles(uint32_t mask) const { return verts[mask].circles; }
};

namespace detail {

struct CircleFind {
    std::vector<int> parent;
    explicit CircleFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace detail

inline ResolutionVertex resolve(const PlanarDiagram& d, uint32_t mask,
                                const std::vector<int>& labels,
                                const std::unordered_map<int, int>& label_index) {
    int ne = static_cast<int>(labels.size());
    detail::CircleFind uf(ne);
    for (int c = 0; c < d.crossing_count(); ++c) {
        const auto& e = d.crossings[c].e;
        int a = label_index.at(e[0]), b = label_index.at(e[1]);
        int cc = label_index.at(e[2]), dd = label_index.at(e[3]);
        if ((mask >> c) & 1u) {
            uf.unite(a, dd);
            uf.unite(b, cc);
        } else {
            uf.unite(a, b);
            uf.unite(cc, dd);
        }
    }
    ResolutionVertex v;
    v.mask = mask;
    v.edge_circle.assign(ne, -1);
    std::map<int, int> root_to_circle; // keyed by root; roots visited in label order
    for (int i = 0; i < ne; ++i) {
        int r = uf.find(i);
        auto it = root_to_circle.find(r);
        if (it == root_to_circle.end())
            it = root_to_circle.emplace(r, static_cast<int>(root_to_circle.size())).first;
        v.edge_circle[i] = it->second;
    }
    v.circles = static_cast<int>(root_to_circle.size()) + d.free_circles;
    return v;
}

// Convenience overload: mask given as a 0/1 string, least significant
// crossing first.
inline ResolutionVertex resolve(const PlanarDiagram& d, const std::string& mask_bits) {
    if (static_cast<int>(mask_bits.size()) != d.crossing_count())
        throw parse_error("resolve: mask length != crossing count");
    uint32_t mask = 0;
    for (size_t k = 0; k < mask_bits.size(); ++k) {
        if (mask_bits[k] == '1')
            mask |= (1u << k);
        else if (mask_bits[k] != '0')
            throw parse_error("resolve: mask must be 0/1");
    }
    auto labels = d.edge_labels();
    std::unordered_map<int, int> idx;
    for (size_t i = 0; i < labels.size(); ++i)
        idx[labels[i]] = static_cast<int>(i);
    return resolve(d, mask, labels, idx);
}

inline Cube build_cube(const PlanarDiagram& d, int cap = 16) {
    if (d.crossing_count() > cap)
        throw cap_error("crossing count " + std::to_string(d.crossing_count()) +
                        " exceeds cap " + std::to_string(cap));
    Cube cube;
    cube.d = d;
    cube.n = d.crossing_count();
    cube.labels = d.edge_labels();
    for (size_t i = 0; i < cube.labels.size(); ++i)
        cube.label_index[cube.labels[i]] = static_cast<int>(i);
    uint32_t total = 1u << cube.n;
    cube.verts.reserve(total);
    for (uint32_t m = 0; m < total; ++m)
        cube.verts.push_back(resolve(d, m, cube.labels, cube.label_index));

    cube.edges_from.resize(total);
    for (uint32_t m = 0; m < total; ++m) {
        for (int c = 0; c < cube.n; ++c) {
            if ((m >> c) & 1u)
                continue;
            const ResolutionVertex& from = cube.verts[m];
            const ResolutionVertex& to = cube.verts[m | (1u << c)];
            CubeEdge ce;
            ce.from_mask = m;
            ce.to_mask = m | (1u << c);
            ce.crossing = c;
            ce.sign = (std::popcount(m & ((1u << c) - 1u)) % 2 == 0) ? 1 : -1;
            const auto& e = d.crossings[c].e;
            int P = from.edge_circle[cube.label_index.at(e[0])];
            int Q = from.edge_circle[cube.label_index.at(e[2])];
            int R = to.edge_circle[cube.label_index.at(e[0])];
            int S = to.edge_circle[cube.label_index.at(e[1])];
            int nfrom_edges = from.circles - d.free_circles;
            ce.circle_map.assign(from.circles, -1);
            // crossing-free circles sit at the tail in both states
            for (int k = 0; k < d.free_circles; ++k)
                ce.circle_map[nfrom_edges + k] = (to.circles - d.free_circles) + k;
            if (P != Q) {
                ce.is_merge = true;
                ce.from_a = P;
                ce.from_b = Q;
                ce.to_a = R;
                if (to.circles != from.circles - 1)
                    throw consistency_error(
                        "cube: merge edge with wrong circle count (non-planar diagram data?)");
            } else {
                ce.is_merge = false;
                ce.from_a = P;
                ce.to_a = R;
                ce.to_b = S;
                if (R == S || to.circles != from.circles + 1)
                    throw consistency_error(
                        "cube: split edge with wrong circle count (non-planar diagram data?)");
            }
            // uninvolved circles keep their edge sets; map via any member edge
            for (size_t i = 0; i < from.edge_circle.size(); ++i) {
                int cf = from.edge_circle[i];
                if (ce.circle_map[cf] == -1 && !(cf == P || cf == Q))
                    ce.circle_map[cf] = to.edge_circle[i];
            }
            if (ce.is_merge) {
                ce.circle_map[P] = R;
                ce.circle_map[Q] = R;
            }
            cube.edges_from[m].push_back(std::move(ce));
        }
    }
    return cube;
}

// Gradings of an enhanced state: i = |mask| - n_minus,
// j = (#1-labels - #x-labels) + |mask| + n_plus - 2*n_minus.
inline Bigrading gradings(const PlanarDiagram& d, uint32_t mask, int ones, int xs) {
    int w = std::popcount(mask);
    return {w - d.n_minus, (ones - xs) + w + d.n_plus - 2 * d.n_minus};
}

// Number of enhanced states in each bidegree.
inline std::map<Bigrading, long long> chain_ranks(const Cube& cube) {
    std::map<Bigrading, long long> out;
    // binomial table up to the largest circle count
    int cmax = 0;
    for (auto& v : cube.verts)
        cmax = std::max(cmax, v.circles);
    std::vector<std::vector<long long>> binom(cmax + 1, std::vector<long long>(cmax + 1, 0));
    for (int a = 0; a <= cmax; ++a) {
        binom[a][0] = 1;
        for (int b = 1; b <= a; ++b)
            binom[a][b] = binom[a - 1][b - 1] + (b <= a - 1 ? binom[a - 1][b] : 0);
    }
    for (auto& v : cube.verts) {
        for (int xs = 0; xs <= v.circles; ++xs) {
            Bigrading ij = gradings(cube.d, v.mask, v.circles - xs, xs);
            out[ij] += binom[v.circles][xs];
        }
    }
    return out;
}

// Ordered basis of a chain group: states sorted by vertex mask, then by the
// label vector lexicographically (1 < x, circle 0 most significant).
struct BidegreeBasis {
    int i = 0, j = 0;
    std::vector<std::pair<uint32_t, uint32_t>> states; // (mask, xbits)
    std::unordered_map<uint64_t, int> index;

    static uint64_t key(uint32_t mask, uint32_t xbits) {
        return (static_cast<uint64_t>(mask) << 32) | xbits;
    }
    int size() const { return static_cast<int>(states.size()); }
    int find(uint32_t mask, uint32_t xbits) const {
        auto it = index.find(key(mask, xbits));
        return it == index.end() ? -1 : it->second;
    }
};

inline std::map<Bigrading, BidegreeBasis> enumerate_bases(const Cube& cube) {
    std::map<Bigrading, BidegreeBasis> out;
    for (auto& v : cube.verts) {
        int c = v.circles;
        for (uint32_t xbits = 0; xbits < (1u << c); ++xbits) {
            int xs = std::popcount(xbits);
            Bigrading ij = gradings(cube.d, v.mask, c - xs, xs);
            auto& basis = out[ij];
            basis.i = ij.first;
            basis.j = ij.second;
            basis.states.emplace_back(v.mask, xbits);
        }
    }
    for (auto& [ij, basis] : out) {
        std::sort(basis.states.begin(), basis.states.end(),
                  [&](const auto& a, const auto& b) {
                      if (a.first != b.first)
                          return a.first < b.first;
                      // lexicographic over label vectors: compare from circle 0 up
                      uint32_t xa = a.second, xb = b.second;
                      uint32_t diff = xa ^ xb;
                      if (diff == 0)
                          return false;
                      uint32_t low = diff & (~diff + 1u); // lowest differing circle
                      return (xa & low) == 0;             // 1 < x
                  });
        for (int k = 0; k < basis.size(); ++k)
            basis.index.emplace(BidegreeBasis::key(basis.states[k].first, basis.states[k].second),
                                k);
    }
    return out;
}

// Matrix of d : C^{i,j} -> C^{i+1,j} in the ordered bases.  Merge applies
// m(1,1)=1, m(1,x)=m(x,1)=x, m(x,x)=0; split applies D(1)=1@x+x@1, D(x)=x@x;
// every entry is multiplied by the cube edge sign.
inline SparseIntMatrix differential_matrix(const Cube& cube, const BidegreeBasis& from,
                                           const BidegreeBasis* to) {
    SparseIntMatrix mat(to ? to->size() : 0, from.size());
    if (!to)
        return mat;
    for (int col = 0; col < from.size(); ++col) {
        auto [mask, xbits] = from.states[col];
        for (const CubeEdge& ce : cube.edges_from[mask]) {
            // push labels through the circle correspondence
            uint32_t base = 0;
            int nc = static_cast<int>(ce.circle_map.size());
            for (int ci = 0; ci < nc; ++ci)
                if (((xbits >> ci) & 1u) && ce.circle_map[ci] >= 0 &&
                    !(ce.is_merge && (ci == ce.from_a || ci == ce.from_b)))
                    base |= 1u << ce.circle_map[ci];
            if (ce.is_merge) {
                bool xa = (xbits >> ce.from_a) & 1u;
                bool xb = (xbits >> ce.from_b) & 1u;
                if (xa && xb)
                    continue; // m(x,x) = 0
                uint32_t out = base;
                if (xa || xb)
                    out |= 1u << ce.to_a;
                int row = to->find(ce.to_mask, out);
                if (row < 0)
                    throw consistency_error("differential: target state missing");
                mat.add(row, col, ce.sign);
            } else {
                bool x_in = (xbits >> ce.from_a) & 1u;
                if (x_in) {
                    uint32_t out = base | (1u << ce.to_a) | (1u << ce.to_b);
                    int row = to->find(ce.to_mask, out);
                    if (row < 0)
                        throw consistency_error("differential: target state missing");
                    mat.add(row, col, ce.sign);
                } else {
                    for (uint32_t out : {base | (1u << ce.to_a), base | (1u << ce.to_b)}) {
                        int row = to->find(ce.to_mask, out);
                        if (row < 0)
                            throw consistency_error("differential: target state missing");
                        mat.add(row, col, ce.sign);
                    }
                }
            }
        }
    }
    return mat;
}

// Spec-facing wrapper: the differential leaving bidegree (i, j).
inline SparseIntMatrix differential_matrix(const Cube& cube, int i, int j) {
    auto bases = enumerate_bases(cube);
    auto it = bases.find({i, j});
    if (it == bases.end())
        return SparseIntMatrix(0, 0);
    auto jt = bases.find({i + 1, j});
    return differential_matrix(cube, it->second, jt == bases.end() ? nullptr : &jt->second);
}

// Structured-text dump of the cube for differential-rank auditing.
inline std::string dump_cube(const Cube& cube) {
    std::ostringstream os;
    for (auto& v : cube.verts) {
        os << "vertex ";
        for (int c = 0; c < cube.n; ++c)
            os << ((v.mask >> c) & 1u);
        os << " circles " << v.circles << "\n";
    }
    for (auto& vec : cube.edges_from)
        for (auto& ce : vec) {
            os << "edge ";
            for (int c = 0; c < cube.n; ++c)
                os << ((ce.from_mask >> c) & 1u);
            os << " -> ";
            for (int c = 0; c < cube.n; ++c)
                os << ((ce.to_mask >> c) & 1u);
            os << " " << (ce.is_merge ? "merge" : "split") << " sign " << ce.sign << "\n";
        }
    return os.str();
}

}
