#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kh/errors.hpp"

namespace kh {

using bigint = boost::multiprecision::cpp_int;

inline bigint big_gcd(bigint a, bigint b) {
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        bigint t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Sparse matrix over Z. Stored row-major; zero entries are never kept.
class SparseIntMatrix {
  public:
    SparseIntMatrix() : rows_(0), cols_(0) {}
    SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, bigint v) {
        check(r, c);
        if (v == 0)
            data_[r].erase(c);
        else
            data_[r][c] = std::move(v);
    }

    void add(int r, int c, const bigint& v) {
        check(r, c);
        auto it = data_[r].find(c);
        if (it == data_[r].end()) {
            if (v != 0)
                data_[r].emplace(c, v);
        } else {
            it->second += v;
            if (it->second == 0)
                data_[r].erase(it);
        }
    }

    bigint get(int r, int c) const {
        check(r, c);
        auto it = data_[r].find(c);
        return it == data_[r].end() ? bigint(0) : it->second;
    }

    const std::map<int, bigint>& row(int r) const { return data_[r]; }

    long long nnz() const {
        long long n = 0;
        for (auto& row : data_)
            n += static_cast<long long>(row.size());
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    // this * other (for d∘d checks).
    SparseIntMatrix multiply(const SparseIntMatrix& other) const {
        if (cols_ != other.rows_)
            throw consistency_error("matrix product shape mismatch");
        SparseIntMatrix out(rows_, other.cols_);
        for (int r = 0; r < rows_; ++r) {
            std::map<int, bigint> acc;
            for (auto& [k, v] : data_[r])
                for (auto& [c, w] : other.data_[k])
                    acc[c] += v * w;
            for (auto& [c, v] : acc)
                if (v != 0)
                    out.data_[r].emplace(c, v);
        }
        return out;
    }

    // "r c value" triplets, one per line, header "rows cols".
    std::string to_triplets() const {
        std::ostringstream os;
        os << rows_ << " " << cols_ << "\n";
        for (int r = 0; r < rows_; ++r)
            for (auto& [c, v] : data_[r])
                os << r << " " << c << " " << v << "\n";
        return os.str();
    }

    static SparseIntMatrix from_triplets(const std::string& text) {
        std::istringstream is(text);
        int rows = 0, cols = 0;
        if (!(is >> rows >> cols))
            throw parse_error("triplet matrix: missing header");
        SparseIntMatrix m(rows, cols);
        int r, c;
        bigint v;
        while (is >> r >> c >> v)
            m.set(r, c, v);
        return m;
    }

  private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw consistency_error("matrix index out of range");
    }

    int rows_, cols_;
    std::vector<std::map<int, bigint>> data_;
};

struct SmithForm {
    std::vector<bigint> invariant_factors; // d1 | d2 | ... | dr, all positive
    int rank = 0;
};

struct AbelianGroup {
    int free_rank = 0;
    std::vector<bigint> torsion; // prime-power orders, sorted ascending

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    // "Z^2 + Z/2 + Z/4", "0" when trivial.
    std::string str() const {
        if (is_trivial())
            return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank > 0) {
            os << "Z";
            if (free_rank > 1)
                os << "^" << free_rank;
            first = false;
        }
        for (auto& t : torsion) {
            if (!first)
                os << " + ";
            os << "Z/" << t;
            first = false;
        }
        return os.str();
    }
};

namespace detail {

// Sparse elimination workspace shared by rank and Smith normal form.
// Rows are hash maps col->value; col_rows tracks which active rows touch a column.
struct ElimWorkspace {
    int nrows, ncols;
    std::vector<std::unordered_map<int, bigint>> row;
    std::vector<std::unordered_set<int>> col_rows;
    std::vector<char> row_active, col_active;
    // (nnz, col) queue; entries may be stale and are revalidated on pop.
    std::set<std::pair<int, int>> col_queue;

    explicit ElimWorkspace(const SparseIntMatrix& m)
        : nrows(m.rows()), ncols(m.cols()), row(m.rows()), col_rows(m.cols()),
          row_active(m.rows(), 1), col_active(m.cols(), 1) {
        for (int r = 0; r < nrows; ++r)
            for (auto& [c, v] : m.row(r)) {
                row[r].emplace(c, v);
                col_rows[c].insert(r);
            }
        for (int c = 0; c < ncols; ++c)
            if (!col_rows[c].empty())
                col_queue.emplace(static_cast<int>(col_rows[c].size()), c);
    }

    void queue_touch(int c) {
        if (col_active[c] && !col_rows[c].empty())
            col_queue.emplace(static_cast<int>(col_rows[c].size()), c);
    }

    // row[r] := a*row[r] + b*row[src]; returns false if the row became empty.
    void axpy(int r, const bigint& a, const bigint& b, int src) {
        auto& dst = row[r];
        if (a != 1)
            for (auto& [c, v] : dst)
                v *= a;
        for (auto& [c, w] : row[src]) {
            auto it = dst.find(c);
            if (it == dst.end()) {
                bigint nv = b * w;
                if (nv != 0) {
                    dst.emplace(c, std::move(nv));
                    col_rows[c].insert(r);
                    queue_touch(c);
                }
            } else {
                it->second += b * w;
                if (it->second == 0) {
                    dst.erase(it);
                    col_rows[c].erase(r);
                    queue_touch(c);
                }
            }
        }
    }

    // Divide the row by the gcd of its entries to keep growth in check.
    void strip_content(int r) {
        auto& m = row[r];
        if (m.empty())
            return;
        bigint g = 0;
        for (auto& [c, v] : m) {
            g = big_gcd(g, v);
            if (g == 1)
                return;
        }
        if (g > 1)
            for (auto& [c, v] : m)
                v /= g;
    }

    void retire_row(int r) {
        for (auto& [c, v] : row[r]) {
            col_rows[c].erase(r);
            queue_touch(c);
        }
        row[r].clear();
        row_active[r] = 0;
    }

    void retire_col(int c) { col_active[c] = 0; }

    // Pop the active column with fewest entries. Returns -1 when none left.
    int pop_min_col() {
        while (!col_queue.empty()) {
            auto [n, c] = *col_queue.begin();
            col_queue.erase(col_queue.begin());
            if (!col_active[c])
                continue;
            int cur = static_cast<int>(col_rows[c].size());
            if (cur == 0)
                continue;
            if (cur != n) {
                col_queue.emplace(cur, c);
                continue;
            }
            return c;
        }
        return -1;
    }
};

// Dense Smith normal form for the small residue left after unit pivoting.
// Classic algorithm; only unimodular row/column operations.
inline std::vector<bigint> dense_snf(std::vector<std::vector<bigint>> a) {
    std::vector<bigint> factors;
    int m = static_cast<int>(a.size());
    int n = m ? static_cast<int>(a[0].size()) : 0;
    int t = 0;
    auto abs_of = [](const bigint& v) { return v < 0 ? bigint(-v) : v; };
    while (t < m && t < n) {
        // locate minimal nonzero entry in the trailing block
        int pi = -1, pj = -1;
        bigint best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (a[i][j] != 0) {
                    bigint ab = abs_of(a[i][j]);
                    if (pi < 0 || ab < best) {
                        best = ab;
                        pi = i;
                        pj = j;
                    }
                }
        if (pi < 0)
            break;
        std::swap(a[t], a[pi]);
        for (int i = t; i < m; ++i)
            std::swap(a[i][t], a[i][pj]);

        bool again = true;
        while (again) {
            again = false;
            // clear the pivot column, restarting if a remainder shrinks the pivot
            for (int i = t + 1; i < m; ++i) {
                if (a[i][t] == 0)
                    continue;
                bigint q = a[i][t] / a[t][t];
                for (int j = t; j < n; ++j)
                    a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    again = true;
                    break;
                }
            }
            if (again)
                continue;
            for (int j = t + 1; j < n; ++j) {
                if (a[t][j] == 0)
                    continue;
                bigint q = a[t][j] / a[t][t];
                for (int i = t; i < m; ++i)
                    a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (int i = t; i < m; ++i)
                        std::swap(a[i][t], a[i][j]);
                    again = true;
                    break;
                }
            }
            if (again)
                continue;
            // pivot must divide the whole trailing block; if not, pull the
            // offending row up and restart the reduction
            for (int i = t + 1; i < m && !again; ++i)
                for (int j = t + 1; j < n && !again; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (int k = t; k < n; ++k)
                            a[t][k] += a[i][k];
                        again = true;
                    }
        }
        factors.push_back(abs_of(a[t][t]));
        ++t;
    }
    return factors;
}

} // namespace detail

// Rank of m over Q via exact fraction-free sparse elimination.
inline int rank_over_Q(const SparseIntMatrix& m) {
    detail::ElimWorkspace w(m);
    int rank = 0;
    for (;;) {
        int c0 = w.pop_min_col();
        if (c0 < 0)
            break;
        // pick the pivot row: prefer units, then short rows
        int r0 = -1;
        bool unit = false;
        size_t best_len = 0;
        for (int r : w.col_rows[c0]) {
            const bigint& v = w.row[r].at(c0);
            bool u = (v == 1 || v == -1);
            size_t len = w.row[r].size();
            bool better = r0 < 0 || (u && !unit) ||
                          (u == unit && (len < best_len || (len == best_len && r < r0)));
            if (better) {
                r0 = r;
                unit = u;
                best_len = len;
            }
        }
        bigint p = w.row[r0].at(c0);
        std::vector<int> others(w.col_rows[c0].begin(), w.col_rows[c0].end());
        std::sort(others.begin(), others.end());
        for (int r : others) {
            if (r == r0)
                continue;
            bigint a = w.row[r].at(c0);
            if (unit) {
                // row_r -= (a*p) * row_r0  (p^2 == 1)
                w.axpy(r, 1, -(a * p), r0);
            } else {
                bigint g = big_gcd(p, a);
                w.axpy(r, p / g, -(a / g), r0);
                w.strip_content(r);
            }
        }
        w.retire_row(r0);
        w.retire_col(c0);
        ++rank;
    }
    return rank;
}

// Smith normal form: unit pivots are peeled off sparsely (unimodular row ops
// only; with a ±1 pivot the implied column ops touch nothing else), then the
// residue is finished densely.
inline SmithForm smith_normal_form(const SparseIntMatrix& m) {
    detail::ElimWorkspace w(m);
    int ones = 0;
    std::vector<int> skipped;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int c : skipped) {
            w.col_active[c] = 1;
            w.queue_touch(c);
        }
        skipped.clear();
        for (;;) {
            int c0 = w.pop_min_col();
            if (c0 < 0)
                break;
            int r0 = -1;
            size_t best_len = 0;
            for (int r : w.col_rows[c0]) {
                const bigint& v = w.row[r].at(c0);
                if (v == 1 || v == -1) {
                    size_t len = w.row[r].size();
                    if (r0 < 0 || len < best_len || (len == best_len && r < r0)) {
                        r0 = r;
                        best_len = len;
                    }
                }
            }
            if (r0 < 0) {
                // no unit here right now; revisit after further eliminations
                skipped.push_back(c0);
                w.retire_col(c0);
                continue;
            }
            bigint p = w.row[r0].at(c0);
            std::vector<int> others(w.col_rows[c0].begin(), w.col_rows[c0].end());
            std::sort(others.begin(), others.end());
            for (int r : others) {
                if (r == r0)
                    continue;
                bigint a = w.row[r].at(c0);
                w.axpy(r, 1, -(a * p), r0);
            }
            w.retire_row(r0);
            w.retire_col(c0);
            ++ones;
            progress = true;
        }
    }
    // reactivate skipped columns for the dense residue
    std::vector<int> live_rows, live_cols;
    for (int r = 0; r < w.nrows; ++r)
        if (w.row_active[r] && !w.row[r].empty())
            live_rows.push_back(r);
    {
        std::set<int> cols;
        for (int r : live_rows)
            for (auto& [c, v] : w.row[r])
                cols.insert(c);
        live_cols.assign(cols.begin(), cols.end());
    }
    SmithForm out;
    out.invariant_factors.assign(ones, bigint(1));
    if (!live_rows.empty()) {
        std::unordered_map<int, int> col_index;
        for (size_t i = 0; i < live_cols.size(); ++i)
            col_index[live_cols[i]] = static_cast<int>(i);
        std::vector<std::vector<bigint>> dense(live_rows.size(),
                                               std::vector<bigint>(live_cols.size(), 0));
        for (size_t i = 0; i < live_rows.size(); ++i)
            for (auto& [c, v] : w.row[live_rows[i]])
                dense[i][col_index[c]] = v;
        std::vector<bigint> res = detail::dense_snf(std::move(dense));
        for (auto& d : res)
            if (d != 0)
                out.invariant_factors.push_back(d);
    }
    std::sort(out.invariant_factors.begin(), out.invariant_factors.end());
    out.rank = static_cast<int>(out.invariant_factors.size());
    return out;
}

// Split invariant factors > 1 into prime powers; torsion is reported at
// prime-power granularity (the usual tables count Z/2 factors directly).
inline std::vector<bigint> prime_power_torsion(const std::vector<bigint>& factors) {
    std::vector<bigint> out;
    for (bigint d : factors) {
        if (d <= 1)
            continue;
        for (bigint p = 2; p * p <= d; ++p) {
            if (d % p == 0) {
                bigint pk = 1;
                while (d % p == 0) {
                    pk *= p;
                    d /= p;
                }
                out.push_back(pk);
            }
        }
        if (d > 1)
            out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Homology at the middle of  C^{in} --d_in--> C --d_out--> C^{out}.
// free rank = dim C - rank d_out - rank d_in; torsion from SNF(d_in).
inline AbelianGroup homology_group(const SparseIntMatrix& d_out, const SparseIntMatrix& d_in) {
    if (d_out.cols() != d_in.rows())
        throw consistency_error("homology_group: chain dimension mismatch");
    if (!d_out.multiply(d_in).is_zero())
        throw consistency_error("homology_group: d_out * d_in != 0");
    SmithForm s_in = smith_normal_form(d_in);
    AbelianGroup g;
    g.free_rank = d_out.cols() - rank_over_Q(d_out) - s_in.rank;
    g.torsion = prime_power_torsion(s_in.invariant_factors);
    return g;
}

}
