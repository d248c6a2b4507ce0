#pragma once

// Test-only oracles, kept independent of the library's elimination code.

#include <random>
#include <vector>

#include "kh/zlinalg.hpp"

namespace kh_test {

using kh::bigint;

// Determinant by cofactor expansion (matrices here are at most 4x4).
inline bigint det_bruteforce(const std::vector<std::vector<bigint>>& a) {
    size_t n = a.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return a[0][0];
    bigint acc = 0;
    int sgn = 1;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<bigint>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<bigint> row;
            for (size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(a[r][k]);
            minor.push_back(row);
        }
        acc += sgn * a[0][c] * det_bruteforce(minor);
        sgn = -sgn;
    }
    return acc;
}

// Invariant factors via determinantal divisors: d_k = gcd of all k.k minors,
// s_k = d_k / d_{k-1}.  Independent route to the Smith normal form.
inline std::vector<bigint> invariant_factors_oracle(const std::vector<std::vector<bigint>>& a) {
    int m = static_cast<int>(a.size());
    int n = m ? static_cast<int>(a[0].size()) : 0;
    std::vector<bigint> divisors; // d_1, d_2, ...
    for (int k = 1; k <= std::min(m, n); ++k) {
        // enumerate k-subsets of rows and columns
        std::vector<int> rs(k), cs(k);
        for (int i = 0; i < k; ++i)
            rs[i] = i;
        bigint g = 0;
        for (;;) {
            for (int i = 0; i < k; ++i)
                cs[i] = i;
            for (;;) {
                std::vector<std::vector<bigint>> sub(k, std::vector<bigint>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        sub[i][j] = a[rs[i]][cs[j]];
                g = kh::big_gcd(g, det_bruteforce(sub));
                int p = k - 1;
                while (p >= 0 && cs[p] == n - k + p)
                    --p;
                if (p < 0)
                    break;
                ++cs[p];
                for (int q = p + 1; q < k; ++q)
                    cs[q] = cs[q - 1] + 1;
            }
            int p = k - 1;
            while (p >= 0 && rs[p] == m - k + p)
                --p;
            if (p < 0)
                break;
            ++rs[p];
            for (int q = p + 1; q < k; ++q)
                rs[q] = rs[q - 1] + 1;
        }
        if (g == 0)
            break;
        divisors.push_back(g);
    }
    std::vector<bigint> factors;
    bigint prev = 1;
    for (auto& d : divisors) {
        factors.push_back(d / prev);
        prev = d;
    }
    return factors;
}

inline std::vector<std::vector<bigint>> random_small_matrix(std::mt19937& rng) {
    std::uniform_int_distribution<int> dim(1, 4), entry(-3, 3);
    int m = dim(rng), n = dim(rng);
    std::vector<std::vector<bigint>> a(m, std::vector<bigint>(n));
    for (auto& row : a)
        for (auto& v : row)
            v = entry(rng);
    return a;
}

inline kh::SparseIntMatrix to_sparse(const std::vector<std::vector<bigint>>& a) {
    int m = static_cast<int>(a.size());
    int n = m ? static_cast<int>(a[0].size()) : 0;
    kh::SparseIntMatrix s(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            s.set(i, j, a[i][j]);
    return s;
}

}
