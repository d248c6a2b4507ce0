#include <catch2/catch_amalgamated.hpp>

#include "kh/zlinalg.hpp"
#include "oracles.hpp"

using namespace kh;
using kh_test::invariant_factors_oracle;
using kh_test::random_small_matrix;
using kh_test::to_sparse;

TEST_CASE("rank of simple matrices") {
    SparseIntMatrix z(3, 5);
    CHECK(rank_over_Q(z) == 0);

    SparseIntMatrix m(2, 2);
    m.set(0, 0, 2);
    m.set(0, 1, 4);
    m.set(1, 0, 6);
    m.set(1, 1, 8);
    CHECK(rank_over_Q(m) == 2);

    SparseIntMatrix s(2, 2);
    s.set(0, 0, 1);
    s.set(0, 1, 2);
    s.set(1, 0, 2);
    s.set(1, 1, 4);
    CHECK(rank_over_Q(s) == 1);
}

TEST_CASE("smith normal form on pinned examples") {
    SparseIntMatrix a(1, 1);
    a.set(0, 0, 2);
    SmithForm sa = smith_normal_form(a);
    REQUIRE(sa.invariant_factors == std::vector<bigint>{2});
    CHECK(sa.rank == 1);

    SparseIntMatrix b(2, 2);
    b.set(0, 0, 2);
    b.set(0, 1, 4);
    b.set(1, 0, 6);
    b.set(1, 1, 8);
    SmithForm sb = smith_normal_form(b);
    REQUIRE(sb.invariant_factors == std::vector<bigint>({2, 4}));

    SparseIntMatrix z(4, 2);
    SmithForm sz = smith_normal_form(z);
    CHECK(sz.invariant_factors.empty());
    CHECK(sz.rank == 0);
}

TEST_CASE("smith normal form agrees with the determinantal-divisor oracle") {
    std::mt19937 rng(20030117);
    for (int trial = 0; trial < 1000; ++trial) {
        auto dense = random_small_matrix(rng);
        SparseIntMatrix s = to_sparse(dense);
        SmithForm got = smith_normal_form(s);
        std::vector<bigint> expect = invariant_factors_oracle(dense);
        for (auto& f : expect)
            if (f < 0)
                f = -f;
        REQUIRE(got.invariant_factors == expect);
        // divisibility chain
        for (size_t k = 1; k < got.invariant_factors.size(); ++k)
            REQUIRE(got.invariant_factors[k] % got.invariant_factors[k - 1] == 0);
        // rank over Q must match the factor count
        REQUIRE(rank_over_Q(s) == got.rank);
    }
}

TEST_CASE("product of invariant factors is |det| for square nonsingular input") {
    std::mt19937 rng(42);
    int checked = 0;
    while (checked < 200) {
        auto dense = random_small_matrix(rng);
        if (dense.size() != dense[0].size())
            continue;
        bigint det = kh_test::det_bruteforce(dense);
        if (det == 0)
            continue;
        SmithForm s = smith_normal_form(to_sparse(dense));
        bigint prod = 1;
        for (auto& f : s.invariant_factors)
            prod *= f;
        REQUIRE(prod == (det < 0 ? bigint(-det) : det));
        ++checked;
    }
}

TEST_CASE("prime power torsion splitting") {
    CHECK(prime_power_torsion({1, 2, 12}) == std::vector<bigint>({2, 3, 4}));
    CHECK(prime_power_torsion({}) == std::vector<bigint>{});
    CHECK(prime_power_torsion({2, 2}) == std::vector<bigint>({2, 2}));
}

TEST_CASE("homology of a tiny complex") {
    // 0 -> Z^2 --(0)--> Z^2 --[[2,0],[0,1]]--> Z^2
    SparseIntMatrix d_in(2, 2);
    d_in.set(0, 0, 2);
    d_in.set(1, 1, 1);
    SparseIntMatrix d_out(2, 2); // zero map
    AbelianGroup g = homology_group(d_out, d_in);
    CHECK(g.free_rank == 0);
    CHECK(g.torsion == std::vector<bigint>{2});
}

TEST_CASE("triplet round trip") {
    SparseIntMatrix m(3, 4);
    m.set(0, 1, -7);
    m.set(2, 3, 123456789);
    SparseIntMatrix back = SparseIntMatrix::from_triplets(m.to_triplets());
    CHECK(back.rows() == 3);
    CHECK(back.get(0, 1) == -7);
    CHECK(back.get(2, 3) == 123456789);
}
