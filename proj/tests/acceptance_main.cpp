// Acceptance suite: reproduces the published homology tables for the mutant
// pair U ⊔ (K1 # K2) vs K1 ⊔ K2 at n1 = n2 = 3, the torus-link W formulas,
// the Jones mutation invariance, the n2 = 2 isomorphism, and the
// Kinoshita-Terasaka / Conway parity.  One PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kh/fixtures.hpp"
#include "kh/invariants.hpp"
#include "kh/table_io.hpp"
#include "kh/tangle.hpp"

#include "oracles.hpp"

using namespace kh;

namespace {

int failures = 0;
std::vector<std::string> notes;

void note(const std::string& s) { notes.push_back(s); }

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
    notes.clear();
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", number, name.c_str(), s);
    if (!ok) {
        ++failures;
        for (auto& n : notes)
            std::printf("      %s\n", n.c_str());
        if (!error.empty())
            std::printf("      exception: %s\n", error.c_str());
    }
}

bool expect(bool cond, const std::string& what) {
    if (!cond)
        note("failed: " + what);
    return cond;
}

struct GroupRow {
    int i, j, rank, tor2;
};
struct ChainRow {
    int i, j;
    long long c;
};
struct ArrowRow {
    int i, j, r;
};

// Expected grid for the disjoint union of the unknot and the granny knot.
const std::vector<ChainRow> u_granny_chains = {
    {0, -2, 1},
    {-3, -4, 2},  {-2, -4, 6},  {-1, -4, 6},  {0, -4, 4},
    {-6, -6, 1},  {-5, -6, 6},  {-4, -6, 15}, {-3, -6, 28}, {-2, -6, 33}, {-1, -6, 18}, {0, -6, 6},
    {-6, -8, 6},  {-5, -8, 30}, {-4, -8, 60}, {-3, -8, 74}, {-2, -8, 54}, {-1, -8, 18}, {0, -8, 4},
    {-6, -10, 15}, {-5, -10, 60}, {-4, -10, 90}, {-3, -10, 74}, {-2, -10, 33}, {-1, -10, 6}, {0, -10, 1},
    {-6, -12, 20}, {-5, -12, 60}, {-4, -12, 60}, {-3, -12, 28}, {-2, -12, 6},
    {-6, -14, 15}, {-5, -14, 30}, {-4, -14, 15}, {-3, -14, 2},
    {-6, -16, 6}, {-5, -16, 6},
    {-6, -18, 1},
};
const std::vector<GroupRow> u_granny_groups = {
    {0, -2, 1, 0},
    {0, -4, 2, 0},
    {-2, -6, 2, 0},  {0, -6, 1, 0},
    {-2, -8, 2, 2},
    {-4, -10, 1, 0}, {-3, -10, 2, 0}, {-2, -10, 0, 2},
    {-5, -12, 1, 0}, {-4, -12, 1, 1}, {-3, -12, 2, 0},
    {-5, -14, 2, 1}, {-4, -14, 0, 1},
    {-6, -16, 1, 0}, {-5, -16, 1, 1},
    {-6, -18, 1, 0},
};
const std::vector<ArrowRow> u_granny_arrows = {
    {-3, -4, 2},   {-2, -4, 4},   {-1, -4, 2},
    {-6, -6, 1},   {-5, -6, 5},   {-4, -6, 10},  {-3, -6, 18},  {-2, -6, 13}, {-1, -6, 5},
    {-6, -8, 6},   {-5, -8, 24},  {-4, -8, 36},  {-3, -8, 38},  {-2, -8, 14}, {-1, -8, 4},
    {-6, -10, 15}, {-5, -10, 45}, {-4, -10, 44}, {-3, -10, 28}, {-2, -10, 5}, {-1, -10, 1},
    {-6, -12, 20}, {-5, -12, 39}, {-4, -12, 20}, {-3, -12, 6},
    {-6, -14, 15}, {-5, -14, 13}, {-4, -14, 2},
    {-6, -16, 5},
};

// Expected grid for the disjoint union of two trefoils; the chain ranks
// agree with the grid above.
const std::vector<GroupRow> two_trefoils_groups = {
    {0, -2, 1, 0},
    {0, -4, 2, 0},
    {-2, -6, 2, 0},  {0, -6, 1, 0},
    {-2, -8, 2, 2},
    {-4, -10, 1, 0}, {-3, -10, 2, 0}, {-2, -10, 0, 2},
    {-4, -12, 0, 2}, {-3, -12, 2, 0},
    {-5, -14, 2, 1}, {-4, -14, 0, 1},
    {-5, -16, 0, 2},
    {-6, -18, 1, 0},
};
const std::vector<ArrowRow> two_trefoils_arrows = {
    {-3, -4, 2},   {-2, -4, 4},   {-1, -4, 2},
    {-6, -6, 1},   {-5, -6, 5},   {-4, -6, 10},  {-3, -6, 18},  {-2, -6, 13}, {-1, -6, 5},
    {-6, -8, 6},   {-5, -8, 24},  {-4, -8, 36},  {-3, -8, 38},  {-2, -8, 14}, {-1, -8, 4},
    {-6, -10, 15}, {-5, -10, 45}, {-4, -10, 44}, {-3, -10, 28}, {-2, -10, 5}, {-1, -10, 1},
    {-6, -12, 20}, {-5, -12, 40}, {-4, -12, 20}, {-3, -12, 6},
    {-6, -14, 15}, {-5, -14, 13}, {-4, -14, 2},
    {-6, -16, 6},
};

// Common Khovanov homology of the Kinoshita-Terasaka and Conway knots, as
// published for this pair (the chain-level numbers there depend on the
// unspecified 13-crossing diagram and are deliberately not asserted).
const std::vector<GroupRow> kt_conway_groups = {
    {5, 9, 1, 0},
    {4, 7, 1, 0},   {5, 7, 0, 1},
    {3, 5, 1, 0},   {4, 5, 1, 1},
    {1, 3, 1, 0},   {2, 3, 2, 0},   {3, 3, 1, 1},
    {0, 1, 2, 0},   {1, 1, 1, 1},   {2, 1, 1, 2},
    {-1, -1, 1, 0}, {0, -1, 3, 1},  {1, -1, 2, 1},
    {-2, -3, 2, 0}, {-1, -3, 2, 1}, {0, -3, 1, 1},
    {-3, -5, 1, 0}, {-2, -5, 1, 2}, {-1, -5, 1, 1},
    {-4, -7, 1, 0}, {-3, -7, 2, 1}, {-2, -7, 1, 0},
    {-5, -9, 1, 0}, {-4, -9, 1, 1},
    {-5, -11, 1, 1},
    {-6, -13, 1, 0},
};

std::map<Bigrading, AbelianGroup> groups_of(const std::vector<GroupRow>& rows) {
    std::map<Bigrading, AbelianGroup> out;
    for (auto& r : rows) {
        AbelianGroup g;
        g.free_rank = r.rank;
        for (int k = 0; k < r.tor2; ++k)
            g.torsion.push_back(2);
        if (!g.is_trivial())
            out[{r.i, r.j}] = g;
    }
    return out;
}

bool check_table(const HomologyTable& t, const std::vector<ChainRow>& chains,
                 const std::vector<GroupRow>& groups, const std::vector<ArrowRow>& arrows,
                 const std::string& label) {
    bool ok = true;
    std::map<Bigrading, long long> expect_chains;
    for (auto& r : chains)
        expect_chains[{r.i, r.j}] = r.c;
    if (t.chain_ranks != expect_chains) {
        ok = expect(false, label + ": chain ranks differ from the published grid");
        for (auto& [ij, c] : expect_chains)
            if (t.chain_rank(ij.first, ij.second) != c)
                note("  chain (" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                     ") = " + std::to_string(t.chain_rank(ij.first, ij.second)) + ", expected " +
                     std::to_string(c));
    }
    auto expect_groups = groups_of(groups);
    if (t.groups != expect_groups) {
        ok = expect(false, label + ": homology groups differ from the published grid");
        std::set<Bigrading> keys;
        for (auto& [ij, g] : t.groups)
            keys.insert(ij);
        for (auto& [ij, g] : expect_groups)
            keys.insert(ij);
        for (auto& ij : keys) {
            AbelianGroup got = t.group(ij.first, ij.second);
            AbelianGroup want = expect_groups.count(ij) ? expect_groups[ij] : AbelianGroup{};
            if (got != want)
                note("  H(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ") = " +
                     got.str() + ", expected " + want.str());
        }
    }
    std::map<Bigrading, int> expect_arrows;
    for (auto& r : arrows)
        expect_arrows[{r.i, r.j}] = r.r;
    if (t.diff_ranks != expect_arrows) {
        ok = expect(false, label + ": differential ranks differ from the published grid");
        std::set<Bigrading> keys;
        for (auto& [ij, g] : t.diff_ranks)
            keys.insert(ij);
        for (auto& [ij, g] : expect_arrows)
            keys.insert(ij);
        for (auto& ij : keys)
            if (t.diff_rank(ij.first, ij.second) !=
                (expect_arrows.count(ij) ? expect_arrows[ij] : -1))
                note("  d(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ") = " +
                     std::to_string(t.diff_rank(ij.first, ij.second)));
    }
    return ok;
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion(1, "homology table of U disjoint granny reproduced exactly", [] {
        auto [l, lp] = figure3_pair(3, 3);
        HomologyTable t = khovanov_homology(l);
        return check_table(t, u_granny_chains, u_granny_groups, u_granny_arrows, "U+granny grid");
    });

    criterion(2, "homology table of trefoil disjoint trefoil reproduced exactly", [] {
        auto [l, lp] = figure3_pair(3, 3);
        HomologyTable t = khovanov_homology(lp);
        bool ok = check_table(t, u_granny_chains, two_trefoils_groups, two_trefoils_arrows, "two-trefoil grid");
        ok &= expect(t.group(-5, -12).is_trivial(), "H(-5,-12) must vanish");
        AbelianGroup two_torsion;
        two_torsion.torsion = {2, 2};
        ok &= expect(t.group(-4, -12) == two_torsion, "H(-4,-12) = (Z/2)^2");
        ok &= expect(t.group(-6, -16).is_trivial(), "H(-6,-16) must vanish");
        ok &= expect(t.group(-5, -16) == two_torsion, "H(-5,-16) = (Z/2)^2");
        ok &= expect(t.diff_rank(-5, -12) == 40, "differential rank 40 at (-5,-12)");
        return ok;
    });

    criterion(3, "W separates the pair: W(L) = 2 W(K1#K2) even, W(L') odd", [] {
        auto [l, lp] = figure3_pair(3, 3);
        Laurent wl = w_polynomial(poincare_polynomial(khovanov_homology(l)));
        Laurent wlp = w_polynomial(poincare_polynomial(khovanov_homology(lp)));
        Laurent wg = w_polynomial(poincare_polynomial(
            khovanov_homology(connected_sum(torus_link_2(3), torus_link_2(3)))));
        bool ok = expect(wl == wg * 2, "W(L) = 2 W(K1 # K2)");
        ok &= expect(wl.divisible_by(2), "every coefficient of W(L) is even");
        Laurent expect_wlp = Laurent::constant(4);
        expect_wlp.add(-2, 4);
        expect_wlp.add(-3, 4);
        expect_wlp.add(-4, 1);
        expect_wlp.add(-5, 2);
        expect_wlp.add(-6, 1);
        ok &= expect(wlp == expect_wlp, "W(L') = 4 + 4t^-2 + 4t^-3 + t^-4 + 2t^-5 + t^-6");
        Laurent base = torus_w_formula(3);
        ok &= expect(wlp == base * base, "W(L') = W(K1) W(K2)");
        ok &= expect(!(wl == wlp), "W(L) != W(L')");
        ok &= expect(!wlp.divisible_by(2), "W(L') has an odd coefficient");
        return ok;
    });

    criterion(4, "Jones invariance under mutation for (3,3), (4,3), (3,2)", [] {
        bool ok = true;
        for (auto [n1, n2] :
             {std::pair{3, 3}, std::pair{4, 3}, std::pair{3, 2}}) {
            auto [l, lp] = figure3_pair(n1, n2);
            Laurent vl = v_polynomial(poincare_polynomial(khovanov_homology(l)));
            Laurent vlp = v_polynomial(poincare_polynomial(khovanov_homology(lp)));
            std::string tag = "(" + std::to_string(n1) + "," + std::to_string(n2) + ")";
            ok &= expect(vl == vlp, "V(L) = V(L') at " + tag);
            ok &= expect(vl == jones_oracle(l), "V agrees with the bracket oracle for L " + tag);
            ok &= expect(vlp == jones_oracle(lp), "V agrees with the bracket oracle for L' " + tag);
        }
        return ok;
    });

    criterion(5, "closed-form W of (2,n) torus links for n = 2..7", [] {
        bool ok = true;
        for (int n = 2; n <= 7; ++n) {
            Laurent w = w_polynomial(poincare_polynomial(khovanov_homology(torus_link_2(n))));
            ok &= expect(w == torus_w_formula(n), "W formula at n = " + std::to_string(n));
        }
        return ok;
    });

    criterion(6, "remark isomorphism H(L) = H' shifted sums for n1 = 3, 4, 5", [] {
        bool ok = true;
        for (int n1 : {3, 4, 5})
            ok &= expect(remark_isomorphism_check(n1),
                         "remark fails at n1 = " + std::to_string(n1));
        return ok;
    });

    criterion(7, "Kinoshita-Terasaka and Conway knots share their homology", [] {
        HomologyTable kt = khovanov_homology(fixture("kinoshita_terasaka"));
        HomologyTable cw = khovanov_homology(fixture("conway"));
        bool ok = expect(kt.same_groups(cw), "full tables identical");
        auto expect_groups = groups_of(kt_conway_groups);
        if (kt.groups != expect_groups) {
            ok = expect(false, "homology equals the published table for the pair");
            for (auto& [ij, g] : expect_groups)
                if (kt.group(ij.first, ij.second) != g)
                    note("  H(" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                         ") = " + kt.group(ij.first, ij.second).str() + ", expected " + g.str());
        }
        AbelianGroup z;
        z.free_rank = 1;
        ok &= expect(kt.group(5, 9) == z, "H(5,9) = Z");
        ok &= expect(kt.group(-6, -13) == z, "H(-6,-13) = Z");
        int lo = 99, hi = -99;
        for (auto& [ij, g] : kt.groups) {
            lo = std::min(lo, ij.first);
            hi = std::max(hi, ij.first);
        }
        ok &= expect(lo == -6 && hi == 5, "homology support spans i = -6..5");
        return ok;
    });

    criterion(8, "property suite over the fixture corpus", [] {
        bool ok = true;
        // d∘d = 0 everywhere, verified inside the pipeline; Euler characteristic
        // per quantum degree; V equals the bracket oracle
        for (auto& name : fixture_names()) {
            PlanarDiagram d = fixture(name);
            HomologyTable t = khovanov_homology(d);
            std::map<int, long long> chain_sum, hom_sum;
            for (auto& [ij, c] : t.chain_ranks)
                chain_sum[ij.second] += (ij.first % 2 == 0 ? c : -c);
            for (auto& [ij, g] : t.groups)
                hom_sum[ij.second] += (ij.first % 2 == 0 ? g.free_rank : -g.free_rank);
            for (auto& [j, v] : chain_sum)
                ok &= expect(v == hom_sum[j], name + ": Euler characteristic at j = " +
                                                  std::to_string(j));
            ok &= expect(v_polynomial(poincare_polynomial(t)) == jones_oracle(d),
                         name + ": V equals the bracket oracle");
            for (auto& [ij, g] : t.groups)
                for (auto& f : g.torsion)
                    if (f != 2)
                        std::printf("      note: %s has torsion Z/%s at (%d,%d)\n", name.c_str(),
                                    f.str().c_str(), ij.first, ij.second);
        }
        // multiplicativity under disjoint union
        {
            BigradedLaurent a = poincare_polynomial(khovanov_homology(fixture("trefoil")));
            BigradedLaurent b = poincare_polynomial(khovanov_homology(torus_link_2(2)));
            BigradedLaurent ab = poincare_polynomial(
                khovanov_homology(disjoint_union(fixture("trefoil"), torus_link_2(2))));
            ok &= expect(ab == a * b, "Kh multiplicative under disjoint union");
            BigradedLaurent tt = poincare_polynomial(
                khovanov_homology(fixture("trefoil_disjoint_trefoil")));
            ok &= expect(tt == a * a, "Kh(T ⊔ T) = Kh(T)^2");
        }
        // mirror rank symmetry across the corpus
        for (auto& name : fixture_names()) {
            PlanarDiagram d = fixture(name);
            BigradedLaurent kh = poincare_polynomial(khovanov_homology(d));
            BigradedLaurent khm = poincare_polynomial(khovanov_homology(mirror(d)));
            bool sym = true;
            for (auto& [ij, c] : kh.coeffs())
                sym &= khm.coeff(-ij.first, -ij.second) == c;
            ok &= expect(sym, name + ": mirror rank symmetry");
        }
        // mutate involutions and chain-rank bijection of mutant pairs
        for (auto [n1, n2] : {std::pair{3, 3}, std::pair{3, 2}, std::pair{4, 3}}) {
            auto [t1, t2] = figure3_tangles(n1, n2);
            for (int which : {1, 2, 3}) {
                Tangle twice = mutate(mutate(t2, which), which);
                ok &= expect(twice.crossings == t2.crossings, "mutate is an involution");
            }
            auto [l, lp] = mutant_pair(t1, t2, 1);
            HomologyTable hl = khovanov_homology(l);
            HomologyTable hlp = khovanov_homology(lp);
            ok &= expect(hl.chain_ranks == hlp.chain_ranks,
                         "mutant pair chain ranks agree bidegree-by-bidegree");
            ok &= expect(v_polynomial(poincare_polynomial(hl)) ==
                             v_polynomial(poincare_polynomial(hlp)),
                         "mutant pair shares V");
        }
        // Smith normal form vs the determinantal-divisor oracle
        {
            std::mt19937 rng(1955);
            for (int trial = 0; trial < 1000; ++trial) {
                auto dense = kh_test::random_small_matrix(rng);
                SmithForm got = smith_normal_form(kh_test::to_sparse(dense));
                auto want = kh_test::invariant_factors_oracle(dense);
                for (auto& f : want)
                    if (f < 0)
                        f = -f;
                if (got.invariant_factors != want) {
                    ok = expect(false, "SNF oracle disagreement at trial " + std::to_string(trial));
                    break;
                }
                for (size_t k = 1; k < got.invariant_factors.size(); ++k)
                    if (got.invariant_factors[k] % got.invariant_factors[k - 1] != 0) {
                        ok = expect(false, "SNF divisibility chain violated");
                        break;
                    }
            }
        }
        return ok;
    });

    criterion(9, "diagram independence across trefoil presentations", [] {
        HomologyTable a = khovanov_homology(fixture("trefoil"));
        HomologyTable b = khovanov_homology(fixture("trefoil_pd_twin"));
        HomologyTable c = khovanov_homology(fixture("trefoil_kinked"));
        return expect(a.same_groups(b), "PD twin") && expect(a.same_groups(c), "kinked variant");
    });

    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
