#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "twistrep/lattice.hpp"

using namespace twistrep;

namespace {

Rat half(long n) { return Rat(n, 2); }

// Consecutive sums alpha_i + ... + alpha_j over the given index range.
LatticeVector segment(const Lattice& lat, int i, int j) {
    LatticeVector v = lat.zero();
    for (int k = i; k <= j; ++k) v = v + lat.alpha(k);
    return v;
}

}  // namespace

TEST_CASE("bilinear form on the simple roots") {
    for (int l : {2, 3, 4, 5}) {
        Lattice lat(l);
        for (int i = 1; i <= l; ++i) {
            CHECK(lat.norm(lat.alpha(i)) == (i < l ? Rat(1) : half(1)));
            for (int j = i + 1; j <= l; ++j)
                CHECK(lat.gram(lat.alpha(i), lat.alpha(j)) == (j == i + 1 ? half(-1) : Rat(0)));
        }
        CHECK(lat.norm(lat.beta()) == Rat(3, 2));
        for (int i = 1; i <= l; ++i) {
            Rat expected = (i == l) ? half(1) : (i == l - 1 ? half(-1) : Rat(0));
            CHECK(lat.gram(lat.beta(), lat.alpha(i)) == expected);
        }
    }
}

TEST_CASE("lambda pairings") {
    for (int l : {2, 3, 4, 5}) {
        Lattice lat(l);
        LatticeVector lam = lat.lambda();
        for (int i = 1; i <= l; ++i)
            CHECK(lat.gram(lam, lat.alpha(i)) == (i == l ? Rat(1, 4) : Rat(0)));
    }
    // (lambda, lambda) = l/8 follows from the pairings above.
    for (int l : {2, 3, 4, 5}) {
        Lattice lat(l);
        CHECK(lat.norm(lat.lambda()) == Rat(l, 8));
    }
}

TEST_CASE("root class sizes and norms") {
    for (int l : {2, 3, 4, 5}) {
        Lattice lat(l);
        RootSystem rs = lat.roots();
        CHECK(static_cast<long>(rs.short_roots.size()) == 2L * l);
        CHECK(static_cast<long>(rs.middle_roots.size()) == 2L * l * (l - 1));
        CHECK(static_cast<long>(rs.long_roots.size()) == 2L * l);
        for (const auto& r : rs.short_roots) CHECK(lat.norm(r) == half(1));
        for (const auto& r : rs.middle_roots) CHECK(lat.norm(r) == Rat(1));
        for (const auto& r : rs.long_roots) CHECK(lat.norm(r) == Rat(2));
        // Delta_L is exactly the set of doubled short roots.
        std::set<LatticeVector> doubled, longs;
        for (const auto& r : rs.short_roots) doubled.insert(r.scaled(Rat(2)));
        for (const auto& r : rs.long_roots) longs.insert(r);
        CHECK(doubled == longs);
        // All roots lie in Q and are distinct.
        std::set<LatticeVector> all;
        for (const auto& [r, cls] : rs.all()) {
            CHECK(r.in_Q());
            all.insert(r);
        }
        CHECK(static_cast<long>(all.size()) == 2L * l * (l + 1));
    }
}

TEST_CASE("cocycle table and bimultiplicativity") {
    Lattice lat(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            CHECK(lat.cocycle(lat.alpha(i), lat.alpha(j)) == (i == j + 1 ? -1 : 1));

    std::vector<LatticeVector> probes = {
        lat.alpha(1), lat.alpha(2) + lat.alpha(3), lat.alpha(1) - lat.alpha(3).scaled(Rat(2)),
        lat.zero(), lat.alpha(1) + lat.alpha(2) + lat.alpha(3)};
    for (const auto& a : probes)
        for (const auto& b : probes)
            for (const auto& c : probes) {
                CHECK(lat.cocycle(a + b, c) == lat.cocycle(a, c) * lat.cocycle(b, c));
                CHECK(lat.cocycle(a, b + c) == lat.cocycle(a, b) * lat.cocycle(a, c));
            }
}

TEST_CASE("cocycle antisymmetry on root triples") {
    // eps(a,b) = -eps(b,a) whenever a, b, a+b all lie in the finite root
    // system of B_l (short and middle classes).
    for (int l : {2, 3, 4, 5}) {
        Lattice lat(l);
        RootSystem rs = lat.roots();
        std::set<LatticeVector> dot;
        for (const auto& r : rs.short_roots) dot.insert(r);
        for (const auto& r : rs.middle_roots) dot.insert(r);
        long checked = 0;
        for (const auto& a : dot)
            for (const auto& b : dot) {
                if (!dot.count(a + b)) continue;
                CHECK(lat.cocycle(a, b) == -lat.cocycle(b, a));
                ++checked;
            }
        CHECK(checked > 0);
    }
}

TEST_CASE("p and p0 on the long roots") {
    for (int l : {2, 3, 4, 5}) {
        Lattice lat(l);
        for (const auto& r : lat.roots().long_roots) {
            CHECK(lat.p_map(r).is_zero());
            CHECK(lat.p0_map(r).is_zero());
        }
    }
}

TEST_CASE("p and p0 on the middle roots") {
    // p(alpha) = p0(alpha) = +-(alpha_i + ... + alpha_j) with 1 <= i <= j < l.
    // Single segments (i = j) do occur, e.g. alpha_1 itself at every rank, so
    // the range is i <= j rather than the stricter i < j.
    for (int l : {2, 3, 4, 5}) {
        Lattice lat(l);
        std::set<LatticeVector> allowed;
        for (int i = 1; i <= l - 1; ++i)
            for (int j = i; j <= l - 1; ++j) {
                allowed.insert(segment(lat, i, j));
                allowed.insert(-segment(lat, i, j));
            }
        for (const auto& r : lat.roots().middle_roots) {
            LatticeVector p = lat.p_map(r);
            CHECK(p == lat.p0_map(r));
            CHECK(allowed.count(p) == 1);
            CHECK(p.in_QM_Zbeta());
        }
    }
}

TEST_CASE("p and p0 on the short roots") {
    // p(alpha) = +-(alpha_i + ... + alpha_{l-1} + beta) and p0(alpha) = alpha.
    for (int l : {2, 3, 4, 5}) {
        Lattice lat(l);
        std::set<LatticeVector> allowed;
        for (int i = 1; i <= l; ++i) {
            LatticeVector tail = segment(lat, i, l - 1) + lat.beta();
            allowed.insert(tail);
            allowed.insert(-tail);
        }
        for (const auto& r : lat.roots().short_roots) {
            CHECK(lat.p0_map(r) == r);
            LatticeVector p = lat.p_map(r);
            CHECK(allowed.count(p) == 1);
            CHECK(p.in_QM_Zbeta());
        }
    }
}

TEST_CASE("membership predicates") {
    Lattice lat(2);
    CHECK(lat.alpha(1).in_Q());
    CHECK(!lat.beta().in_Q());
    CHECK(!lat.alpha(1).scaled(half(1)).in_Q());
    CHECK((lat.alpha(1) + lat.beta()).in_QM_Zbeta());
    CHECK(!lat.alpha(2).in_QM_Zbeta());
}
