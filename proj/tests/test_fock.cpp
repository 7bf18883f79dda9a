#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "twistrep/fock.hpp"

using namespace twistrep;

namespace {

// Seeded random monomial with exponent height <= 2 and a few creation
// oscillators of doubled degree down to -4.
FockMonomial random_monomial(const FockSpace& V, std::mt19937& rng) {
    const int l = V.rank();
    std::uniform_int_distribution<long> coeff(-2, 2);
    std::vector<long> r(static_cast<size_t>(l));
    for (auto& c : r) c = coeff(rng);
    FockVector v;
    v.add_term(V.exponential(r), Cyc8(1));
    std::uniform_int_distribution<int> count(0, 3), deg(1, 4), dir(0, l);
    for (int k = count(rng); k > 0; --k) {
        int d2 = -deg(rng);
        int slot = dir(rng) % (l + 1);
        while (!FockSpace::sector_ok(slot, d2, l)) slot = (slot + 1) % (l + 1);
        LatticeVector h = V.lattice().zero();
        h.coeffs[static_cast<size_t>(slot)] = 1;
        v = V.create(h, d2, v);
    }
    REQUIRE(v.terms.size() == 1);
    return v.terms.begin()->first;
}

LatticeVector unit(const Lattice& lat, int slot) {
    LatticeVector h = lat.zero();
    h.coeffs[static_cast<size_t>(slot)] = 1;
    return h;
}

}  // namespace

TEST_CASE("vacuum and exponentials") {
    Lattice lat(2);
    FockSpace V(lat);
    FockMonomial vac = V.vacuum();
    CHECK(vac.osc.empty());
    CHECK(vac.exp == std::vector<long>{0, 0});
    CHECK(V.shifted_exponent(vac) == lat.lambda());
    CHECK(V.degree_of(vac) == V.top_degree());
    CHECK(V.top_degree() == Rat(-1, 8));

    FockMonomial e = V.exponential({1, -2});
    CHECK(V.exponent_vector(e) == lat.alpha(1) - lat.alpha(2).scaled(Rat(2)));
    // deg = -1/2 (r+lambda, r+lambda).
    LatticeVector s = V.shifted_exponent(e);
    CHECK(V.degree_of(e) == -lat.norm(s) / 2);
}

TEST_CASE("zero modes and the central element") {
    Lattice lat(3);
    FockSpace V(lat);
    FockVector v;
    v.add_term(V.exponential({1, 0, -1}), Cyc8(1));
    for (int i = 1; i <= 3; ++i) {
        FockVector w = V.zero_mode(lat.alpha(i), v);
        Rat eig = lat.gram(lat.alpha(i), V.shifted_exponent(v.terms.begin()->first));
        CHECK(w == v.scaled(Cyc8(eig)));
    }
    CHECK(V.central(v) == v);
}

TEST_CASE("Heisenberg relations on seeded random monomials") {
    std::mt19937 rng(20260823);
    for (int l : {2, 3}) {
        Lattice lat(l);
        FockSpace V(lat);
        for (int trial = 0; trial < 60; ++trial) {
            FockVector v;
            v.add_term(random_monomial(V, rng), Cyc8(1));
            std::uniform_int_distribution<int> deg(1, 3), dir(0, l);
            int m2 = deg(rng), sx = dir(rng), sy = dir(rng);
            std::uniform_int_distribution<int> parity(0, 1);
            if (parity(rng)) m2 = -m2;
            int n2 = -m2 + (parity(rng) ? 0 : 2 * (parity(rng) ? 1 : -1));
            while (!FockSpace::sector_ok(sx, m2, l)) sx = (sx + 1) % (l + 1);
            while (!FockSpace::sector_ok(sy, n2, l)) sy = (sy + 1) % (l + 1);
            LatticeVector x = unit(lat, sx), y = unit(lat, sy);
            FockVector xy = V.heisenberg(x, m2, V.heisenberg(y, n2, v));
            FockVector yx = V.heisenberg(y, n2, V.heisenberg(x, m2, v));
            FockVector expected;
            if (m2 + n2 == 0) expected = v.scaled(Cyc8(Rat(m2, 2) * lat.gram(x, y)));
            CHECK(xy - yx == expected);
        }
    }
}

TEST_CASE("degree bookkeeping of modes") {
    Lattice lat(2);
    FockSpace V(lat);
    FockVector v;
    v.add_term(V.vacuum(), Cyc8(1));
    FockVector w = V.create(lat.alpha(1), -2, V.create(lat.beta(), -3, v));
    REQUIRE(w.terms.size() == 1);
    CHECK(V.degree_of(w.terms.begin()->first) == V.top_degree() - Rat(5, 2));
    // d0 scales by -deg.
    FockVector d = V.d0(w);
    CHECK(d == w.scaled(Cyc8(-(V.top_degree() - Rat(5, 2)))));
}

TEST_CASE("sector rules") {
    Lattice lat(2);
    FockSpace V(lat);
    // alpha_l carries only integer modes; beta only half-odd modes.
    CHECK(FockSpace::sector_ok(1, -2, 2));
    CHECK(!FockSpace::sector_ok(1, -1, 2));
    CHECK(FockSpace::sector_ok(2, -1, 2));
    CHECK(!FockSpace::sector_ok(2, -2, 2));
    CHECK(FockSpace::sector_ok(0, -1, 2));
    CHECK(FockSpace::sector_ok(0, -2, 2));
    FockVector v;
    v.add_term(V.vacuum(), Cyc8(1));
    CHECK_THROWS(V.create(lat.alpha(2), -1, v));
    CHECK_THROWS(V.create(lat.beta(), -2, v));
    CHECK_THROWS(V.zero_mode(lat.beta(), v));
    // Annihilators kill the vacuum.
    CHECK(V.annihilate(lat.alpha(1), 2, v).is_zero());
    CHECK(V.annihilate(lat.beta(), 1, v).is_zero());
}

TEST_CASE("window enumeration and top slice") {
    Lattice lat(2);
    FockSpace V(lat);
    Rat top = V.top_degree();
    bool certified = false;
    auto basis = V.enumerate_basis(top, top, 6, &certified);
    CHECK(certified);
    std::set<std::vector<long>> exps;
    for (const auto& m : basis) {
        CHECK(m.osc.empty());
        exps.insert(m.exp);
    }
    std::set<std::vector<long>> expected = {{0, 0}, {0, -1}, {-1, -1}, {-1, -2}};
    CHECK(exps == expected);

    // An insufficient height bound must refuse certification.
    bool small_ok = true;
    V.enumerate_basis(top - Rat(3), top, 0, &small_ok);
    CHECK(!small_ok);

    // Depth-1 window: slice dimensions match the generating-function series
    // 4 + 16 x + 40 x^2 + ... in x = q^{1/2}.
    auto window = V.enumerate_basis(top - Rat(1), top, 6, &certified);
    CHECK(certified);
    long d0 = 0, dhalf = 0, done = 0;
    for (const auto& m : window) {
        Rat off = top - V.degree_of(m);
        if (off == Rat(0)) ++d0;
        if (off == Rat(1, 2)) ++dhalf;
        if (off == Rat(1)) ++done;
    }
    CHECK(d0 == 4);
    CHECK(dhalf == 16);
    CHECK(done == 40);
}

TEST_CASE("completeness certificate bound") {
    Lattice lat(2);
    FockSpace V(lat);
    // The outside minimum grows with the height box and exceeds any fixed
    // window bound eventually.
    Rat m0 = V.shifted_form_min_outside(0);
    Rat m6 = V.shifted_form_min_outside(6);
    CHECK(m6 > m0);
    CHECK(m6 > Rat(6));
}
