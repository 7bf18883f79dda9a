#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "twistrep/algebra.hpp"

using namespace twistrep;

namespace {

struct Setup {
    Lattice lat{2};
    FockSpace V{lat};
    VertexOps vx{V};
    std::vector<FockMonomial> window;

    Setup() {
        bool certified = false;
        window = V.enumerate_basis(V.top_degree() - Rat(1), V.top_degree(), 6, &certified);
        REQUIRE(certified);
    }
};

ModeOperator heis_op(const FockSpace& V, const LatticeVector& h, int deg2) {
    return ModeOperator{"h", Rat(-deg2, 2),
                        [&V, h, deg2](const FockVector& v) { return V.heisenberg(h, deg2, v); }};
}

bool all_ok(const std::vector<CheckLine>& lines) {
    bool ok = !lines.empty();
    for (const auto& ln : lines) {
        if (!ln.ok) MESSAGE(ln.name, ": ", ln.detail);
        ok = ok && ln.ok;
    }
    return ok;
}

}  // namespace

TEST_CASE("commutator of Heisenberg modes") {
    Setup s;
    FockVector v;
    v.add_term(s.V.vacuum(), Cyc8(1));
    v = s.V.create(s.lat.alpha(2), -2, v);
    ModeOperator up = heis_op(s.V, s.lat.alpha(2), 2);
    ModeOperator down = heis_op(s.V, s.lat.alpha(2), -2);
    // [a2(1), a2(-1)] = (a2,a2) = 1/2 on anything.
    CHECK(commutator(up, down, v) == v.scaled(Cyc8(Rat(1, 2))));
    CHECK(commutator(up, up, v).is_zero());
}

TEST_CASE("Cartan matrix at l = 2") {
    Lattice lat(2);
    auto a = cartan_matrix(lat);
    std::vector<std::vector<Rat>> expected = {{2, -1, 0}, {-2, 2, -1}, {0, -2, 2}};
    CHECK(a == expected);
}

TEST_CASE("Cartan matrix rows are integral for l = 3") {
    Lattice lat(3);
    auto a = cartan_matrix(lat);
    REQUIRE(a.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(a[i][i] == Rat(2));
        for (size_t j = 0; j < 4; ++j) CHECK(denominator(a[i][j]) == 1);
    }
}

TEST_CASE("pair classification") {
    Setup s;
    LatticeVector a1 = s.lat.alpha(1), a2 = s.lat.alpha(2);
    CHECK(classify_pair(s.vx, a2, -a2).kind == PairCase::Kind::Diagonal);
    PairCase root = classify_pair(s.vx, a1, a2);
    CHECK(root.kind == PairCase::Kind::Root);
    CHECK(root.target == a1 + a2);
    CHECK(classify_pair(s.vx, a1, a1).kind == PairCase::Kind::Zero);
}

TEST_CASE("single bracket checks") {
    Setup s;
    ModeCache cache(s.vx, PhaseConvention::FullExponent);
    LatticeVector a1 = s.lat.alpha(1), a2 = s.lat.alpha(2);
    BracketReport diag = check_root_bracket(cache, a2, -a2, 0, 0, s.window);
    CHECK(diag.consistent);
    CHECK(diag.lemma == "5.3");
    BracketReport root = check_root_bracket(cache, a1, a2, 0, -1, s.window);
    CHECK(root.consistent);
    REQUIRE(root.fitted.has_value());
    CHECK(!root.fitted->is_zero());
    BracketReport zero = check_root_bracket(cache, a1, a1, 0, 0, s.window);
    CHECK(zero.consistent);
    CHECK(!zero.fitted.has_value());
}

TEST_CASE("bracket suite closes at small modes") {
    Setup s;
    auto reports = run_bracket_suite(s.vx, 1, s.window, PhaseConvention::FullExponent, 2);
    CHECK(!reports.empty());
    long inconsistent = 0;
    for (const auto& r : reports)
        if (!r.consistent) ++inconsistent;
    CHECK(inconsistent == 0);
    CHECK(parity_uniformity_failures(reports).empty());
}

TEST_CASE("Heisenberg covariance") {
    Setup s;
    CHECK(all_ok(run_heisenberg_covariance_suite(s.vx, 1, 1, s.window,
                                                 PhaseConvention::FullExponent)));
}

TEST_CASE("Cartan relations of the generators") {
    Setup s;
    GeneratorDictionary g = make_generators(s.vx, PhaseConvention::FullExponent);
    REQUIRE(g.e.size() == 3);
    REQUIRE(g.f.size() == 3);
    REQUIRE(g.h.size() == 3);
    REQUIRE(g.f_scale.size() == 3);
    CHECK(all_ok(run_cartan_suite(s.vx, s.window, PhaseConvention::FullExponent)));
}

TEST_CASE("parity and grading suites") {
    Setup s;
    CHECK(all_ok(run_parity_suite(s.vx, s.window, PhaseConvention::FullExponent)));
    CHECK(all_ok(run_grading_suite(s.vx, s.window, PhaseConvention::FullExponent)));
}

TEST_CASE("contraction identities at order 4") {
    Setup s;
    std::vector<FockMonomial> sample = {s.V.vacuum()};
    CHECK(all_ok(run_contraction_suite(s.vx, 4, sample)));
}

TEST_CASE("Jacobi integrity on seeded triples") {
    Setup s;
    CHECK(all_ok(run_jacobi_suite(s.vx, s.window, PhaseConvention::FullExponent, 20, 7)));
}
