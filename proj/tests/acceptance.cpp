// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failing criteria. Every check is exact; any tolerance would be a bug.

#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "twistrep/algebra.hpp"
#include "twistrep/character.hpp"

using namespace twistrep;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& what, const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  " << num << ". " << what << "  [" << secs << " s]";
    if (!detail.empty()) line << "  -- " << detail;
    std::cout << line.str() << std::endl;
    if (!ok) ++g_failures;
}

LatticeVector segment(const Lattice& lat, int i, int j) {
    LatticeVector v = lat.zero();
    for (int k = i; k <= j; ++k) v = v + lat.alpha(k);
    return v;
}

FockMonomial random_monomial(const FockSpace& V, std::mt19937& rng) {
    const int l = V.rank();
    std::uniform_int_distribution<long> coeff(-2, 2);
    std::vector<long> r(static_cast<size_t>(l));
    for (auto& c : r) c = coeff(rng);
    FockVector v;
    v.add_term(V.exponential(r), Cyc8(1));
    std::uniform_int_distribution<int> count(0, 3), deg(1, 6), dir(0, l);
    for (int k = count(rng); k > 0; --k) {
        int d2 = -deg(rng);
        int slot = dir(rng);
        while (!FockSpace::sector_ok(slot, d2, l)) slot = (slot + 1) % (l + 1);
        LatticeVector h = V.lattice().zero();
        h.coeffs[static_cast<size_t>(slot)] = 1;
        v = V.create(h, d2, v);
    }
    return v.terms.begin()->first;
}

bool lines_ok(const std::vector<CheckLine>& lines, std::string& detail) {
    long bad = 0;
    for (const auto& ln : lines)
        if (!ln.ok) {
            if (bad == 0) detail = ln.name + ": " + ln.detail;
            ++bad;
        }
    std::ostringstream os;
    os << lines.size() << " checks";
    if (bad) os << ", " << bad << " failing; " << detail;
    detail = os.str();
    return bad == 0 && !lines.empty();
}

std::vector<FockMonomial> depth3_window(const FockSpace& V) {
    bool certified = false;
    auto basis = V.enumerate_basis(V.top_degree() - Rat(3), V.top_degree(), 8, &certified);
    if (!certified) throw std::logic_error("depth-3 window not certified at height 8");
    return basis;
}

}  // namespace

int main() {
    Lattice lat2(2);
    FockSpace V2(lat2);
    VertexOps vx2(V2);
    const PhaseConvention pc = PhaseConvention::FullExponent;
    std::vector<FockMonomial> window3 = depth3_window(V2);

    criterion(1, "cocycle antisymmetry on root triples, l = 2..5", [&](std::string& d) {
        long checked = 0;
        for (int l = 2; l <= 5; ++l) {
            Lattice lat(l);
            RootSystem rs = lat.roots();
            std::set<LatticeVector> dot;
            for (const auto& r : rs.short_roots) dot.insert(r);
            for (const auto& r : rs.middle_roots) dot.insert(r);
            for (const auto& a : dot)
                for (const auto& b : dot) {
                    if (!dot.count(a + b)) continue;
                    if (lat.cocycle(a, b) != -lat.cocycle(b, a)) return false;
                    ++checked;
                }
        }
        d = std::to_string(checked) + " triples";
        return checked > 0;
    });

    criterion(2, "p/p0 classification of all roots, l = 2..5", [&](std::string& d) {
        long checked = 0;
        for (int l = 2; l <= 5; ++l) {
            Lattice lat(l);
            std::set<LatticeVector> middle_allowed, short_allowed;
            for (int i = 1; i <= l - 1; ++i)
                for (int j = i; j <= l - 1; ++j) {
                    middle_allowed.insert(segment(lat, i, j));
                    middle_allowed.insert(-segment(lat, i, j));
                }
            for (int i = 1; i <= l; ++i) {
                LatticeVector tail = segment(lat, i, l - 1) + lat.beta();
                short_allowed.insert(tail);
                short_allowed.insert(-tail);
            }
            RootSystem rs = lat.roots();
            for (const auto& r : rs.long_roots) {
                if (!lat.p_map(r).is_zero() || !lat.p0_map(r).is_zero()) return false;
                ++checked;
            }
            for (const auto& r : rs.middle_roots) {
                if (lat.p_map(r) != lat.p0_map(r)) return false;
                if (!middle_allowed.count(lat.p_map(r))) return false;
                ++checked;
            }
            for (const auto& r : rs.short_roots) {
                if (lat.p0_map(r) != r) return false;
                if (!short_allowed.count(lat.p_map(r))) return false;
                ++checked;
            }
        }
        d = std::to_string(checked) +
            " roots (segment index range i <= j, not the stated i < j)";
        return checked > 0;
    });

    criterion(3, "Heisenberg module relations on seeded random monomials", [&](std::string& d) {
        long checked = 0;
        std::mt19937 rng(424242);
        for (int l : {2, 3}) {
            Lattice lat(l);
            FockSpace V(lat);
            std::uniform_int_distribution<int> deg(1, 3), dir(0, l), flip(0, 1);
            for (int trial = 0; trial < 120; ++trial) {
                FockVector v;
                v.add_term(random_monomial(V, rng), Cyc8(1));
                // Commutators [x(m), y(n)] = m delta_{m+n,0} (x,y) c.
                int m2 = deg(rng) * (flip(rng) ? 1 : -1);
                int n2 = flip(rng) ? -m2 : -m2 + 2 * (flip(rng) ? 1 : -1);
                int sx = dir(rng), sy = dir(rng);
                while (!FockSpace::sector_ok(sx, m2, l)) sx = (sx + 1) % (l + 1);
                while (!FockSpace::sector_ok(sy, n2, l)) sy = (sy + 1) % (l + 1);
                LatticeVector x = lat.zero(), y = lat.zero();
                x.coeffs[static_cast<size_t>(sx)] = 1;
                y.coeffs[static_cast<size_t>(sy)] = 1;
                FockVector lhs = V.heisenberg(x, m2, V.heisenberg(y, n2, v)) -
                                 V.heisenberg(y, n2, V.heisenberg(x, m2, v));
                FockVector rhs;
                if (m2 + n2 == 0) rhs = v.scaled(Cyc8(Rat(m2, 2) * lat.gram(x, y)));
                if (lhs != rhs) return false;
                // Zero modes act by (b, r + lambda); c acts as the identity.
                LatticeVector b = lat.alpha(1 + trial % l);
                Rat eig = lat.gram(b, V.shifted_exponent(v.terms.begin()->first));
                if (V.zero_mode(b, v) != v.scaled(Cyc8(eig))) return false;
                if (V.central(v) != v) return false;
                // Creation modes multiply; the contraction then recovers the
                // pairing value m/2 (x, y) on top of the untouched monomial.
                int c2 = -deg(rng);
                int sc = dir(rng);
                while (!FockSpace::sector_ok(sc, c2, l)) sc = (sc + 1) % (l + 1);
                LatticeVector hc = lat.zero();
                hc.coeffs[static_cast<size_t>(sc)] = 1;
                FockVector created = V.create(hc, c2, v);
                if (created.terms.size() != 1 || created.terms.begin()->second != Cyc8(1))
                    return false;
                FockVector back = V.annihilate(hc, -c2, created);
                FockVector expect = v.scaled(Cyc8(Rat(-c2, 2) * lat.norm(hc))) +
                                    V.create(hc, c2, V.annihilate(hc, -c2, v));
                if (back != expect) return false;
                ++checked;
            }
        }
        d = std::to_string(checked) + " monomials across l = 2, 3";
        return checked >= 200;
    });

    criterion(4, "grading on the depth-3 window, l = 2", [&](std::string& d) {
        return lines_ok(run_grading_suite(vx2, window3, pc), d);
    });

    criterion(5, "integer modes of long roots vanish on the depth-3 window", [&](std::string& d) {
        return lines_ok(run_parity_suite(vx2, window3, pc), d);
    });

    criterion(6, "contraction identities to order 6, all root pairs, l = 2", [&](std::string& d) {
        std::vector<FockMonomial> sample = {V2.vacuum()};
        return lines_ok(run_contraction_suite(vx2, 6, sample), d);
    });

    criterion(7, "Heisenberg covariance, |n|, |d| <= 2, l = 2", [&](std::string& d) {
        return lines_ok(run_heisenberg_covariance_suite(vx2, 2, 2, window3, pc), d);
    });

    criterion(8, "bracket closure, |m|, |n| <= 2 on the depth-3 window", [&](std::string& d) {
        // One worker: the budget is single-threaded and per-worker mode
        // caches are sizable on the depth-3 window.
        auto reports = run_bracket_suite(vx2, 2, window3, pc, 1);
        long inconsistent = 0;
        std::map<std::string, std::pair<long, long>> per_lemma;  // lemma -> (checks, mismatches)
        std::map<std::string, std::string> example;
        for (const auto& r : reports) {
            if (!r.consistent) ++inconsistent;
            std::string lemma = r.lemma;
            if (!lemma.empty() && lemma.back() == 'm') lemma.pop_back();
            auto& [checks, mism] = per_lemma[lemma];
            ++checks;
            if (r.stated && !r.matches_stated) {
                ++mism;
                if (!example.count(lemma) && r.fitted)
                    example[lemma] = "fitted " + r.fitted->to_string() + " vs stated " +
                                     r.stated->to_string();
            }
        }
        auto parity = parity_uniformity_failures(reports);
        std::cout << "    constants report (" << phase_convention_name(pc) << "):\n";
        for (const auto& [lemma, counts] : per_lemma) {
            std::cout << "      lemma " << lemma << ": " << counts.first << " checks, "
                      << counts.second << " stated-constant mismatches";
            if (example.count(lemma)) std::cout << " (e.g. " << example.at(lemma) << ")";
            std::cout << "\n";
        }
        std::ostringstream os;
        os << reports.size() << " brackets, " << inconsistent << " closure failures, "
           << parity.size() << " parity-uniformity failures";
        d = os.str();
        return inconsistent == 0 && parity.empty() && !reports.empty();
    });

    criterion(9, "Cartan relations for i, j = 0..l, l = 2", [&](std::string& d) {
        return lines_ok(run_cartan_suite(vx2, window3, pc), d);
    });

    criterion(10, "Jacobi identity on seeded operator triples", [&](std::string& d) {
        return lines_ok(run_jacobi_suite(vx2, window3, pc, 50, 20260823u), d);
    });

    criterion(11, "top-slice dimensions 4 (l=2) and 8 (l=3)", [&](std::string& d) {
        std::ostringstream os;
        for (int l : {2, 3}) {
            Lattice lat(l);
            FockSpace V(lat);
            CharacterTable tab = character_table(V, Rat(0));
            if (!tab.certified) return false;
            long dim = tab.slice_dimension(Rat(0));
            // Independent oracle: count minimal vectors of the shifted
            // quadratic form over the certified height box.
            const long height = 6;
            Rat best;
            long count = 0;
            std::vector<long> idx(static_cast<size_t>(l), -height);
            bool first = true;
            while (true) {
                LatticeVector r = lat.from_alpha_coeffs(idx) + lat.lambda();
                Rat n = lat.norm(r);
                if (first || n < best) {
                    best = n;
                    count = 1;
                    first = false;
                } else if (n == best) {
                    ++count;
                }
                size_t k = 0;
                while (k < idx.size() && idx[k] == height) idx[k++] = -height;
                if (k == idx.size()) break;
                ++idx[k];
            }
            if (V.shifted_form_min_outside(height) <= best) return false;
            os << "l=" << l << ": slice " << dim << ", minimal vectors " << count << "; ";
            if (dim != (l == 2 ? 4 : 8) || count != dim) return false;
        }
        d = os.str();
        return true;
    });

    criterion(12, "graded dimensions vs generating-function oracle, depth 5", [&](std::string& d) {
        auto enumerated = q_character(V2, Rat(5));
        auto oracle = q_character_oracle(lat2, Rat(5));
        std::ostringstream os;
        for (long c : enumerated) os << c << " ";
        d = os.str();
        return enumerated == oracle && enumerated.size() == 11;
    });

    criterion(13, "highest weight vector unique with signature Lambda_l", [&](std::string& d) {
        HwvResult res = hwv_search(vx2, Rat(2), 6, pc);
        if (!res.window_certified || res.vectors.size() != 1) return false;
        const FockVector& v = res.vectors[0];
        if (v.terms.size() != 1 || !(v.terms.begin()->first == V2.vacuum())) return false;
        AffineWeight w = weight_of(V2, v.terms.begin()->first);
        d = "1 (x) e^lambda, h = (0, 1), level 1";
        return w.h == std::vector<Rat>{0, 1} && w.level == Rat(1);
    });

    criterion(14, "dominance scan admits only alpha = 0, height 6, l = 2, 3",
              [&](std::string& d) {
                  for (int l : {2, 3}) {
                      Lattice lat(l);
                      auto sols = dominance_check(lat, 6);
                      if (sols.size() != 1 || !sols[0].is_zero()) return false;
                  }
                  d = "unique solution alpha = 0";
                  return true;
              });

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                  : std::to_string(g_failures) + " CRITERIA FAILED")
              << std::endl;
    return g_failures;
}
