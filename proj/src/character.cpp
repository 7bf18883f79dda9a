#include "twistrep/character.hpp"

#include <algorithm>
#include <sstream>

#include "twistrep/algebra.hpp"

namespace twistrep {

std::string AffineWeight::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < h.size(); ++i) {
        if (i) os << ",";
        os << rat_to_string(h[i]);
    }
    os << "; d0=" << rat_to_string(degree) << "; c=" << rat_to_string(level) << ")";
    return os.str();
}

AffineWeight weight_of(const FockSpace& V, const FockMonomial& m) {
    const Lattice& lat = V.lattice();
    LatticeVector shifted = V.shifted_exponent(m);
    AffineWeight w;
    w.h.reserve(static_cast<size_t>(lat.rank()));
    for (int i = 1; i <= lat.rank(); ++i) {
        LatticeVector ai = lat.alpha(i);
        w.h.push_back(2 * lat.gram(ai, shifted) / lat.norm(ai));
    }
    w.degree = -V.degree_of(m);
    w.level = Rat(1);
    return w;
}

long CharacterTable::slice_dimension(const Rat& offset) const {
    Rat want = -(top_degree - offset);  // d0-eigenvalue at that depth
    long total = 0;
    for (const auto& [w, mult] : multiplicities)
        if (w.degree == want) total += mult;
    return total;
}

CharacterTable character_table(const FockSpace& V, const Rat& depth) {
    Rat top = V.top_degree();
    CharacterTable tab;
    tab.top_degree = top;
    for (long h = 2;; h += 2) {
        bool cert = false;
        auto basis = V.enumerate_basis(top - depth, top, h, &cert);
        if (!cert) continue;
        tab.height = h;
        tab.certified = true;
        tab.multiplicities.clear();
        for (const auto& m : basis) ++tab.multiplicities[weight_of(V, m)];
        return tab;
    }
}

namespace {

long as_long(const Rat& r) { return static_cast<long>(numerator(r)); }

}  // namespace

std::vector<long> q_character(const FockSpace& V, const Rat& depth) {
    Rat top = V.top_degree();
    long n = as_long(rat_floor(2 * depth));
    std::vector<long> dims(static_cast<size_t>(n) + 1, 0);
    for (long h = 2;; h += 2) {
        bool cert = false;
        auto basis = V.enumerate_basis(top - depth, top, h, &cert);
        if (!cert) continue;
        for (const auto& m : basis) {
            Rat k2 = 2 * (top - V.degree_of(m));
            if (!is_integer(k2)) continue;  // cannot occur: offsets live in (1/2)Z
            long k = as_long(k2);
            if (k >= 0 && k <= n) ++dims[static_cast<size_t>(k)];
        }
        return dims;
    }
}

std::vector<long> q_character_oracle(const Lattice& lat, const Rat& depth) {
    long n = as_long(rat_floor(2 * depth));
    std::vector<long> c(static_cast<size_t>(n) + 1, 0);

    // Theta part: enumerate alpha in Q with (alpha+lambda,alpha+lambda)
    // within the window, certified by the quadratic-form bound.
    FockSpace V(lat);
    Rat lam2 = lat.norm(lat.lambda());
    Rat bound = 2 * depth + lam2;
    long h = 2;
    while (V.shifted_form_min_outside(h) <= bound) h += 2;
    int l = lat.rank();
    std::vector<long> k(static_cast<size_t>(l), -h);
    while (true) {
        LatticeVector alpha = lat.from_alpha_coeffs(k);
        Rat off2 = lat.norm(alpha + lat.lambda()) - lam2;  // = 2 * degree offset
        if (is_integer(off2) && off2 >= 0 && off2 <= n) ++c[static_cast<size_t>(as_long(off2))];
        int i = 0;
        for (; i < l; ++i) {
            if (k[static_cast<size_t>(i)] < h) {
                ++k[static_cast<size_t>(i)];
                break;
            }
            k[static_cast<size_t>(i)] = -h;
        }
        if (i == l) break;
    }

    // Oscillator part: both q^n and q^{n-1/2} families give, in x = q^{1/2},
    // the full product prod_{m>=1} (1-x^m)^{-l}.
    for (long m = 1; m <= n; ++m)
        for (int rep = 0; rep < l; ++rep)
            for (long j = m; j <= n; ++j)
                c[static_cast<size_t>(j)] += c[static_cast<size_t>(j - m)];
    return c;
}

std::vector<std::vector<Cyc8>> cyc8_kernel(std::vector<std::vector<Cyc8>> rows, size_t ncols) {
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Cyc8 inv = rows[rank][col].inverse();
        for (size_t j = col; j < ncols; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            Cyc8 f = rows[r][col];
            for (size_t j = col; j < ncols; ++j)
                rows[r][j] = rows[r][j] - f * rows[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (size_t p : pivot_col) is_pivot[p] = true;
    std::vector<std::vector<Cyc8>> kernel;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Cyc8> v(ncols, Cyc8(0));
        v[f] = Cyc8(1);
        for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][f];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

HwvResult hwv_search(const VertexOps& vx, const Rat& depth, long height, PhaseConvention pc) {
    const FockSpace& V = vx.space();
    const Lattice& lat = V.lattice();
    int l = lat.rank();
    Rat top = V.top_degree();

    HwvResult res;
    bool cert = false;
    auto basis = V.enumerate_basis(top - depth, top, height, &cert);
    res.window_certified = cert;
    if (!cert)
        res.notes.push_back("height bound " + std::to_string(height) +
                            " does not certify the window; results may miss vectors");

    LatticeVector theta = lat.zero();
    for (int i = 1; i <= l; ++i) theta = theta + lat.alpha(i);
    LatticeVector m2theta = theta.scaled(Rat(-2));
    ModeCache cache(vx, pc);

    // Group the window by degree slice.
    std::map<Rat, std::vector<FockMonomial>> slices;
    for (const auto& m : basis) slices[V.degree_of(m)].push_back(m);

    for (auto it = slices.rbegin(); it != slices.rend(); ++it) {
        const auto& mono = it->second;
        size_t ncols = mono.size();
        long budget2 = as_long(rat_floor(2 * (top - it->first)));

        std::vector<FockVector> images;
        auto collect = [&](const std::function<FockVector(const FockVector&)>& op) {
            for (size_t j = 0; j < ncols; ++j) {
                FockVector v;
                v.add_term(mono[j], Cyc8(1));
                images.push_back(op(v));
            }
        };
        for (long d2 = 1; d2 <= budget2; ++d2) {
            for (int i = 1; i <= l; ++i) {
                LatticeVector dir = (d2 % 2 == 0) ? lat.alpha(i) : lat.p_map(lat.alpha(i));
                if (dir.is_zero()) continue;
                collect([&V, dir, d2](const FockVector& v) {
                    return V.annihilate(dir, static_cast<int>(d2), v);
                });
            }
        }
        for (int i = 1; i <= l; ++i) {
            LatticeVector ai = lat.alpha(i);
            collect([&](const FockVector& v) { return cache.x_mode(ai, 0, v); });
        }
        collect([&](const FockVector& v) { return cache.x_mode(m2theta, 1, v); });

        // One row per (operator, output monomial), columns = slice monomials.
        std::vector<std::vector<Cyc8>> rows;
        size_t nops = images.size() / ncols;
        for (size_t op = 0; op < nops; ++op) {
            std::map<FockMonomial, std::vector<Cyc8>> op_eq;
            for (size_t j = 0; j < ncols; ++j)
                for (const auto& [om, oc] : images[op * ncols + j].terms) {
                    auto& row = op_eq[om];
                    if (row.empty()) row.assign(ncols, Cyc8(0));
                    row[j] = row[j] + oc;
                }
            for (auto& [om, row] : op_eq) rows.push_back(std::move(row));
        }

        for (const auto& kv : cyc8_kernel(std::move(rows), ncols)) {
            FockVector v;
            for (size_t j = 0; j < ncols; ++j)
                if (!kv[j].is_zero()) v.add_term(mono[j], kv[j]);
            res.vectors.push_back(std::move(v));
        }
    }

    // The integer mode flagged in the source's proof line is identically zero
    // by mode-support parity; record the evaluation on the top slice.
    {
        bool trivially_zero = true;
        for (const auto& m : basis) {
            FockVector v;
            v.add_term(m, Cyc8(1));
            if (!cache.x_mode(m2theta, 2, v).is_zero()) {
                trivially_zero = false;
                break;
            }
        }
        res.notes.push_back(std::string("X_1(-2theta) on the window: ") +
                            (trivially_zero ? "identically zero (mode parity)" : "NONZERO"));
    }
    return res;
}

std::vector<LatticeVector> dominance_check(const Lattice& lat, long height) {
    int l = lat.rank();
    LatticeVector theta = lat.zero();
    for (int i = 1; i <= l; ++i) theta = theta + lat.alpha(i);
    std::vector<LatticeVector> out;
    std::vector<long> k(static_cast<size_t>(l), -height);
    while (true) {
        LatticeVector alpha = lat.from_alpha_coeffs(k);
        bool ok = lat.gram(alpha, theta) <= Rat(1, 4);
        for (int i = 1; ok && i <= l; ++i) ok = lat.gram(alpha, lat.alpha(i)) >= 0;
        if (ok) out.push_back(alpha);
        int i = 0;
        for (; i < l; ++i) {
            if (k[static_cast<size_t>(i)] < height) {
                ++k[static_cast<size_t>(i)];
                break;
            }
            k[static_cast<size_t>(i)] = -height;
        }
        if (i == l) break;
    }
    return out;
}

}  // namespace twistrep
