#include "twistrep/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace twistrep {

int FockMonomial::oscillator_count() const {
    int n = 0;
    for (const auto& o : osc) n += o.mult;
    return n;
}

int FockMonomial::total_osc_deg2() const {
    int n = 0;
    for (const auto& o : osc) n += o.deg2 * o.mult;
    return n;
}

std::string FockMonomial::to_string() const {
    std::string out;
    for (const auto& o : osc) {
        std::string dirname = (static_cast<size_t>(o.dir) == exp.size())
                                  ? "b"
                                  : "a" + std::to_string(o.dir + 1);
        std::string deg = (o.deg2 % 2 == 0) ? std::to_string(o.deg2 / 2)
                                            : std::to_string(o.deg2) + "/2";
        out += dirname + "(" + deg + ")";
        if (o.mult > 1) out += "^" + std::to_string(o.mult);
        out += " ";
    }
    out += "e^{L";
    for (size_t i = 0; i < exp.size(); ++i) {
        long k = exp[i];
        if (k == 0) continue;
        out += (k > 0 ? "+" : "") + std::to_string(k) + "a" + std::to_string(i + 1);
    }
    out += "}";
    return out;
}

void FockVector::add_term(const FockMonomial& m, const Cyc8& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

FockVector FockVector::operator+(const FockVector& o) const {
    FockVector r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, c);
    return r;
}

FockVector FockVector::operator-(const FockVector& o) const {
    FockVector r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, -c);
    return r;
}

FockVector FockVector::scaled(const Cyc8& s) const {
    FockVector r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms) r.terms.emplace(m, c * s);
    return r;
}

std::string FockVector::to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ") " + m.to_string();
    }
    return out;
}

FockMonomial FockSpace::vacuum() const {
    return exponential(std::vector<long>(static_cast<size_t>(rank()), 0));
}

FockMonomial FockSpace::exponential(const std::vector<long>& r) const {
    if (static_cast<int>(r.size()) != rank()) throw std::invalid_argument("rank mismatch");
    FockMonomial m;
    m.exp = r;
    return m;
}

LatticeVector FockSpace::exponent_vector(const FockMonomial& m) const {
    return lat_.from_alpha_coeffs(std::vector<long>(m.exp.begin(), m.exp.end()));
}

LatticeVector FockSpace::shifted_exponent(const FockMonomial& m) const {
    return exponent_vector(m) + lambda_;
}

bool FockSpace::sector_ok(int dir, int deg2, int rank) {
    if (deg2 % 2 == 0) return dir >= 0 && dir < rank;      // integer sector: alpha_1..alpha_l
    return (dir >= 0 && dir < rank - 1) || dir == rank;    // half sector: alpha_1..alpha_{l-1}, beta
}

namespace {

// Basis decomposition of an operator direction, validated against the sector
// of the given doubled degree.
std::vector<std::pair<int, Rat>> decompose_direction(const LatticeVector& h, int deg2, int rank) {
    std::vector<std::pair<int, Rat>> parts;
    for (int i = 0; i <= rank; ++i) {
        const Rat& c = h.coeffs[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!FockSpace::sector_ok(i, deg2, rank))
            throw std::invalid_argument("oscillator direction outside its sector");
        parts.emplace_back(i, c);
    }
    return parts;
}

FockMonomial with_creation(const FockMonomial& m, int dir, int deg2) {
    FockMonomial r = m;
    Osc nw{dir, deg2, 1};
    auto it = std::lower_bound(r.osc.begin(), r.osc.end(), nw);
    if (it != r.osc.end() && it->dir == dir && it->deg2 == deg2) {
        ++it->mult;
    } else {
        r.osc.insert(it, nw);
    }
    return r;
}

FockMonomial with_removed(const FockMonomial& m, size_t idx) {
    FockMonomial r = m;
    if (r.osc[idx].mult > 1) {
        --r.osc[idx].mult;
    } else {
        r.osc.erase(r.osc.begin() + static_cast<long>(idx));
    }
    return r;
}

}  // namespace

FockVector FockSpace::create(const LatticeVector& h, int deg2, const FockVector& v) const {
    if (deg2 >= 0) throw std::invalid_argument("creation mode must have negative degree");
    auto parts = decompose_direction(h, deg2, rank());
    FockVector out;
    for (const auto& [m, c] : v.terms)
        for (const auto& [dir, coeff] : parts)
            out.add_term(with_creation(m, dir, deg2), c * Cyc8(coeff));
    return out;
}

FockVector FockSpace::annihilate(const LatticeVector& h, int deg2, const FockVector& v) const {
    if (deg2 <= 0) throw std::invalid_argument("annihilation mode must have positive degree");
    auto parts = decompose_direction(h, deg2, rank());
    FockVector out;
    for (const auto& [m, c] : v.terms) {
        for (size_t idx = 0; idx < m.osc.size(); ++idx) {
            const Osc& o = m.osc[idx];
            if (o.deg2 != -deg2) continue;
            // [h(n), x(-n)] = n (h, x): contraction scalar n * gram * multiplicity.
            Rat g = 0;
            for (const auto& [dir, coeff] : parts) g += coeff * lat_.basis_gram(dir, o.dir);
            if (g == 0) continue;
            Rat scalar = Rat(deg2, 2) * g * o.mult;
            out.add_term(with_removed(m, idx), c * Cyc8(scalar));
        }
    }
    return out;
}

FockVector FockSpace::zero_mode(const LatticeVector& b, const FockVector& v) const {
    if (b.coeffs[static_cast<size_t>(rank())] != 0)
        throw std::invalid_argument("zero modes exist only in the integer sector");
    FockVector out;
    for (const auto& [m, c] : v.terms) {
        Rat eig = lat_.gram(b, shifted_exponent(m));
        out.add_term(m, c * Cyc8(eig));
    }
    return out;
}

FockVector FockSpace::heisenberg(const LatticeVector& h, int deg2, const FockVector& v) const {
    if (deg2 < 0) return create(h, deg2, v);
    if (deg2 > 0) return annihilate(h, deg2, v);
    return zero_mode(h, v);
}

Rat FockSpace::degree_of(const FockMonomial& m) const {
    LatticeVector u = shifted_exponent(m);
    return Rat(m.total_osc_deg2(), 2) - lat_.gram(u, u) / 2;
}

FockVector FockSpace::d0(const FockVector& v) const {
    FockVector out;
    for (const auto& [m, c] : v.terms) out.add_term(m, c * Cyc8(-degree_of(m)));
    return out;
}

Rat FockSpace::top_degree() const { return -lat_.gram(lambda_, lambda_) / 2; }

namespace {

// Inverse diagonal of the positive definite alpha-block of the Gram form, via
// exact Gauss-Jordan.
std::vector<Rat> gram_inverse_diagonal(const Lattice& lat) {
    int l = lat.rank();
    size_t n = static_cast<size_t>(l);
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j)
            a[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
                lat.gram(lat.alpha(i), lat.alpha(j));
    for (size_t i = 0; i < n; ++i) a[i][n + i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("Gram block is singular");
        std::swap(a[piv], a[col]);
        Rat d = a[col][col];
        for (size_t j = 0; j < 2 * n; ++j) a[col][j] /= d;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            Rat f = a[row][col];
            for (size_t j = 0; j < 2 * n; ++j) a[row][j] -= f * a[col][j];
        }
    }
    std::vector<Rat> diag(n);
    for (size_t i = 0; i < n; ++i) diag[i] = a[i][n + i];
    return diag;
}

}  // namespace

Rat FockSpace::shifted_form_min_outside(long height) const {
    // The form is convex, so the minimum of (r+lambda, r+lambda) over
    // ||r||_inf >= height+1 is attained on a face r_i = +-(height+1); on each
    // face the unconstrained minimum over the hyperplane u_i = d is
    // d^2 / (G^{-1})_{ii}.
    std::vector<Rat> inv_diag = gram_inverse_diagonal(lat_);
    Rat best;
    bool first = true;
    for (int i = 0; i < rank(); ++i) {
        for (int sgn : {1, -1}) {
            Rat d = Rat(sgn * (height + 1)) + lambda_.coeffs[static_cast<size_t>(i)];
            Rat val = d * d / inv_diag[static_cast<size_t>(i)];
            if (first || val < best) {
                best = val;
                first = false;
            }
        }
    }
    return best;
}

namespace {

// All admissible oscillator slots with |deg2| <= budget, creation side.
std::vector<std::pair<int, int>> creation_slots(int rank, int budget2) {
    std::vector<std::pair<int, int>> slots;  // (deg2, dir)
    for (int deg2 = -1; deg2 >= -budget2; --deg2)
        for (int dir = 0; dir <= rank; ++dir)
            if (FockSpace::sector_ok(dir, deg2, rank)) slots.emplace_back(deg2, dir);
    return slots;
}

void fill_oscillators(const std::vector<std::pair<int, int>>& slots, size_t i, int budget2,
                      FockMonomial& cur, std::vector<FockMonomial>& out) {
    if (i == slots.size()) {
        out.push_back(cur);
        return;
    }
    auto [deg2, dir] = slots[i];
    int maxmult = budget2 / (-deg2);
    for (int mult = 0; mult <= maxmult; ++mult) {
        if (mult > 0) {
            if (mult == 1) cur.osc.push_back(Osc{dir, deg2, 1});
            else ++cur.osc.back().mult;
        }
        fill_oscillators(slots, i + 1, budget2 + deg2 * mult, cur, out);
    }
    if (maxmult > 0) cur.osc.pop_back();
}

}  // namespace

std::vector<FockMonomial> FockSpace::enumerate_basis(const Rat& lo, const Rat& hi, long height,
                                                     bool* certified) const {
    if (lo > hi) {
        if (certified) *certified = true;
        return {};
    }
    std::vector<FockMonomial> out;
    std::vector<long> r(static_cast<size_t>(rank()), -height);
    while (true) {
        FockMonomial base = exponential(r);
        Rat top = degree_of(base);  // no oscillators yet
        if (top >= lo) {
            // Oscillators subtract at most (top - lo); budget in doubled units.
            Rat budget = (top - lo) * 2;
            int budget2 = static_cast<int>(rat_floor(budget));
            auto slots = creation_slots(rank(), budget2);
            FockMonomial cur = base;
            std::vector<FockMonomial> all;
            fill_oscillators(slots, 0, budget2, cur, all);
            for (auto& m : all) {
                std::sort(m.osc.begin(), m.osc.end());
                Rat d = degree_of(m);
                if (d >= lo && d <= hi) out.push_back(std::move(m));
            }
        }
        int i = 0;
        for (; i < rank(); ++i) {
            if (r[static_cast<size_t>(i)] < height) {
                ++r[static_cast<size_t>(i)];
                break;
            }
            r[static_cast<size_t>(i)] = -height;
        }
        if (i == rank()) break;
    }
    std::sort(out.begin(), out.end());
    if (certified) {
        // Complete iff every exponent beyond the box already sits below the window.
        *certified = -shifted_form_min_outside(height) / 2 < lo;
    }
    return out;
}

}  // namespace twistrep
