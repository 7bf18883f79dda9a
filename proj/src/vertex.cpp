#include "twistrep/vertex.hpp"

#include <stdexcept>

namespace twistrep {

const char* phase_convention_name(PhaseConvention pc) {
    return pc == PhaseConvention::FullExponent ? "full-exponent" : "lattice-only";
}

VertexOps::VertexOps(const FockSpace& space) : V_(space), roots_(space.lattice().roots()) {}

LaurentMap VertexOps::annihilator_series(const LatticeVector& h, bool odd_parity,
                                         const FockVector& v) const {
    LaurentMap result;
    result[0] = v;
    if (h.is_zero()) return result;
    // Deepest oscillator in v bounds the orders that can contract.
    int maxk = 0;
    for (const auto& [m, c] : v.terms)
        for (const auto& o : m.osc) maxk = std::max(maxk, -o.deg2);
    int k0 = odd_parity ? 1 : 2;
    for (int k = k0; k <= maxk; k += 2) {
        Rat t = Rat(-2, k);  // -1/n at z^{-2n} and -2/(2n-1) at z^{-(2n-1)} alike
        LaurentMap next = result;
        for (const auto& [e, w] : result) {
            FockVector acc = w;
            Rat factor = 1;
            for (int j = 1;; ++j) {
                acc = V_.annihilate(h, k, acc);
                if (acc.is_zero()) break;
                factor *= t / j;
                FockVector& slot = next[e - j * k];
                slot = slot + acc.scaled(Cyc8(factor));
                if (slot.is_zero()) next.erase(e - j * k);
            }
        }
        result = std::move(next);
    }
    for (auto it = result.begin(); it != result.end();)
        it = it->second.is_zero() ? result.erase(it) : std::next(it);
    return result;
}

LaurentMap VertexOps::e_plus_apply(const LatticeVector& alpha, const FockVector& v) const {
    return annihilator_series(alpha, /*odd_parity=*/false, v);
}

LaurentMap VertexOps::f_plus_apply(const LatticeVector& p_alpha, const FockVector& v) const {
    return annihilator_series(p_alpha, /*odd_parity=*/true, v);
}

std::vector<VertexOps::CreationTerm> VertexOps::creation_terms(int target, bool allow_odd) const {
    {
        std::lock_guard<std::mutex> lock(creation_mutex_);
        auto it = creation_cache_.find({target, allow_odd});
        if (it != creation_cache_.end()) return it->second;
    }
    std::vector<CreationTerm> out;
    CreationTerm cur;
    cur.coeff = 1;
    // Parts in decreasing order; coefficient prod_k (2/k)^{m_k} / m_k!.
    auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(remaining, maxpart); k >= 1; --k) {
            if (!allow_odd && k % 2 != 0) continue;
            int run = 0;
            Rat saved = cur.coeff;
            for (int m = 1; k * m <= remaining; ++m) {
                cur.parts.push_back(k);
                cur.coeff *= Rat(2, k) / m;
                ++run;
                self(self, remaining - k * m, k - 1);
            }
            for (int i = 0; i < run; ++i) cur.parts.pop_back();
            cur.coeff = saved;
        }
    };
    rec(rec, target, target);
    std::lock_guard<std::mutex> lock(creation_mutex_);
    return creation_cache_.emplace(std::pair(target, allow_odd), std::move(out)).first->second;
}

FockVector VertexOps::apply_creation_term(const LatticeVector& alpha,
                                          const LatticeVector& p_alpha, const CreationTerm& t,
                                          const FockVector& v) const {
    FockVector cur = v;
    for (int k : t.parts) {
        const LatticeVector& dir = (k % 2 == 0) ? alpha : p_alpha;
        cur = V_.create(dir, -k, cur);
        if (cur.is_zero()) break;
    }
    return cur.scaled(Cyc8(t.coeff));
}

LaurentMap VertexOps::e_minus_apply(const LatticeVector& alpha, const FockVector& v,
                                    int max_exp) const {
    LaurentMap out;
    for (int target = 0; target <= max_exp; ++target) {
        if (target % 2 != 0) continue;
        FockVector sum;
        for (const auto& t : creation_terms(target, /*allow_odd=*/false))
            sum = sum + apply_creation_term(alpha, V_.lattice().zero(), t, v);
        if (!sum.is_zero()) out[target] = std::move(sum);
    }
    return out;
}

LaurentMap VertexOps::f_minus_apply(const LatticeVector& p_alpha, const FockVector& v,
                                    int max_exp) const {
    LaurentMap out;
    if (p_alpha.is_zero()) {
        out[0] = v;
        return out;
    }
    for (int target = 0; target <= max_exp; ++target) {
        FockVector sum;
        for (const auto& t : creation_terms(target, /*allow_odd=*/true)) {
            // Odd parts only: F^- excites the half-odd sector alone.
            bool pure_odd = true;
            for (int k : t.parts)
                if (k % 2 == 0) pure_odd = false;
            if (!pure_odd) continue;
            sum = sum + apply_creation_term(V_.lattice().zero(), p_alpha, t, v);
        }
        if (!sum.is_zero()) out[target] = std::move(sum);
    }
    return out;
}

std::pair<Cyc8, bool> VertexOps::y_case(const LatticeVector& alpha,
                                        const LatticeVector& p_alpha) const {
    if (p_alpha.is_zero()) return {Cyc8(1), false};
    auto cls = classify(alpha);
    if (!cls) throw std::invalid_argument("Y-operator case undefined: " + alpha.to_string() +
                                          " is not a root and p(alpha) != 0");
    if (*cls == RootClass::Short) return {Cyc8::sqrt_minus_one(), true};
    return {Cyc8(1), true};  // middle roots; long roots have p(alpha) = 0
}

Cyc8 VertexOps::phase_factor(const LatticeVector& mu, const LatticeVector& r,
                             PhaseConvention pc) const {
    Rat pairing = (pc == PhaseConvention::FullExponent)
                      ? V_.lattice().gram(mu, r + V_.lambda())
                      : V_.lattice().gram(mu, r);
    Rat quarter_turns = pairing * 4;
    if (!is_integer(quarter_turns))
        throw std::logic_error("phase pairing is not a multiple of 1/4");
    return Cyc8::zeta_pow(static_cast<long>(numerator(quarter_turns)));
}

FockVector VertexOps::x_mode(const LatticeVector& alpha, int d2, const FockVector& v,
                             PhaseConvention pc) const {
    if (!alpha.in_Q()) throw std::invalid_argument("x_mode requires alpha in Q");
    const Lattice& lat = V_.lattice();
    LatticeVector p_alpha = lat.p_map(alpha);
    LatticeVector p0_alpha = lat.p0_map(alpha);
    auto [prefactor, has_f] = y_case(alpha, p_alpha);
    Rat alpha_norm = lat.norm(alpha);

    FockVector out;
    for (const auto& [m, coef] : v.terms) {
        LatticeVector r = V_.exponent_vector(m);
        // z-exponent from z^{(alpha,alpha)} e^alpha z^{2 alpha} acting on e^{r+lambda}.
        Rat base = alpha_norm + 2 * lat.gram(alpha, r + V_.lambda());
        if (!is_integer(base)) continue;
        long base_i = static_cast<long>(numerator(base));

        int eps = lat.cocycle(alpha, r);

        // Shifted lattice exponent r' = r + alpha; phase acts after e^alpha.
        LatticeVector r_shift = r + alpha;
        std::vector<long> r_shift_int(static_cast<size_t>(V_.rank()));
        for (int i = 0; i < V_.rank(); ++i)
            r_shift_int[static_cast<size_t>(i)] =
                static_cast<long>(numerator(r_shift.coeffs[static_cast<size_t>(i)]));
        Cyc8 phase = phase_factor(-p0_alpha, r_shift, pc);
        Cyc8 scalar0 = coef * Cyc8(Rat(eps)) * prefactor * phase;

        FockVector single;
        single.terms.emplace(m, Cyc8(1));
        LaurentMap annih = e_plus_apply(alpha, single);
        if (has_f) {
            LaurentMap combined;
            for (const auto& [e1, w1] : annih)
                for (const auto& [e2, w2] : f_plus_apply(p_alpha, w1))
                    combined[e1 + e2] = combined[e1 + e2] + w2;
            annih = std::move(combined);
        }

        for (const auto& [ae, w] : annih) {
            long target = -static_cast<long>(d2) - base_i - ae;
            if (target < 0) continue;
            // e^alpha: move every component onto the shifted exponent.
            FockVector shifted;
            for (const auto& [mm, cc] : w.terms) {
                FockMonomial sm = mm;
                sm.exp = r_shift_int;
                // Oscillators are untouched; exponents of all terms of w agree with m.
                shifted.add_term(sm, cc);
            }
            for (const auto& t : creation_terms(static_cast<int>(target), has_f)) {
                if (!has_f) {
                    bool pure_even = true;
                    for (int k : t.parts)
                        if (k % 2 != 0) pure_even = false;
                    if (!pure_even) continue;
                }
                for (const auto& [om, oc] :
                     apply_creation_term(alpha, p_alpha, t, shifted).terms)
                    out.add_term(om, oc * scalar0);
            }
        }
    }
    return out;
}

std::map<std::pair<Rat, Rat>, FockVector> VertexOps::two_point_composite(
    const LatticeVector& a, const LatticeVector& b, int order, const FockVector& v,
    PhaseConvention pc) const {
    const Lattice& lat = V_.lattice();
    LatticeVector ab = a + b;
    LatticeVector pa = lat.p_map(a), pb = lat.p_map(b);
    auto [pref_a, has_fa] = y_case(a, pa);
    auto [pref_b, has_fb] = y_case(b, pb);
    Cyc8 prefactor = pref_a * pref_b;
    LatticeVector p0_ab = lat.p0_map(ab);

    std::map<std::pair<Rat, Rat>, FockVector> out;
    for (const auto& [m, coef] : v.terms) {
        LatticeVector r = V_.exponent_vector(m);
        Rat wbase = lat.norm(ab) + lat.gram(ab, r + V_.lambda());
        int eps = lat.cocycle(ab, r);
        LatticeVector r_shift = r + ab;
        std::vector<long> r_shift_int(static_cast<size_t>(V_.rank()));
        for (int i = 0; i < V_.rank(); ++i)
            r_shift_int[static_cast<size_t>(i)] =
                static_cast<long>(numerator(r_shift.coeffs[static_cast<size_t>(i)]));
        Cyc8 phase = phase_factor(-p0_ab, r_shift, pc);
        Cyc8 scalar0 = coef * Cyc8(Rat(eps)) * prefactor * phase;

        FockVector single;
        single.terms.emplace(m, Cyc8(1));
        // All annihilators first (normal ordering), z-keyed for a, w-keyed for b.
        std::map<std::pair<int, int>, FockVector> ann;
        for (const auto& [ez1, w1] : e_plus_apply(a, single)) {
            LaurentMap fa = has_fa ? f_plus_apply(pa, w1) : LaurentMap{{0, w1}};
            for (const auto& [ez2, w2] : fa) {
                for (const auto& [ew1, w3] : e_plus_apply(b, w2)) {
                    LaurentMap fb = has_fb ? f_plus_apply(pb, w3) : LaurentMap{{0, w3}};
                    for (const auto& [ew2, w4] : fb) {
                        auto key = std::pair(ez1 + ez2, ew1 + ew2);
                        ann[key] = ann[key] + w4;
                    }
                }
            }
        }
        for (const auto& [ekey, w] : ann) {
            FockVector shifted;
            for (const auto& [mm, cc] : w.terms) {
                FockMonomial sm = mm;
                sm.exp = r_shift_int;
                shifted.add_term(sm, cc);
            }
            // Creations for a in z, then for b in w, each up to `order`.
            for (int tz = 0; tz <= order; ++tz) {
                for (const auto& ta : creation_terms(tz, has_fa)) {
                    if (!has_fa) {
                        bool pure_even = true;
                        for (int k : ta.parts)
                            if (k % 2 != 0) pure_even = false;
                        if (!pure_even) continue;
                    }
                    FockVector va = apply_creation_term(a, pa, ta, shifted);
                    if (va.is_zero()) continue;
                    for (int tw = 0; tw <= order; ++tw) {
                        for (const auto& tb : creation_terms(tw, has_fb)) {
                            if (!has_fb) {
                                bool pure_even = true;
                                for (int k : tb.parts)
                                    if (k % 2 != 0) pure_even = false;
                                if (!pure_even) continue;
                            }
                            FockVector vb = apply_creation_term(b, pb, tb, va).scaled(scalar0);
                            if (vb.is_zero()) continue;
                            auto key = std::pair(Rat(ekey.first + tz),
                                                 wbase + ekey.second + tw);
                            out[key] = out[key] + vb;
                        }
                    }
                }
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

FockVector VertexOps::normal_ordered_pair(const LatticeVector& h1, int deg2_1,
                                          const LatticeVector& h2, int deg2_2,
                                          const FockVector& v) const {
    // :x(m)y(n): keeps x(m)y(n) for m <= n and swaps otherwise.
    if (deg2_1 <= deg2_2) return V_.heisenberg(h1, deg2_1, V_.heisenberg(h2, deg2_2, v));
    return V_.heisenberg(h2, deg2_2, V_.heisenberg(h1, deg2_1, v));
}

std::vector<Rat> VertexOps::binomial_series(const Rat& exponent, int order) {
    if (order < 0) throw std::invalid_argument("order must be nonnegative");
    std::vector<Rat> coeffs(static_cast<size_t>(order) + 1);
    coeffs[0] = 1;
    for (int k = 1; k <= order; ++k) {
        // C(e,k) = C(e,k-1) * (e-k+1)/k, with the (-1)^k of (1-x)^e folded in.
        coeffs[static_cast<size_t>(k)] =
            coeffs[static_cast<size_t>(k - 1)] * (exponent - (k - 1)) / k * Rat(-1);
    }
    return coeffs;
}

}  // namespace twistrep
