#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "twistrep/fock.hpp"

namespace twistrep {

/// How the undefined phase operator (-1)^{mu} pairs with an exponent: against
/// the full shifted exponent r+lambda, or against the lattice part r only.
enum class PhaseConvention { FullExponent, LatticeOnly };

const char* phase_convention_name(PhaseConvention pc);

/// Laurent data: z-exponent -> component. Annihilator series have
/// non-positive integer keys, creation series non-negative ones.
using LaurentMap = std::map<int, FockVector>;

/// Vertex operators E/F/Y/X over a fixed Fock space, with exact extraction of
/// modes X_d(alpha) = coefficient of z^{-2d} in X(alpha,z).
class VertexOps {
public:
    explicit VertexOps(const FockSpace& space);

    const FockSpace& space() const { return V_; }
    const RootSystem& root_system() const { return roots_; }
    std::optional<RootClass> classify(const LatticeVector& alpha) const {
        return roots_.classify(alpha);
    }

    /// E^+(alpha,z) v, exact (the exponential truncates on v).
    LaurentMap e_plus_apply(const LatticeVector& alpha, const FockVector& v) const;
    /// F^+(p(alpha),z) v, exact.
    LaurentMap f_plus_apply(const LatticeVector& p_alpha, const FockVector& v) const;
    /// E^-(alpha,z) v, all terms with z-exponent <= max_exp.
    LaurentMap e_minus_apply(const LatticeVector& alpha, const FockVector& v, int max_exp) const;
    /// F^-(p(alpha),z) v, all terms with z-exponent <= max_exp.
    LaurentMap f_minus_apply(const LatticeVector& p_alpha, const FockVector& v, int max_exp) const;

    /// Coefficient of z^{-2d} in X(alpha,z) v, with d2 = 2d. Exact; returns
    /// zero when the exponent equation has no solution in the series support.
    FockVector x_mode(const LatticeVector& alpha, int d2, const FockVector& v,
                      PhaseConvention pc = PhaseConvention::FullExponent) const;

    /// Two-variable composite X(a,b,z,w) applied to v as a mapping
    /// (z-exponent, w-exponent) -> component, with creation series on both
    /// variables truncated at `order`.
    std::map<std::pair<Rat, Rat>, FockVector> two_point_composite(
        const LatticeVector& a, const LatticeVector& b, int order, const FockVector& v,
        PhaseConvention pc = PhaseConvention::FullExponent) const;

    /// Normally ordered product of two Heisenberg modes applied to v:
    /// the lower-degree mode is applied on the outside.
    FockVector normal_ordered_pair(const LatticeVector& h1, int deg2_1, const LatticeVector& h2,
                                   int deg2_2, const FockVector& v) const;

    /// Coefficients of (1-x)^exponent through x^order (generalized binomial).
    static std::vector<Rat> binomial_series(const Rat& exponent, int order);

    /// Diagonal phase factor of (-1)^{mu} on a monomial with lattice exponent
    /// part r (an 8th root of unity under either convention).
    Cyc8 phase_factor(const LatticeVector& mu, const LatticeVector& r, PhaseConvention pc) const;

private:
    // exp(sum_k t_k z^{-k} h(k/2)) v over one annihilator family; keys <= 0.
    LaurentMap annihilator_series(const LatticeVector& h, bool odd_parity,
                                  const FockVector& v) const;

    struct CreationTerm {
        Rat coeff;
        std::vector<int> parts;  // z-exponents k >= 1, repeats allowed
    };
    // All exp-expansion terms of the combined E^-/F^- series with total
    // z-exponent exactly `target`.
    std::vector<CreationTerm> creation_terms(int target, bool allow_odd) const;
    FockVector apply_creation_term(const LatticeVector& alpha, const LatticeVector& p_alpha,
                                   const CreationTerm& t, const FockVector& v) const;

    // Case prefactor of Y(alpha,z) and whether the F factors participate.
    std::pair<Cyc8, bool> y_case(const LatticeVector& alpha, const LatticeVector& p_alpha) const;

    const FockSpace& V_;
    RootSystem roots_;
    mutable std::mutex creation_mutex_;
    mutable std::map<std::pair<int, bool>, std::vector<CreationTerm>> creation_cache_;
};

}  // namespace twistrep
