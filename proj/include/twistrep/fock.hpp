#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "twistrep/cyclotomic.hpp"
#include "twistrep/lattice.hpp"

namespace twistrep {

/// One oscillator factor of a Fock monomial. Degrees live in (1/2)Z and are
/// stored doubled; creation modes have deg2 < 0. `dir` indexes the basis
/// {alpha_1..alpha_l, beta}: even modes use alpha directions, odd (half-odd
/// degree) modes use {alpha_1..alpha_{l-1}, beta}.
struct Osc {
    int dir;
    int deg2;
    int mult;

    auto key() const { return std::tuple(deg2, dir); }
    bool operator==(const Osc& o) const {
        return dir == o.dir && deg2 == o.deg2 && mult == o.mult;
    }
    bool operator<(const Osc& o) const {
        return std::tuple(deg2, dir, mult) < std::tuple(o.deg2, o.dir, o.mult);
    }
};

/// Basis monomial of V(Q): a multiset of creation oscillators times the
/// lattice point r (the stored exponent; the full exponent is e^{r+lambda}).
struct FockMonomial {
    std::vector<long> exp;  // alpha-coefficients of r
    std::vector<Osc> osc;   // sorted by (deg2, dir), run-length encoded

    bool operator==(const FockMonomial& o) const { return exp == o.exp && osc == o.osc; }
    bool operator<(const FockMonomial& o) const {
        if (exp != o.exp) return exp < o.exp;
        return osc < o.osc;
    }

    int oscillator_count() const;
    int total_osc_deg2() const;  // sum of deg2 over the multiset
    std::string to_string() const;
};

/// Sparse exact linear combination of monomials; zero coefficients are never
/// stored. Ordered map so iteration (and hence all reports) is deterministic.
struct FockVector {
    std::map<FockMonomial, Cyc8> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const FockMonomial& m, const Cyc8& c);

    FockVector operator+(const FockVector& o) const;
    FockVector operator-(const FockVector& o) const;
    FockVector scaled(const Cyc8& s) const;

    bool operator==(const FockVector& o) const { return terms == o.terms; }
    bool operator!=(const FockVector& o) const { return terms != o.terms; }

    std::string to_string() const;
};

/// The space V(Q) = S(H^-) (x) C[Q] over a fixed lattice, with the Heisenberg
/// action and the degree grading.
class FockSpace {
public:
    explicit FockSpace(const Lattice& lat) : lat_(lat), lambda_(lat.lambda()) {}

    const Lattice& lattice() const { return lat_; }
    const LatticeVector& lambda() const { return lambda_; }
    int rank() const { return lat_.rank(); }

    FockMonomial vacuum() const;  // 1 (x) e^lambda
    FockMonomial exponential(const std::vector<long>& r) const;
    LatticeVector exponent_vector(const FockMonomial& m) const;  // r as LatticeVector
    LatticeVector shifted_exponent(const FockMonomial& m) const;  // r + lambda

    /// Whether `dir` may carry a mode of doubled degree `deg2` (sector/parity
    /// consistency for a single basis direction).
    static bool sector_ok(int dir, int deg2, int rank);

    /// Multiply by the creation mode h(deg2/2), deg2 < 0; h may be any lattice
    /// vector supported on the sector's basis directions.
    FockVector create(const LatticeVector& h, int deg2, const FockVector& v) const;
    /// Contraction derivation for h(deg2/2), deg2 > 0.
    FockVector annihilate(const LatticeVector& h, int deg2, const FockVector& v) const;
    /// b(0), b in span{alpha_1..alpha_l}: scales each monomial by (b, r+lambda).
    FockVector zero_mode(const LatticeVector& b, const FockVector& v) const;
    /// Heisenberg mode of h at doubled degree deg2 (create/zero/annihilate).
    FockVector heisenberg(const LatticeVector& h, int deg2, const FockVector& v) const;
    /// The central element acts as the identity.
    FockVector central(const FockVector& v) const { return v; }

    Rat degree_of(const FockMonomial& m) const;
    /// d_0: diagonal, each monomial scaled by -deg.
    FockVector d0(const FockVector& v) const;
    Rat top_degree() const;  // -1/2 (lambda,lambda)

    /// All monomials with degree in [lo, hi] and exponent height <= height,
    /// deterministically ordered. `certified` reports whether the height bound
    /// provably captures every monomial in the window.
    std::vector<FockMonomial> enumerate_basis(const Rat& lo, const Rat& hi, long height,
                                              bool* certified = nullptr) const;

    /// Exact lower bound for (r+lambda, r+lambda) over real r with
    /// ||r||_inf >= height+1 (used for the completeness certificate).
    Rat shifted_form_min_outside(long height) const;

private:
    Lattice lat_;
    LatticeVector lambda_;
};

}  // namespace twistrep
