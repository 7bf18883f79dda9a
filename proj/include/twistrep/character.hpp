#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistrep/vertex.hpp"

namespace twistrep {

/// Simultaneous eigenvalue tuple of (h_1..h_l, d_0, c) on a basis monomial.
struct AffineWeight {
    std::vector<Rat> h;
    Rat degree;  // d_0-eigenvalue = -deg
    Rat level = Rat(1);

    auto key() const { return std::tie(degree, h); }
    bool operator==(const AffineWeight& o) const {
        return h == o.h && degree == o.degree && level == o.level;
    }
    bool operator<(const AffineWeight& o) const { return key() < o.key(); }

    std::string to_string() const;
};

AffineWeight weight_of(const FockSpace& V, const FockMonomial& m);

struct CharacterTable {
    std::map<AffineWeight, long> multiplicities;
    Rat top_degree;
    long height = 0;
    bool certified = false;

    /// Total multiplicity of the slice at the given offset below the top.
    long slice_dimension(const Rat& offset) const;
};

/// Exact weight multiplicities for all degrees within `depth` of the top,
/// enlarging the exponent height until the window is certified complete.
CharacterTable character_table(const FockSpace& V, const Rat& depth);

/// Graded dimensions as coefficients of x^k, x = q^{1/2}, where k doubles the
/// degree offset below the top. Derived from basis enumeration.
std::vector<long> q_character(const FockSpace& V, const Rat& depth);

/// Independent generating-function oracle for the same series:
/// prod_{n>=1} (1-q^n)^{-l} (1-q^{n-1/2})^{-l} *
/// sum_{alpha in Q} q^{((alpha+lambda,alpha+lambda)-(lambda,lambda))/2}.
std::vector<long> q_character_oracle(const Lattice& lat, const Rat& depth);

struct HwvResult {
    std::vector<FockVector> vectors;  // spanning set of the joint kernel
    bool window_certified = false;
    std::vector<std::string> notes;
};

/// All vectors of degree within `depth` of the top annihilated by the raising
/// set: alpha_i(n) and p(alpha_i)(n-1/2) for n > 0, X_0(alpha_i) for
/// i = 1..l, and X_{1/2}(-2(alpha_1+...+alpha_l)). Exact slice-by-slice
/// kernel over the cyclotomic scalars.
HwvResult hwv_search(const VertexOps& vx, const Rat& depth, long height,
                     PhaseConvention pc = PhaseConvention::FullExponent);

/// All alpha in Q with coefficient height <= `height` satisfying
/// (alpha, alpha_i) >= 0 for every i and (alpha, alpha_1+...+alpha_l) <= 1/4.
std::vector<LatticeVector> dominance_check(const Lattice& lat, long height);

/// Exact kernel of a sparse row system over Cyc8 (columns = unknowns);
/// returns a spanning set of coefficient vectors.
std::vector<std::vector<Cyc8>> cyc8_kernel(std::vector<std::vector<Cyc8>> rows, size_t ncols);

}  // namespace twistrep
