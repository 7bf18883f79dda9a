#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistrep/rational.hpp"

namespace twistrep {

/// Exact-rational coordinate vector over the basis {alpha_1,...,alpha_l, beta}
/// (length l+1; the last slot is the beta direction).
struct LatticeVector {
    std::vector<Rat> coeffs;

    int extended_rank() const { return static_cast<int>(coeffs.size()); }

    bool operator==(const LatticeVector& o) const { return coeffs == o.coeffs; }
    bool operator!=(const LatticeVector& o) const { return coeffs != o.coeffs; }
    bool operator<(const LatticeVector& o) const { return coeffs < o.coeffs; }

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator-(const LatticeVector& o) const;
    LatticeVector operator-() const;
    LatticeVector scaled(const Rat& s) const;

    bool is_zero() const;
    /// In the root lattice Q: integer alpha-coefficients, zero beta-coefficient.
    bool in_Q() const;
    /// In Q_M + Z*beta: integer coefficients, zero alpha_l-coefficient.
    bool in_QM_Zbeta() const;

    std::string to_string() const;
};

enum class RootClass { Long, Middle, Short };

const char* root_class_name(RootClass c);

struct RootSystem {
    std::vector<LatticeVector> short_roots;   // norm 1/2
    std::vector<LatticeVector> middle_roots;  // norm 1
    std::vector<LatticeVector> long_roots;    // norm 2

    std::vector<std::pair<LatticeVector, RootClass>> all() const;
    std::optional<RootClass> classify(const LatticeVector& v) const;
};

/// Root lattice of type B_l with the half-normalized bilinear form
/// ((alpha_l,alpha_l) = 1/2) extended by the beta direction of norm 3/2.
class Lattice {
public:
    explicit Lattice(int l);

    int rank() const { return l_; }

    LatticeVector zero() const;
    LatticeVector alpha(int i) const;  // i = 1..l
    LatticeVector beta() const;
    /// Build a vector from alpha-coefficients (beta-coefficient zero).
    LatticeVector from_alpha_coeffs(const std::vector<Rat>& ks) const;
    LatticeVector from_alpha_coeffs(const std::vector<long>& ks) const;

    Rat gram(const LatticeVector& v, const LatticeVector& w) const;
    Rat norm(const LatticeVector& v) const { return gram(v, v); }
    /// Gram entry between basis directions (0..l-1 = alpha_{i+1}, l = beta).
    const Rat& basis_gram(int i, int j) const {
        return gram_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }

    /// All roots of the three classes, enumerated by norm.
    RootSystem roots() const;

    /// 2-cocycle sign on Q x Q, bimultiplicative with
    /// eps(alpha_i, alpha_j) = -1 iff i = j+1.
    int cocycle(const LatticeVector& a, const LatticeVector& b) const;

    /// Coefficient-wise mod-2 folding; the alpha_l-component moves onto beta.
    LatticeVector p_map(const LatticeVector& a) const;
    /// Same folding staying on the alpha coordinates.
    LatticeVector p0_map(const LatticeVector& a) const;

    /// The shift vector lambda = sum i/2 alpha_i.
    LatticeVector lambda() const;

private:
    int l_;
    std::vector<std::vector<Rat>> gram_;  // (l+1) x (l+1)
};

}  // namespace twistrep
