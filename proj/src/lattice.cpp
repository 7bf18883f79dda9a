#include "twistrep/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace twistrep {

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
    if (coeffs.size() != o.coeffs.size()) throw std::invalid_argument("rank mismatch");
    LatticeVector r = *this;
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
    return r;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const {
    return *this + (-o);
}

LatticeVector LatticeVector::operator-() const {
    LatticeVector r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

LatticeVector LatticeVector::scaled(const Rat& s) const {
    LatticeVector r = *this;
    for (auto& c : r.coeffs) c *= s;
    return r;
}

bool LatticeVector::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

bool LatticeVector::in_Q() const {
    if (coeffs.empty() || coeffs.back() != 0) return false;
    for (size_t i = 0; i + 1 < coeffs.size(); ++i)
        if (!is_integer(coeffs[i])) return false;
    return true;
}

bool LatticeVector::in_QM_Zbeta() const {
    size_t l = coeffs.size() - 1;
    if (coeffs[l - 1] != 0) return false;  // alpha_l slot
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (!is_integer(coeffs[i])) return false;
    return true;
}

std::string LatticeVector::to_string() const {
    std::string out;
    size_t l = coeffs.size() - 1;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        std::string name = (i == l) ? "b" : ("a" + std::to_string(i + 1));
        if (!out.empty() && coeffs[i] > 0) out += "+";
        if (coeffs[i] == 1) {
            out += name;
        } else if (coeffs[i] == -1) {
            out += "-" + name;
        } else {
            out += rat_to_string(coeffs[i]) + name;
        }
    }
    return out.empty() ? "0" : out;
}

const char* root_class_name(RootClass c) {
    switch (c) {
        case RootClass::Long: return "long";
        case RootClass::Middle: return "middle";
        case RootClass::Short: return "short";
    }
    return "?";
}

std::vector<std::pair<LatticeVector, RootClass>> RootSystem::all() const {
    std::vector<std::pair<LatticeVector, RootClass>> out;
    for (const auto& v : short_roots) out.emplace_back(v, RootClass::Short);
    for (const auto& v : middle_roots) out.emplace_back(v, RootClass::Middle);
    for (const auto& v : long_roots) out.emplace_back(v, RootClass::Long);
    return out;
}

std::optional<RootClass> RootSystem::classify(const LatticeVector& v) const {
    auto find = [&](const std::vector<LatticeVector>& set) {
        return std::find(set.begin(), set.end(), v) != set.end();
    };
    if (find(short_roots)) return RootClass::Short;
    if (find(middle_roots)) return RootClass::Middle;
    if (find(long_roots)) return RootClass::Long;
    return std::nullopt;
}

Lattice::Lattice(int l) : l_(l) {
    if (l < 2) throw std::invalid_argument("rank must be >= 2");
    int n = l + 1;
    gram_.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    // alpha block: (a_i,a_i) = 1 for i < l, 1/2 for i = l;
    // (a_i,a_j) = -1/2 for adjacent, 0 otherwise.
    for (int i = 0; i < l; ++i) {
        gram_[i][i] = (i == l - 1) ? Rat(1, 2) : Rat(1);
        if (i + 1 < l) gram_[i][i + 1] = gram_[i + 1][i] = Rat(-1, 2);
    }
    // beta row: (b,b) = 3/2, (b,a_i) = (delta_{i,l} - delta_{i,l-1})/2.
    gram_[l][l] = Rat(3, 2);
    gram_[l][l - 1] = gram_[l - 1][l] = Rat(1, 2);
    gram_[l][l - 2] = gram_[l - 2][l] = Rat(-1, 2);
}

LatticeVector Lattice::zero() const {
    return LatticeVector{std::vector<Rat>(static_cast<size_t>(l_ + 1), Rat(0))};
}

LatticeVector Lattice::alpha(int i) const {
    if (i < 1 || i > l_) throw std::out_of_range("alpha index");
    LatticeVector v = zero();
    v.coeffs[static_cast<size_t>(i - 1)] = 1;
    return v;
}

LatticeVector Lattice::beta() const {
    LatticeVector v = zero();
    v.coeffs[static_cast<size_t>(l_)] = 1;
    return v;
}

LatticeVector Lattice::from_alpha_coeffs(const std::vector<Rat>& ks) const {
    if (static_cast<int>(ks.size()) != l_) throw std::invalid_argument("rank mismatch");
    LatticeVector v = zero();
    for (int i = 0; i < l_; ++i) v.coeffs[static_cast<size_t>(i)] = ks[static_cast<size_t>(i)];
    return v;
}

LatticeVector Lattice::from_alpha_coeffs(const std::vector<long>& ks) const {
    std::vector<Rat> rs(ks.begin(), ks.end());
    return from_alpha_coeffs(rs);
}

Rat Lattice::gram(const LatticeVector& v, const LatticeVector& w) const {
    if (v.extended_rank() != l_ + 1 || w.extended_rank() != l_ + 1)
        throw std::invalid_argument("rank mismatch");
    Rat s = 0;
    for (int i = 0; i <= l_; ++i) {
        if (v.coeffs[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j <= l_; ++j) {
            if (w.coeffs[static_cast<size_t>(j)] == 0) continue;
            s += v.coeffs[static_cast<size_t>(i)] * w.coeffs[static_cast<size_t>(j)] *
                 gram_[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    return s;
}

RootSystem Lattice::roots() const {
    // Coefficient height 2 covers all of Delta_S, Delta_M and Delta_L for B_l.
    RootSystem rs;
    std::vector<long> k(static_cast<size_t>(l_), -2);
    while (true) {
        LatticeVector v = from_alpha_coeffs(k);
        Rat n = norm(v);
        if (n == Rat(1, 2)) rs.short_roots.push_back(v);
        else if (n == 1) rs.middle_roots.push_back(v);
        int i = 0;
        for (; i < l_; ++i) {
            if (k[static_cast<size_t>(i)] < 2) {
                ++k[static_cast<size_t>(i)];
                break;
            }
            k[static_cast<size_t>(i)] = -2;
        }
        if (i == l_) break;
    }
    // Delta_L consists exactly of the doubles of short roots (norm 2 alone
    // would also pick up non-root vectors once l >= 4).
    for (const auto& s : rs.short_roots) rs.long_roots.push_back(s.scaled(Rat(2)));
    std::sort(rs.short_roots.begin(), rs.short_roots.end());
    std::sort(rs.middle_roots.begin(), rs.middle_roots.end());
    std::sort(rs.long_roots.begin(), rs.long_roots.end());
    return rs;
}

namespace {
long int_coeff(const Rat& c) {
    if (!is_integer(c)) throw std::invalid_argument("vector not in Q");
    return static_cast<long>(numerator(c));
}
}  // namespace

int Lattice::cocycle(const LatticeVector& a, const LatticeVector& b) const {
    if (!a.in_Q() || !b.in_Q()) throw std::invalid_argument("cocycle arguments must lie in Q");
    // eps(a_i,a_j) = -1 iff i = j+1, extended bimultiplicatively:
    // sign exponent = sum_j k_{j+1} r_j.
    long e = 0;
    for (int j = 1; j < l_; ++j)
        e += int_coeff(a.coeffs[static_cast<size_t>(j)]) *
             int_coeff(b.coeffs[static_cast<size_t>(j - 1)]);
    return (e % 2 == 0) ? 1 : -1;
}

namespace {
// sgn(k)(k - 2*floor(k/2)): 0 for even k, sign of k for odd k (sgn(0) = +1).
long fold_mod2(long k) {
    if (k % 2 == 0) return 0;
    return k >= 0 ? 1 : -1;
}
}  // namespace

LatticeVector Lattice::p_map(const LatticeVector& a) const {
    if (!a.in_Q()) throw std::invalid_argument("p requires an element of Q");
    LatticeVector v = zero();
    for (int i = 0; i < l_ - 1; ++i)
        v.coeffs[static_cast<size_t>(i)] = fold_mod2(int_coeff(a.coeffs[static_cast<size_t>(i)]));
    v.coeffs[static_cast<size_t>(l_)] =
        fold_mod2(int_coeff(a.coeffs[static_cast<size_t>(l_ - 1)]));
    return v;
}

LatticeVector Lattice::p0_map(const LatticeVector& a) const {
    if (!a.in_Q()) throw std::invalid_argument("p0 requires an element of Q");
    LatticeVector v = zero();
    for (int i = 0; i < l_; ++i)
        v.coeffs[static_cast<size_t>(i)] = fold_mod2(int_coeff(a.coeffs[static_cast<size_t>(i)]));
    return v;
}

LatticeVector Lattice::lambda() const {
    LatticeVector v = zero();
    for (int i = 1; i <= l_; ++i) v.coeffs[static_cast<size_t>(i - 1)] = Rat(i, 2);
    return v;
}

}  // namespace twistrep
