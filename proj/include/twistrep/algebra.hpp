#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "twistrep/vertex.hpp"

namespace twistrep {

/// A finitely-supported graded operator on V(Q).
struct ModeOperator {
    std::string name;
    Rat degree;  // grading shift
    std::function<FockVector(const FockVector&)> apply;
};

FockVector commutator(const ModeOperator& A, const ModeOperator& B, const FockVector& v);

/// Memoizing wrapper for vertex-mode application: X_d(alpha) on single
/// monomials, keyed by (alpha, 2d, monomial).
class ModeCache {
public:
    ModeCache(const VertexOps& vx, PhaseConvention pc) : vx_(vx), pc_(pc) {}

    FockVector x_mode(const LatticeVector& alpha, int d2, const FockVector& v);
    PhaseConvention convention() const { return pc_; }
    const VertexOps& vertex_ops() const { return vx_; }

private:
    const VertexOps& vx_;
    PhaseConvention pc_;
    std::map<std::tuple<std::vector<Rat>, int, FockMonomial>, FockVector> cache_;
};

/// Chevalley-style generators of the twisted algebra on V(Q). The f_i are
/// scalar-normalized (diagonal automorphism) so that [e_i, f_i] = h_i holds
/// exactly; the factors applied to the raw modes X_0(-alpha_i) are recorded.
struct GeneratorDictionary {
    std::vector<ModeOperator> e, f, h;  // indices 0..l
    ModeOperator d;                     // -d_0
    std::vector<Cyc8> f_scale;          // f_i = f_scale[i] * raw lowering mode
};

GeneratorDictionary make_generators(const VertexOps& vx, PhaseConvention pc);

/// GCM a_ij = 2(alpha_i,alpha_j)/(alpha_i,alpha_i) over the affine simple
/// roots, with alpha_0 = delta - 2(alpha_1+...+alpha_l) and (delta,.) = 0.
std::vector<std::vector<Rat>> cartan_matrix(const Lattice& lat);

/// Structured result of one commutator check.
struct BracketReport {
    std::string lemma;      // e.g. "5.6a"; suffix "m" marks a mirrored pair
    std::string root_a;
    std::string root_b;
    int m = 0, n = 0;       // paper-style integer mode indices (d = m/2)
    std::string target;     // description of the predicted right-hand side
    bool consistent = false;
    std::optional<Cyc8> fitted;        // scalar explaining the bracket exactly
    std::optional<Cyc8> stated;        // the constant the source lemma states
    bool matches_stated = false;
    std::string phase_convention;
    std::string witness;    // first failing vector, when inconsistent
    std::string notes;
};

/// The dispatch target for a root pair.
struct PairCase {
    enum class Kind { Diagonal, Root, Zero };
    Kind kind = Kind::Zero;
    std::string lemma;
    LatticeVector target;  // a+b when Kind::Root
    std::function<std::optional<Cyc8>(long m, long n)> stated;
    std::string notes;
};

PairCase classify_pair(const VertexOps& vx, const LatticeVector& a, const LatticeVector& b);

/// [X_{m/2}(a), X_{n/2}(b)] on every basis vector, fitted against the
/// predicted target; m2 = m, n2 = n in paper indexing (d2 = m).
BracketReport check_root_bracket(ModeCache& cache, const LatticeVector& a, const LatticeVector& b,
                                 int m2, int n2, const std::vector<FockMonomial>& basis);

/// All root pairs and parity-admissible modes |m|,|n| <= max_m2.
std::vector<BracketReport> run_bracket_suite(const VertexOps& vx, int max_m2,
                                             const std::vector<FockMonomial>& basis,
                                             PhaseConvention pc, int jobs = 1);

/// Per-parity uniformity of the fitted constants across a suite's reports:
/// returns descriptions of any (pair, parity-class) with non-uniform fits.
std::vector<std::string> parity_uniformity_failures(const std::vector<BracketReport>& reports);

struct CheckLine {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// [a(n), X_{m/2}(alpha)] = (a,alpha) X_{n+m/2}(alpha), exact equality.
std::vector<CheckLine> run_heisenberg_covariance_suite(const VertexOps& vx, int max_n,
                                                       int max_d2,
                                                       const std::vector<FockMonomial>& basis,
                                                       PhaseConvention pc);

/// Cartan relations of the generator dictionary on the window basis.
std::vector<CheckLine> run_cartan_suite(const VertexOps& vx,
                                        const std::vector<FockMonomial>& basis,
                                        PhaseConvention pc);

/// Jacobiator on seeded operator triples (an exactness integrity check).
std::vector<CheckLine> run_jacobi_suite(const VertexOps& vx,
                                        const std::vector<FockMonomial>& basis,
                                        PhaseConvention pc, int triples, unsigned seed);

/// Truncated-series contraction identities for E and F operator pairs
/// (swap rule with binomial prefactors), order `order` in w/z.
std::vector<CheckLine> run_contraction_suite(const VertexOps& vx, int order,
                                             const std::vector<FockMonomial>& sample);

/// Mode-support parity: integer-indexed modes of long roots vanish.
std::vector<CheckLine> run_parity_suite(const VertexOps& vx,
                                        const std::vector<FockMonomial>& basis,
                                        PhaseConvention pc);

/// Grading: [d0, a(m)] = -m a(m) and deg(X_d(alpha) v) = deg(v) + d.
std::vector<CheckLine> run_grading_suite(const VertexOps& vx,
                                         const std::vector<FockMonomial>& basis,
                                         PhaseConvention pc);

}  // namespace twistrep
