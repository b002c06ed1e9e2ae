#ifndef SSCAT_SIMPSET_HPP
#define SSCAT_SIMPSET_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sscat/core.hpp"
#include "sscat/fincat.hpp"

namespace sscat {

/// A truncated simplicial set: finite levels X_0..X_N with total face and
/// degeneracy tables. Operator convention throughout: d_0 = target,
/// d_1 = source at level 1, faces drop vertices, degeneracies repeat them.
struct TruncSimpSet {
    int truncation = 0;
    std::vector<std::vector<std::string>> levels;  // names, levels[n]
    // face[n][i]: X_n -> X_{n-1}, 1 <= n <= N, 0 <= i <= n
    std::vector<std::vector<std::vector<Idx>>> face;
    // degen[n][i]: X_n -> X_{n+1}, 0 <= n < N, 0 <= i <= n
    std::vector<std::vector<std::vector<Idx>>> degen;
    std::vector<std::unordered_map<std::string, Idx>> index;

    std::size_t level_size(int n) const { return levels[n].size(); }
    Idx d(int n, int i, Idx x) const { return face[n][i][x]; }
    Idx s(int n, int i, Idx x) const { return degen[n][i][x]; }
    Idx index_of(int n, const std::string& name) const;

    /// Iterated face of x onto the vertex subset `keep` (sorted ascending).
    Idx face_on_subset(int n, Idx x, const std::vector<int>& keep) const;
    /// The k-th spine edge (1-based) of an n-simplex: its {k-1,k} face.
    Idx spine_edge(int n, Idx x, int k) const;
    /// The j-th vertex of an n-simplex.
    Idx vertex(int n, Idx x, int j) const;

    bool is_degenerate(int n, Idx x) const;

    void rebuild_index();
};

using SimpSetPtr = std::shared_ptr<const TruncSimpSet>;

struct SimpMap {
    SimpSetPtr dom;
    SimpSetPtr cod;
    std::vector<std::vector<Idx>> level_map;  // per level n

    Idx at(int n, Idx x) const { return level_map[n][x]; }
};

/// A commutative lifting square: i: A -> B against p: Y -> X with
/// top: A -> Y and bottom: B -> X.
struct LiftProblem {
    SimpMap i;
    SimpMap p;
    SimpMap top;
    SimpMap bottom;
};

ValidationReport validate_simpset(const TruncSimpSet& x);
bool simp_map_commutes(const SimpMap& f);
SimpMap compose_maps(const SimpMap& g, const SimpMap& f);
SimpMap identity_map(const SimpSetPtr& x);
bool maps_equal(const SimpMap& a, const SimpMap& b);

// ---- generators -----------------------------------------------------------

/// Delta[n] truncated at N: level m = monotone maps [m] -> [n], named by
/// vertex words.
SimpSetPtr delta(int n, int N);

struct SubObject {
    SimpSetPtr object;
    SimpMap inclusion;  // into the ambient generator
};

/// Boundary dDelta[n]: the non-surjective monotone maps.
SubObject boundary(int n, int N);

/// Horn Lambda[n]_i: non-surjective maps where a missing i forces a second
/// missing vertex.
SubObject horn(int n, int i, int N);

/// Spine G(n) inside Delta[n]: simplices whose image lies in some {j, j+1}.
SubObject spine_set(int n, int N);

/// Nerve: level m = composable m-chains, level 0 = objects.
SimpSetPtr nerve(const CatPtr& c, int N);

/// Nerve plus the chain of morphism indices behind every simplex
/// (chains[0][e] holds the object index).
struct NerveData {
    SimpSetPtr set;
    std::vector<std::vector<std::vector<Idx>>> chains;
};
NerveData nerve_with_chains(const CatPtr& c, int N);

/// Level-wise chain image of a functor, a simplicial map NC -> ND.
SimpMap nerve_map(const Functor& f, int N);

/// Simplicial map between delta-like objects (names are vertex words) induced
/// by a vertex assignment; throws if some simplex image fails monotonicity.
SimpMap map_from_vertices(const SimpSetPtr& dom, const SimpSetPtr& cod,
                          const std::vector<int>& vertex_images);

/// The unique map to delta(0, N).
SimpMap map_to_point(const SimpSetPtr& x);

// ---- Segal -----------------------------------------------------------------

struct SegalLevel {
    int n = 0;
    std::size_t level_card = 0;
    std::size_t fiber_product_card = 0;
    bool injective = false;
    bool surjective = false;
    bool bijective() const { return injective && surjective; }
};

struct SegalReport {
    std::vector<SegalLevel> per_level;  // n = 2..N
    bool pass() const {
        for (const auto& l : per_level)
            if (!l.injective || !l.surjective) return false;
        return true;
    }
};

SegalReport segal_check(const TruncSimpSet& x);

/// Rebuilds the category from a Segal simplicial set (truncation >= 3):
/// O = X_0, M = X_1, src = d_1, tgt = d_0, ident = s_0, composition through
/// the level-2 bijection followed by d_1.
CatPtr category_from_segal(const TruncSimpSet& x);

// ---- map enumeration / lifting ----------------------------------------------

/// All simplicial maps x -> y in deterministic (lexicographic) order.
std::vector<SimpMap> simplicial_maps(const SimpSetPtr& x, const SimpSetPtr& y,
                                     std::uint64_t max_enum = kDefaultMaxEnum);

/// All diagonal lifts B -> Y of a commutative square; empty means no lift
/// within the truncation.
std::vector<SimpMap> solve_lift(const LiftProblem& lp,
                                std::uint64_t max_enum = kDefaultMaxEnum);

struct FibrationWitness {
    int n = 0;
    int horn_index = 0;             // i of Lambda[n]_i, or -1 for a boundary square
    std::vector<std::string> top;   // image names of the top map, level by level
    std::vector<std::string> bottom;
};

struct FibrationReport {
    bool kan_fibration = true;
    bool trivial_fibration = true;
    std::optional<FibrationWitness> kan_witness;
    std::optional<FibrationWitness> trivial_witness;
};

/// Tests RLP against all horn inclusions (Kan) and all boundary inclusions
/// (trivial) for simplex dimensions n <= up_to.
FibrationReport classify_fibration(const SimpMap& p, int up_to,
                                   std::uint64_t max_enum = kDefaultMaxEnum);

/// Finest partition of X_0 with d_1(e) ~ d_0(e) for every edge e. Returns the
/// class representative (smallest index) per vertex.
std::vector<Idx> pi0(const TruncSimpSet& x);

// ---- products -----------------------------------------------------------------

SimpSetPtr product(const SimpSetPtr& x, const SimpSetPtr& y);

struct PullbackResult {
    SimpSetPtr object;
    SimpMap to_left;   // projection to f.dom
    SimpMap to_right;  // projection to g.dom
};

/// Levelwise fiber product of f: X -> Z and g: Y -> Z.
PullbackResult pullback(const SimpMap& f, const SimpMap& g);

}  // namespace sscat

#endif  // SSCAT_SIMPSET_HPP
