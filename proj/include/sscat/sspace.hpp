#ifndef SSCAT_SSPACE_HPP
#define SSCAT_SSPACE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sscat/fincat.hpp"
#include "sscat/simpset.hpp"

namespace sscat {

/// A truncated bisimplicial set. The horizontal direction (index n) is
/// categorical, the vertical direction (index l) homotopical. Horizontal and
/// vertical operators commute.
struct TruncBiSimpSet {
    int htrunc = 0;
    int vtrunc = 0;
    // levels[n][l] = names of X_{n,l}
    std::vector<std::vector<std::vector<std::string>>> levels;
    // hface[n][l][i]: X_{n,l} -> X_{n-1,l}, 1 <= n, 0 <= i <= n
    std::vector<std::vector<std::vector<std::vector<Idx>>>> hface;
    // hdegen[n][l][i]: X_{n,l} -> X_{n+1,l}, n < htrunc
    std::vector<std::vector<std::vector<std::vector<Idx>>>> hdegen;
    // vface[n][l][j]: X_{n,l} -> X_{n,l-1}, 1 <= l, 0 <= j <= l
    std::vector<std::vector<std::vector<std::vector<Idx>>>> vface;
    // vdegen[n][l][j]: X_{n,l} -> X_{n,l+1}, l < vtrunc
    std::vector<std::vector<std::vector<std::vector<Idx>>>> vdegen;

    std::size_t size(int n, int l) const { return levels[n][l].size(); }

    /// The vertical simplicial set X_{n, .}.
    TruncSimpSet column(int n) const;
    /// The horizontal simplicial set X_{., l}.
    TruncSimpSet row(int l) const;

    /// Iterated vertical degeneracy of a (n, 0) element up to level l.
    Idx constant_at(int n, Idx e, int l) const;
    /// Iterated horizontal degeneracy of a (0, l) element up to level n.
    Idx h_constant_at(int l, Idx e, int n) const;

    Idx index_of(int n, int l, const std::string& name) const;
};

using BiSetPtr = std::shared_ptr<const TruncBiSimpSet>;

ValidationReport validate_bisimpset(const TruncBiSimpSet& x);

// ---- embeddings and generators -------------------------------------------------

/// i_F^*: constant in the vertical direction, X_{n,l} = S_n.
BiSetPtr embed_vertical(const SimpSetPtr& s, int vtrunc);
/// i_Delta^*: constant in the horizontal direction, X_{n,l} = S_l.
BiSetPtr embed_horizontal(const SimpSetPtr& s, int htrunc);

BiSetPtr bi_F(int n, int N, int L);  // F(n) = embed_vertical(Delta[n])

struct BiSpine {
    BiSetPtr spine_object;  // G(n)
    BiSetPtr ambient;       // F(n)
};
BiSpine bi_spine(int n, int N, int L);

/// E(1) = embed_vertical(nerve(I(1))).
BiSetPtr e_one(int N, int L);

// ---- Segal ------------------------------------------------------------------

struct SegalSpaceLevel {
    int n = 2;
    // per vertical level l: |X_{n,l}| vs the l-level of the spine fiber product
    std::vector<std::pair<std::size_t, std::size_t>> cards;
    bool levelwise_bijective = false;
    bool pi0_bijective = false;  // the weaker equivalence-level comparison
};

struct SegalVerdict {
    std::vector<SegalSpaceLevel> per_n;
    bool pass() const {
        for (const auto& l : per_n)
            if (!l.levelwise_bijective) return false;
        return true;
    }
};

SegalVerdict segal_space_check(const TruncBiSimpSet& t);

// ---- category theory of a Segal space ----------------------------------------

/// Objects are the points of the zeroth space: X_{0,0}.
std::vector<std::string> objects_of(const TruncBiSimpSet& t);

/// Vertical simplicial set of 1-simplices with source x and target y
/// (fiber of (d_1, d_0) over the degenerate images of (x, y)).
TruncSimpSet mapping_space(const TruncBiSimpSet& t, Idx x, Idx y);

struct CompositionWitnesses {
    std::vector<std::string> witnesses;   // X_{2,0} names with spine (f, g)
    std::vector<std::string> composites;  // d_1 per witness
    std::string chosen_witness;           // lexicographically least
    std::string chosen_composite;
    bool composites_pi0_equal = false;
};

CompositionWitnesses composition_witnesses(const TruncBiSimpSet& t, Idx f, Idx g);

struct HoEquivVerdict {
    bool by_inverses = false;
    std::optional<bool> by_tetra_lift;  // absent when htrunc < 3
    std::vector<std::string> inverse_witnesses;  // "(g, h)" pairs
    std::vector<std::string> tetra_witnesses;    // X_{3,0} names
};

/// f indexes X_{1,0}.
HoEquivVerdict is_hoequiv(const TruncBiSimpSet& t, Idx f);

struct HoEquivData {
    TruncSimpSet hoequiv;                     // vertical sub-object of X_{1,.}
    std::vector<std::vector<Idx>> member_of;  // per l, indices into X_{1,l}
    // per object pair (x,y), the sub-object hoequiv(x,y) of map(x,y)
    std::map<std::pair<Idx, Idx>, TruncSimpSet> per_pair;
};

HoEquivData hoequiv_space(const TruncBiSimpSet& t);

/// The pullback of X_{3,.} along (d_1 d_3, d_1 d_0) against (s_0, s_0):
/// 3-simplices whose two outer-composite edges are degenerate. Asserts the
/// forgetful map (middle edge) is surjective on pi0 of hoequiv.
TruncSimpSet hoeqchoice_space(const TruncBiSimpSet& t);

// ---- completeness ------------------------------------------------------------

enum class VerticalRegime { Discrete, GroupoidNerve, Undecidable };

std::string to_string(VerticalRegime r);

/// Decides the regime of a single vertical simplicial set.
VerticalRegime column_regime(const TruncSimpSet& v);

struct CompletenessReport {
    VerticalRegime strategy = VerticalRegime::Undecidable;
    std::optional<bool> verdict;        // empty when undecidable
    std::size_t objects_card = 0;       // |X_{0,0}|
    std::size_t hoequiv_card = 0;       // |hoequiv at vertical level 0|
    std::string detail;
};

/// Checks s_0: W_0 -> W_hoequiv, by bijection (discrete verticals) or by
/// groupoid equivalence (groupoid-nerve verticals).
CompletenessReport completeness_check(const TruncBiSimpSet& w);

bool is_segal_groupoid(const TruncBiSimpSet& t);
bool homotopically_constant(const TruncBiSimpSet& t);

// ---- classification diagrams ---------------------------------------------------

/// Level (n,l) = l-chains in we(rc.cat^[n]); horizontal operators by
/// reindexing along the cofaces/codegeneracies of the posets [n].
BiSetPtr classification_diagram(const RelativeCategory& rc, int N, int L,
                                std::uint64_t max_enum = kDefaultMaxEnum);

/// classification_diagram(c, core c).
BiSetPtr classifying_diagram(const CatPtr& c, int N, int L,
                             std::uint64_t max_enum = kDefaultMaxEnum);

/// Objects X_{0,0}, Hom = pi0 of mapping spaces, composition through
/// witnesses (independence asserted). Output passes validate_category.
CatPtr homotopy_category(const TruncBiSimpSet& t);

// ---- groupoid extraction (decidable-regime tooling) -----------------------------

/// Reads a vertical simplicial set as the nerve of a groupoid, when it is one.
std::optional<CatPtr> extract_groupoid(const TruncSimpSet& v);

/// Groupoid equivalence along a level map of vertical nerves: pi0 bijection
/// plus automorphism-group isomorphism on matched components.
bool groupoid_equivalence_along(const TruncSimpSet& a, const TruncSimpSet& b,
                                const std::vector<std::vector<Idx>>& level_map,
                                std::string* detail = nullptr);

}  // namespace sscat

#endif  // SSCAT_SSPACE_HPP
