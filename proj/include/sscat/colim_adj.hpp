#ifndef SSCAT_COLIM_ADJ_HPP
#define SSCAT_COLIM_ADJ_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sscat/fibrations.hpp"
#include "sscat/fincat.hpp"

namespace sscat {

/// Objects with exactly one morphism to every object. Members are pairwise
/// uniquely isomorphic (asserted).
std::vector<Idx> initial_objects(const CatPtr& c);
std::vector<Idx> final_objects(const CatPtr& c);

struct Cocone {
    Functor diagram;        // I -> C
    Idx vertex;             // object of C
    std::vector<Idx> legs;  // per I-object, a morphism F(i) -> vertex
};

struct CoconeCategory {
    CatPtr cat;
    std::vector<Cocone> cocone_of_object;
};

/// Objects are cocones under the diagram, morphisms the vertex maps
/// commuting with every leg.
CoconeCategory cocone_category(const Functor& f, std::uint64_t max_enum = kDefaultMaxEnum);

/// Initial object of the cocone category, when one exists; the result is
/// cross-checked against colimit_oracle.
std::optional<Cocone> colimit(const Functor& f, std::uint64_t max_enum = kDefaultMaxEnum);

/// Universal-property oracle: for every object y the canonical map
/// Hom(vertex, y) -> {cocones with vertex y} is a bijection.
bool colimit_oracle(const Functor& f, const Cocone& cand);

struct CollageResult {
    CatPtr total;
    Functor to_interval;  // projection to poset_category(1)
};

/// The category over [1] with cross homs Hom_D(Fc, d); its projection is a
/// coCartesian fibration for every functor (asserted by tests).
CollageResult collage(const Functor& f, std::uint64_t max_enum = kDefaultMaxEnum);

struct AdjunctionCertificate {
    Functor left;
    Functor right;
    // per (c, d): matched pairs (u in Hom(Fc,d), h in Hom(c,Gd))
    std::map<std::pair<Idx, Idx>, std::vector<std::pair<Idx, Idx>>> hom_bijections;
    bool natural = false;
};

struct AdjointSearch {
    std::optional<Functor> adjoint;
    std::optional<AdjunctionCertificate> certificate;
    std::string failing_object;  // set when no adjoint exists
};

/// Decides whether f is a left adjoint by building each comma category
/// (f down d) and hunting final objects; on success returns the right
/// adjoint and an exhaustively checked certificate.
AdjointSearch left_adjoint_via_comma(const Functor& f,
                                     std::uint64_t max_enum = kDefaultMaxEnum);

/// Dual search (no certificate): whether f is a right adjoint, returning the
/// left adjoint.
AdjointSearch right_adjoint_via_comma(const Functor& f,
                                      std::uint64_t max_enum = kDefaultMaxEnum);

struct AdjunctionConsistency {
    bool collage_cocartesian = false;   // must hold for every functor
    bool cartesian_route = false;       // is_cartesian_fibration(collage(f))
    bool comma_route = false;           // left_adjoint_via_comma succeeds
    bool agree() const { return cartesian_route == comma_route; }
};

AdjunctionConsistency adjunction_consistency(const Functor& f,
                                             std::uint64_t max_enum = kDefaultMaxEnum);

struct DeltaAdjointReport {
    bool delta_has_left_adjoint = false;   // colimit functor exists
    bool all_diagrams_have_colimits = false;
    bool delta_has_right_adjoint = false;  // limit functor exists
    bool all_diagrams_have_limits = false;
    bool colimit_routes_agree() const {
        return delta_has_left_adjoint == all_diagrams_have_colimits;
    }
    bool limit_routes_agree() const {
        return delta_has_right_adjoint == all_diagrams_have_limits;
    }
};

/// Builds the constant-diagram functor W -> Fun(I, W) and cross-checks its
/// adjoints against diagram-by-diagram (co)limit existence.
DeltaAdjointReport delta_adjoint_check(const CatPtr& w, const CatPtr& i,
                                       std::uint64_t max_enum = kDefaultMaxEnum);

}  // namespace sscat

#endif  // SSCAT_COLIM_ADJ_HPP
