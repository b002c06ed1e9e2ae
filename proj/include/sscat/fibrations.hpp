#ifndef SSCAT_FIBRATIONS_HPP
#define SSCAT_FIBRATIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sscat/fincat.hpp"
#include "sscat/simpset.hpp"
#include "sscat/sspace.hpp"

namespace sscat {

struct FiberedFailure {
    std::string base_morphism;
    std::string source_lift;
    std::size_t lift_count = 0;  // never 1 on a failure
};

struct FiberedReport {
    bool verdict = true;
    std::vector<FiberedFailure> failures;
};

/// Unique-lift condition: every f: x -> y in the base and source lift x'
/// admits exactly one morphism over f starting at x'.
FiberedReport is_cofibered_in_sets(const Functor& p);

struct GrothendieckResult {
    CatPtr total;
    Functor projection;
    // object index of (c, element slot) in the total category
    std::map<std::pair<Idx, Idx>, Idx> object_of;
};

/// Objects (c, x in F(c)); Hom((c,x),(d,y)) = {f : F(f)(x) = y}.
GrothendieckResult grothendieck(const SetFunctor& f);

struct UnderCategoryResult {
    CatPtr cat;        // objects are the morphisms out of x
    Functor projection;
};

UnderCategoryResult under_category(const CatPtr& c, Idx x);

/// Yoneda lemma for cofibered categories: precomposition with id_x gives a
/// bijection Fun_C(C_{x/}, D) -> Fun_C([0], D).
BijectionWitness cofibered_yoneda_check(const Functor& p, Idx c,
                                        std::uint64_t max_enum = kDefaultMaxEnum);

/// Discrete regime: bijectivity of L_1 -> L_0 x_{W_0} W_1 over the source leg.
bool is_left_fibration(const SimpMap& p);
/// The target-leg dual.
bool is_right_fibration(const SimpMap& p);

struct FiberDecomposition {
    std::vector<std::string> fiber0;
    std::vector<std::string> fiber01;
    std::vector<std::string> fiber1;
    // induced transport L_/0 -> L_/1, by name
    std::vector<std::pair<std::string, std::string>> transport;
};

/// Decomposes a left fibration over nerve([1]) into its three fibers and the
/// source-leg zig-zag.
FiberDecomposition fiber_decomposition_over_F1(const SimpMap& p);

/// Nerve of the classical under-category, for discrete w with horizontal
/// truncation >= 3.
BiSetPtr under_css(const BiSetPtr& w, Idx x);

/// Strict-pullback reading of the coCartesian condition: for every z and
/// compatible (g, projected h), exactly one h over it with h after f = g.
bool is_cocartesian_morphism(const Functor& p, Idx f);
bool is_cartesian_morphism(const Functor& p, Idx f);

struct CoCartFailure {
    std::string base_morphism;
    std::string lift_object;
    std::string reason;
};

struct CoCartStructure {
    // per (base morphism, source/target lift object): all (co)Cartesian lifts
    std::map<std::pair<Idx, Idx>, std::vector<Idx>> lifts;
};

struct CoCartResult {
    std::optional<CoCartStructure> structure;
    std::optional<CoCartFailure> failure;
    bool ok() const { return structure.has_value(); }
};

CoCartResult is_cocartesian_fibration(const Functor& p);
CoCartResult is_cartesian_fibration(const Functor& p);

}  // namespace sscat

#endif  // SSCAT_FIBRATIONS_HPP
