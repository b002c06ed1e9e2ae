#ifndef SSCAT_FINCAT_HPP
#define SSCAT_FINCAT_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sscat/core.hpp"

namespace sscat {

/// A finite category as explicit tables: object and morphism identifiers,
/// source/target/identity assignments and a composition table over exactly
/// the composable pairs. Values are immutable after construction.
struct FinCategory {
    std::vector<std::string> objects;
    std::vector<std::string> morphisms;
    std::vector<Idx> src;    // per morphism
    std::vector<Idx> tgt;    // per morphism
    std::vector<Idx> ident;  // per object

    // comp(g, f) = "g after f", defined exactly when tgt(f) = src(g).
    // Keyed by g * |M| + f.
    std::unordered_map<std::uint64_t, Idx> comp_table;

    std::unordered_map<std::string, Idx> object_index;
    std::unordered_map<std::string, Idx> morphism_index;

    std::size_t object_count() const { return objects.size(); }
    std::size_t morphism_count() const { return morphisms.size(); }

    bool composable(Idx g, Idx f) const { return tgt[f] == src[g]; }

    Idx compose(Idx g, Idx f) const {
        auto it = comp_table.find(comp_key(g, f));
        return it == comp_table.end() ? npos : it->second;
    }

    Idx object_of(const std::string& name) const;
    Idx morphism_of(const std::string& name) const;

    std::vector<Idx> hom(Idx x, Idx y) const;

    bool is_identity(Idx m) const { return ident[src[m]] == m; }
    bool is_invertible(Idx m) const;
    std::optional<Idx> inverse(Idx m) const;

    static std::uint64_t comp_key(Idx g, Idx f) {
        return (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint64_t>(f);
    }
    static std::pair<Idx, Idx> comp_key_parts(std::uint64_t key) {
        return {static_cast<Idx>(key >> 32), static_cast<Idx>(key & 0xffffffffULL)};
    }

    void rebuild_index();
};

using CatPtr = std::shared_ptr<const FinCategory>;

/// Incremental construction; finish() freezes the tables.
class CategoryBuilder {
public:
    Idx add_object(const std::string& name);
    // Identity morphisms are added automatically per object; add_morphism is
    // for the non-identity ones.
    Idx add_morphism(const std::string& name, Idx source, Idx target);
    void set_composite(Idx g, Idx f, Idx gf);
    CatPtr finish();

    const FinCategory& peek() const { return cat_; }

private:
    FinCategory cat_;
};

struct ValidationIssue {
    std::string axiom;    // "structure", "identity-endpoints", "composition-domain",
                          // "source-target", "unit", "associativity"
    std::string witness;  // offending tuple, human readable
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

struct Functor {
    CatPtr dom;
    CatPtr cod;
    std::vector<Idx> ob_map;   // per dom object
    std::vector<Idx> mor_map;  // per dom morphism
};

struct NatTrans {
    Functor source;
    Functor target;                // same dom/cod as source
    std::vector<Idx> components;   // per dom object, a cod morphism
};

struct RelativeCategory {
    CatPtr cat;
    std::vector<bool> weak;  // per morphism
};

/// Finite-set-valued functor on a finite category.
struct SetFunctor {
    CatPtr dom;
    std::vector<std::vector<std::string>> ob_elems;  // per object, element names
    std::vector<std::vector<Idx>> mor_fn;            // per morphism, function table
};

// ---- validation --------------------------------------------------------

ValidationReport validate_category(const FinCategory& c);
ValidationReport validate_functor(const Functor& f);
ValidationReport validate_nat_trans(const NatTrans& a);
ValidationReport validate_relative_category(const RelativeCategory& rc);
ValidationReport validate_set_functor(const SetFunctor& f);

// ---- standard generators ------------------------------------------------

/// The poset [n]: objects 0..n, morphisms the pairs (i,j) with i <= j.
CatPtr poset_category(int n);

/// I(n): n+1 objects with exactly one morphism between every ordered pair,
/// all invertible (the chaotic groupoid).
CatPtr iso_category(int n);

/// Maximal subgroupoid: same objects, exactly the invertible morphisms.
CatPtr core(const CatPtr& c);

CatPtr opposite(const CatPtr& c);

/// Product category c x d; object names "(a,b)", morphism names "(f,g)".
CatPtr product_category(const CatPtr& c, const CatPtr& d);

// ---- functor machinery ---------------------------------------------------

bool functor_equal(const Functor& f, const Functor& g);
Functor identity_functor(const CatPtr& c);
Functor compose_functors(const Functor& g, const Functor& f);  // g after f

/// The functor [m] -> [n] ("dom_poset" -> "cod_poset") induced by a monotone
/// assignment of objects; throws if the assignment is not monotone.
Functor functor_from_monotone(const CatPtr& dom_poset, const CatPtr& cod_poset,
                              const std::vector<int>& images);

/// All functors c -> d in deterministic order.
std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& d,
                                        std::uint64_t max_enum = kDefaultMaxEnum);

/// Per-assignment admissibility constraints for functor search.
struct FunctorConstraints {
    std::function<bool(Idx, Idx)> object_ok;    // (dom object, cod object)
    std::function<bool(Idx, Idx)> morphism_ok;  // (dom morphism, cod morphism)
};

std::vector<Functor> enumerate_functors_where(const CatPtr& c, const CatPtr& d,
                                              const FunctorConstraints& constraints,
                                              std::uint64_t max_enum = kDefaultMaxEnum);

/// All natural transformations f => g (same dom/cod) in deterministic order.
std::vector<NatTrans> enumerate_nat_trans(const Functor& f, const Functor& g,
                                          std::uint64_t max_enum = kDefaultMaxEnum);

/// Canonical structural keys, used to locate enumerated functors and
/// transformations inside a FunctorCategory.
std::string functor_key(const Functor& f);
std::string trans_key(const NatTrans& t);

/// Fun(c,d) together with the enumerated functor/transformation data backing
/// each object and morphism.
struct FunctorCategory {
    CatPtr cat;
    std::vector<Functor> functor_of_object;    // per object of cat
    std::vector<NatTrans> trans_of_morphism;   // per morphism of cat
    std::unordered_map<std::string, Idx> functor_index;  // functor_key -> object
    std::unordered_map<std::string, Idx> trans_index;    // trans_key -> morphism

    Idx object_of_functor(const Functor& f) const;
    Idx morphism_of_trans(const NatTrans& t) const;
};

FunctorCategory functor_category(const CatPtr& c, const CatPtr& d,
                                 std::uint64_t max_enum = kDefaultMaxEnum);

/// we(rc.cat^d): all functors d -> rc.cat, only componentwise-weak
/// natural transformations.
FunctorCategory we_functor_category(const RelativeCategory& rc, const CatPtr& d,
                                    std::uint64_t max_enum = kDefaultMaxEnum);

// ---- Yoneda --------------------------------------------------------------

/// The representable set functor Hom(x, -).
SetFunctor yoneda_functor(const CatPtr& c, Idx x);

struct BijectionWitness {
    // forward[i] = (natural transformation label, element of F(x))
    std::vector<std::pair<std::string, std::string>> forward;
    bool bijective = false;
    std::string detail;
};

/// Enumerates Nat(Y_x, F) and exhibits alpha |-> alpha_x(id_x) with its
/// enumerated inverse. Throws if the map fails to be a bijection, which
/// would indicate an implementation bug.
BijectionWitness yoneda_check(const CatPtr& c, Idx x, const SetFunctor& f,
                              std::uint64_t max_enum = kDefaultMaxEnum);

// ---- isomorphism search ---------------------------------------------------

/// Searches for an isomorphism of categories (bijective on objects and
/// morphisms, structure preserving).
bool categories_isomorphic(const CatPtr& a, const CatPtr& b,
                           std::uint64_t max_enum = kDefaultMaxEnum);

}  // namespace sscat

#endif  // SSCAT_FINCAT_HPP
