#ifndef SSCAT_JSON_IO_HPP
#define SSCAT_JSON_IO_HPP

#include <functional>
#include <string>

#include <json.hpp>

#include "sscat/colim_adj.hpp"
#include "sscat/fincat.hpp"
#include "sscat/simpset.hpp"
#include "sscat/sspace.hpp"

namespace sscat {

using json = nlohmann::json;

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// All emitters produce canonical documents: object keys sorted, arrays in
// stored order, so export-then-load-then-export is bit-stable.

json category_to_json(const FinCategory& c);
json simpset_to_json(const TruncSimpSet& x);
json bisimpset_to_json(const TruncBiSimpSet& x);
json set_functor_to_json(const SetFunctor& f, const std::string& domain_ref);
json functor_to_json(const Functor& f, const std::string& domain_ref,
                     const std::string& codomain_ref);

struct LoadedCategory {
    CatPtr cat;  // null iff the structural pass failed
    ValidationReport report;
};
LoadedCategory category_from_json(const json& j);

struct LoadedSimpSet {
    SimpSetPtr set;
    ValidationReport report;
};
LoadedSimpSet simpset_from_json(const json& j);

struct LoadedBiSimpSet {
    BiSetPtr set;
    ValidationReport report;
};
LoadedBiSimpSet bisimpset_from_json(const json& j);

using CategoryResolver = std::function<CatPtr(const std::string&)>;

Functor functor_from_json(const json& j, const CategoryResolver& resolve);
SetFunctor set_functor_from_json(const json& j, const CategoryResolver& resolve);

/// Canonical text form used for golden hashes and round-trip checks.
std::string canonical_dump(const json& j);

/// FNV-1a over the canonical dump.
std::uint64_t content_hash(const json& j);

/// Objects as nodes, non-identity morphisms as edges.
std::string category_to_dot(const FinCategory& c);

}  // namespace sscat

#endif  // SSCAT_JSON_IO_HPP
