#ifndef SSCAT_FIXTURES_HPP
#define SSCAT_FIXTURES_HPP

#include <string>
#include <vector>

#include "sscat/fincat.hpp"
#include "sscat/simpset.hpp"
#include "sscat/sspace.hpp"

namespace sscat {

// Every standard fixture is constructible by name: poset{n} ([n]), I{n}, span, parallel, B2, bowtie for categories;
// delta{n}, boundary{n}, horn{n}_{i}, spine{n}/G{n} for simplicial sets;
// F{n}, G{n}, E1, classify_{cat} for bisimplicial sets.

bool is_category_fixture(const std::string& name);
bool is_simpset_fixture(const std::string& name);
bool is_bisimpset_fixture(const std::string& name);

CatPtr fixture_category(const std::string& name);
SimpSetPtr fixture_simpset(const std::string& name, int trunc);
BiSetPtr fixture_bisimpset(const std::string& name, int htrunc, int vtrunc,
                           std::uint64_t max_enum = kDefaultMaxEnum);

std::vector<std::string> category_fixture_names();
std::vector<std::string> simpset_fixture_names();
std::vector<std::string> bisimpset_fixture_names();

// Hand-built small categories used across the suites.
CatPtr span_category();            // 1 <- 0 -> 2
CatPtr parallel_pair_category();   // a => b
CatPtr bool_lattice_category();    // subsets of {a,b} ordered by inclusion
CatPtr bowtie_category();          // a,b < c,d with no join
CatPtr cyclic2_category();         // the group Z/2 as a one-object category

/// The Galois-connection fixture F: [2] -> [1], 0 |-> 0, 1,2 |-> 1.
Functor galois_functor();

}  // namespace sscat

#endif  // SSCAT_FIXTURES_HPP
