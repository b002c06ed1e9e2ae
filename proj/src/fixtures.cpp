#include "sscat/fixtures.hpp"

#include <algorithm>
#include <optional>

namespace sscat {

namespace {

std::optional<int> suffix_number(const std::string& name, const std::string& prefix) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
        return std::nullopt;
    std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(c); }))
        return std::nullopt;
    return std::stoi(rest);
}

/// Posets presented by their full order relation.
CatPtr poset_from_relation(const std::vector<std::string>& names,
                           const std::vector<std::pair<int, int>>& strict_pairs) {
    CategoryBuilder b;
    for (const auto& n : names) b.add_object(n);
    const int count = static_cast<int>(names.size());
    std::vector<std::vector<bool>> le(count, std::vector<bool>(count, false));
    for (int i = 0; i < count; ++i) le[i][i] = true;
    for (auto [i, j] : strict_pairs) le[i][j] = true;
    std::vector<std::vector<Idx>> arrow(count, std::vector<Idx>(count, npos));
    for (int i = 0; i < count; ++i) arrow[i][i] = b.peek().ident[i];
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
            if (i != j && le[i][j])
                arrow[i][j] = b.add_morphism("(" + names[i] + "<" + names[j] + ")", i, j);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
            for (int k = 0; k < count; ++k)
                if (le[i][j] && le[j][k]) {
                    if (!le[i][k]) throw std::logic_error("poset relation not transitive");
                    b.set_composite(arrow[j][k], arrow[i][j], arrow[i][k]);
                }
    return b.finish();
}

}  // namespace

CatPtr span_category() {
    CategoryBuilder b;
    b.add_object("0");
    b.add_object("1");
    b.add_object("2");
    b.add_morphism("l", 0, 1);
    b.add_morphism("r", 0, 2);
    return b.finish();
}

CatPtr parallel_pair_category() {
    CategoryBuilder b;
    b.add_object("a");
    b.add_object("b");
    b.add_morphism("f", 0, 1);
    b.add_morphism("g", 0, 1);
    return b.finish();
}

CatPtr bool_lattice_category() {
    // {} < {a},{b} < {ab}
    return poset_from_relation({"e", "a", "b", "ab"},
                               {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
}

CatPtr bowtie_category() {
    // two incomparable upper bounds: no join of {a, b}
    return poset_from_relation({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

CatPtr cyclic2_category() {
    CategoryBuilder b;
    b.add_object("*");
    Idx s = b.add_morphism("s", 0, 0);
    b.set_composite(s, s, b.peek().ident[0]);
    return b.finish();
}

Functor galois_functor() {
    CatPtr two = poset_category(2);
    CatPtr one = poset_category(1);
    return functor_from_monotone(two, one, {0, 1, 1});
}

bool is_category_fixture(const std::string& name) {
    if (suffix_number(name, "poset") || suffix_number(name, "I")) return true;
    return name == "span" || name == "parallel" || name == "B2" || name == "bowtie" ||
           name == "Z2";
}

CatPtr fixture_category(const std::string& name) {
    if (auto n = suffix_number(name, "poset")) return poset_category(*n);
    if (auto n = suffix_number(name, "I")) return iso_category(*n);
    if (name == "span") return span_category();
    if (name == "parallel") return parallel_pair_category();
    if (name == "B2") return bool_lattice_category();
    if (name == "bowtie") return bowtie_category();
    if (name == "Z2") return cyclic2_category();
    throw PreconditionError("unknown category fixture: " + name);
}

std::vector<std::string> category_fixture_names() {
    return {"poset0", "poset1", "poset2", "I1", "span", "parallel", "B2", "bowtie", "Z2"};
}

bool is_simpset_fixture(const std::string& name) {
    if (suffix_number(name, "delta") || suffix_number(name, "boundary") ||
        suffix_number(name, "spine") || suffix_number(name, "G"))
        return true;
    if (name.rfind("horn", 0) == 0) return true;
    if (name.rfind("nerve_", 0) == 0) return is_category_fixture(name.substr(6));
    return false;
}

SimpSetPtr fixture_simpset(const std::string& name, int trunc) {
    if (auto n = suffix_number(name, "delta")) return delta(*n, trunc);
    if (auto n = suffix_number(name, "boundary")) return boundary(*n, trunc).object;
    if (auto n = suffix_number(name, "spine")) return spine_set(*n, trunc).object;
    if (auto n = suffix_number(name, "G")) return spine_set(*n, trunc).object;
    if (name.rfind("horn", 0) == 0) {
        auto sep = name.find('_');
        if (sep == std::string::npos)
            throw PreconditionError("horn fixture is horn{n}_{i}: " + name);
        int n = std::stoi(name.substr(4, sep - 4));
        int i = std::stoi(name.substr(sep + 1));
        return horn(n, i, trunc).object;
    }
    if (name.rfind("nerve_", 0) == 0) return nerve(fixture_category(name.substr(6)), trunc);
    throw PreconditionError("unknown simplicial-set fixture: " + name);
}

std::vector<std::string> simpset_fixture_names() {
    return {"delta0", "delta1", "delta2", "delta3", "boundary1", "boundary2",
            "horn1_0", "horn2_0", "horn2_1", "horn2_2", "spine2", "spine3",
            "G2",     "nerve_poset2", "nerve_I1", "nerve_Z2"};
}

bool is_bisimpset_fixture(const std::string& name) {
    if (suffix_number(name, "F")) return true;
    if (name == "E1") return true;
    if (name.rfind("biG", 0) == 0) return suffix_number(name, "biG").has_value();
    if (name.rfind("classify_", 0) == 0) return is_category_fixture(name.substr(9));
    if (name.rfind("vnerve_", 0) == 0) return is_category_fixture(name.substr(7));
    return false;
}

BiSetPtr fixture_bisimpset(const std::string& name, int htrunc, int vtrunc,
                           std::uint64_t max_enum) {
    if (auto n = suffix_number(name, "F")) return bi_F(*n, htrunc, vtrunc);
    if (auto n = suffix_number(name, "biG")) return bi_spine(*n, htrunc, vtrunc).spine_object;
    if (name == "E1") return e_one(htrunc, vtrunc);
    if (name.rfind("classify_", 0) == 0)
        return classifying_diagram(fixture_category(name.substr(9)), htrunc, vtrunc, max_enum);
    if (name.rfind("vnerve_", 0) == 0)
        return embed_vertical(nerve(fixture_category(name.substr(7)), htrunc), vtrunc);
    throw PreconditionError("unknown bisimplicial fixture: " + name);
}

std::vector<std::string> bisimpset_fixture_names() {
    return {"F0", "F1", "F2", "biG2", "E1", "vnerve_poset1", "vnerve_poset2",
            "vnerve_I1", "classify_poset1", "classify_poset2", "classify_I1",
            "classify_span", "classify_B2", "classify_Z2"};
}

}  // namespace sscat
