#include <doctest.h>

#include <set>

#include "sscat/fixtures.hpp"
#include "sscat/sspace.hpp"

using namespace sscat;

namespace {

std::size_t pi0_count(const std::vector<Idx>& classes) {
    return std::set<Idx>(classes.begin(), classes.end()).size();
}

}  // namespace

TEST_CASE("embeddings validate and have the right levels") {
    auto s = nerve(fixture_category("span"), 2);
    auto v = embed_vertical(s, 2);
    CHECK(validate_bisimpset(*v).ok());
    for (int n = 0; n <= 2; ++n)
        for (int l = 0; l <= 2; ++l) CHECK(v->size(n, l) == s->levels[n].size());

    auto h = embed_horizontal(s, 2);
    CHECK(validate_bisimpset(*h).ok());
    for (int n = 0; n <= 2; ++n)
        for (int l = 0; l <= 2; ++l) CHECK(h->size(n, l) == s->levels[l].size());

    auto f0 = bi_F(0, 2, 2);
    for (int n = 0; n <= 2; ++n)
        for (int l = 0; l <= 2; ++l) CHECK(f0->size(n, l) == 1);
}

TEST_CASE("bi_spine levels") {
    auto g2 = bi_spine(2, 2, 1);
    CHECK(validate_bisimpset(*g2.spine_object).ok());
    CHECK(g2.spine_object->size(2, 0) == 7);
    CHECK(g2.ambient->size(2, 0) == 10);
}

TEST_CASE("E(1) counts") {
    auto e1 = e_one(3, 1);
    CHECK(validate_bisimpset(*e1).ok());
    CHECK(e1->size(0, 0) == 2);
    CHECK(e1->size(1, 0) == 4);
    CHECK(e1->size(2, 0) == 8);
    CHECK(e1->size(3, 0) == 16);
}

TEST_CASE("segal_space_check") {
    for (const auto& name : {"poset2", "I1", "span"}) {
        auto t = embed_vertical(nerve(fixture_category(name), 3), 1);
        CHECK(segal_space_check(*t).pass());
    }
    // the spine fails with 7 vs 8 at n = 2
    auto g2 = bi_spine(2, 2, 1).spine_object;
    auto verdict = segal_space_check(*g2);
    REQUIRE_FALSE(verdict.pass());
    CHECK(verdict.per_n[0].n == 2);
    CHECK(verdict.per_n[0].cards[0].first == 7);
    CHECK(verdict.per_n[0].cards[0].second == 8);

    for (const auto& name : {"poset1", "poset2", "I1"}) {
        auto cd = classifying_diagram(fixture_category(name), 3, 2);
        CHECK(validate_bisimpset(*cd).ok());
        CHECK(segal_space_check(*cd).pass());
    }
}

TEST_CASE("classifying diagram levels match Hom([n] x I(l), C)") {
    // independent oracle: enumerate functors from the product category
    for (const auto& name : {"poset1", "poset2", "I1", "span"}) {
        auto c = fixture_category(name);
        auto cd = classifying_diagram(c, 2, 2);
        for (int n = 0; n <= 2; ++n)
            for (int l = 0; l <= 2; ++l) {
                auto prod = product_category(poset_category(n), iso_category(l));
                auto fs = enumerate_functors(prod, c);
                CHECK(cd->size(n, l) == fs.size());
            }
    }
}

TEST_CASE("mapping spaces") {
    // in a vertical nerve the mapping space is the discrete hom set
    auto c = fixture_category("poset2");
    auto t = embed_vertical(nerve(c, 2), 1);
    for (Idx x = 0; x < 3; ++x)
        for (Idx y = 0; y < 3; ++y) {
            auto m = mapping_space(*t, x, y);
            CHECK(m.levels[0].size() == c->hom(x, y).size());
            CHECK(validate_simpset(m).ok());
        }
    // map(x, x) in F(0) is a point
    auto f0 = bi_F(0, 2, 2);
    CHECK(mapping_space(*f0, 0, 0).levels[0].size() == 1);

    // in a classification diagram, pi0(map(x,y)) recovers Hom(x,y)
    for (const auto& name : {"poset1", "I1", "span"}) {
        auto cat = fixture_category(name);
        auto cd = classifying_diagram(cat, 2, 2);
        for (Idx x = 0; x < cat->objects.size(); ++x)
            for (Idx y = 0; y < cat->objects.size(); ++y) {
                auto m = mapping_space(*cd, x, y);
                CHECK(pi0_count(pi0(m)) == cat->hom(x, y).size());
            }
    }
}

TEST_CASE("composition witnesses") {
    auto c = fixture_category("poset2");
    auto t = embed_vertical(nerve(c, 2), 1);
    Idx f = t->index_of(1, 0, "(0,1)");
    Idx g = t->index_of(1, 0, "(1,2)");
    auto w = composition_witnesses(*t, f, g);
    CHECK(w.witnesses.size() == 1);
    CHECK(w.chosen_composite == "(0,2)");
    CHECK(w.composites_pi0_equal);

    Idx id0 = t->index_of(1, 0, "id_0");
    auto wi = composition_witnesses(*t, id0, id0);
    CHECK(wi.chosen_composite == "id_0");

    // witness count is 1 per composable pair in a classification diagram
    auto cd = classifying_diagram(iso_category(1), 2, 1);
    for (Idx f2 = 0; f2 < cd->size(1, 0); ++f2)
        for (Idx g2 = 0; g2 < cd->size(1, 0); ++g2) {
            if (cd->hface[1][0][0][f2] != cd->hface[1][0][1][g2]) continue;
            auto wc = composition_witnesses(*cd, f2, g2);
            CHECK(wc.witnesses.size() == 1);
            CHECK(wc.composites_pi0_equal);
        }
}

TEST_CASE("is_hoequiv: both routes agree on fixtures") {
    auto e1 = e_one(3, 1);
    for (Idx e = 0; e < e1->size(1, 0); ++e) {
        auto v = is_hoequiv(*e1, e);
        CHECK(v.by_inverses);
        REQUIRE(v.by_tetra_lift.has_value());
        CHECK(*v.by_tetra_lift);
    }
    auto p1 = embed_vertical(nerve(fixture_category("poset1"), 3), 1);
    Idx arrow = p1->index_of(1, 0, "(0,1)");
    auto v = is_hoequiv(*p1, arrow);
    CHECK_FALSE(v.by_inverses);
    REQUIRE(v.by_tetra_lift.has_value());
    CHECK_FALSE(*v.by_tetra_lift);
    Idx id0 = p1->index_of(1, 0, "id_0");
    auto vid = is_hoequiv(*p1, id0);
    CHECK(vid.by_inverses);
    CHECK(*vid.by_tetra_lift);

    for (const auto& name : {"poset2", "I1", "span", "B2"}) {
        auto t = embed_vertical(nerve(fixture_category(name), 3), 1);
        for (Idx e = 0; e < t->size(1, 0); ++e) {
            auto verdict = is_hoequiv(*t, e);
            REQUIRE(verdict.by_tetra_lift.has_value());
            CHECK(verdict.by_inverses == *verdict.by_tetra_lift);
        }
    }
}

TEST_CASE("hoequiv_space") {
    auto e1 = e_one(3, 1);
    auto hd = hoequiv_space(*e1);
    CHECK(hd.member_of[0].size() == 4);

    auto p1 = embed_vertical(nerve(fixture_category("poset1"), 3), 1);
    auto hd1 = hoequiv_space(*p1);
    CHECK(hd1.member_of[0].size() == 2);  // only the degenerate edges

    auto f0 = bi_F(0, 3, 1);
    CHECK(hoequiv_space(*f0).member_of[0].size() == 1);

    // hoequiv is closed under pi0: each member is itself an equivalence
    for (const auto& name : {"poset1", "I1", "span"}) {
        auto t = classifying_diagram(fixture_category(name), 3, 2);
        auto hd2 = hoequiv_space(*t);
        for (Idx e : hd2.member_of[0]) CHECK(is_hoequiv(*t, e).by_inverses);
    }
}

TEST_CASE("hoeqchoice_space") {
    auto e1 = e_one(3, 1);
    auto choice = hoeqchoice_space(*e1);
    CHECK(validate_simpset(choice).ok());
    // chains (h, f, g) with f after h and g after f both degenerate: one per
    // equivalence edge in E(1)
    CHECK(choice.levels[0].size() == 4);

    auto p1 = embed_vertical(nerve(fixture_category("poset1"), 3), 1);
    auto cp = hoeqchoice_space(*p1);
    CHECK(cp.levels[0].size() == 2);  // identity tetra per object
}

TEST_CASE("completeness") {
    auto e1 = e_one(3, 1);
    auto rep = completeness_check(*e1);
    CHECK(rep.strategy == VerticalRegime::Discrete);
    REQUIRE(rep.verdict.has_value());
    CHECK_FALSE(*rep.verdict);
    CHECK(rep.objects_card == 2);
    CHECK(rep.hoequiv_card == 4);

    auto f0 = bi_F(0, 3, 1);
    auto rep0 = completeness_check(*f0);
    REQUIRE(rep0.verdict.has_value());
    CHECK(*rep0.verdict);

    for (const auto& name : {"poset1", "poset2", "I1", "span", "B2"}) {
        auto cd = classifying_diagram(fixture_category(name), 3, 2);
        auto repc = completeness_check(*cd);
        REQUIRE(repc.verdict.has_value());
        CHECK(*repc.verdict);
    }

    // vertical nerves fail completeness exactly when a nonidentity iso exists
    auto pv = embed_vertical(nerve(fixture_category("poset2"), 3), 1);
    auto repp = completeness_check(*pv);
    REQUIRE(repp.verdict.has_value());
    CHECK(*repp.verdict);
    auto iv = embed_vertical(nerve(fixture_category("I1"), 3), 1);
    auto repi = completeness_check(*iv);
    REQUIRE(repi.verdict.has_value());
    CHECK_FALSE(*repi.verdict);
}

TEST_CASE("homotopy_category round trips") {
    for (const auto& name : {"poset0", "poset1", "poset2", "I1", "span", "B2"}) {
        auto c = fixture_category(name);
        auto ho1 = homotopy_category(*embed_vertical(nerve(c, 2), 1));
        CHECK(validate_category(*ho1).ok());
        CHECK(categories_isomorphic(ho1, c));

        auto ho2 = homotopy_category(*classifying_diagram(c, 2, 2));
        CHECK(validate_category(*ho2).ok());
        CHECK(categories_isomorphic(ho2, c));
    }
    CHECK(categories_isomorphic(homotopy_category(*bi_F(0, 2, 1)), poset_category(0)));
}

TEST_CASE("Segal groupoids and homotopical constancy") {
    auto e1 = e_one(3, 1);
    CHECK(is_segal_groupoid(*e1));
    CHECK_FALSE(homotopically_constant(*e1));

    auto f0 = bi_F(0, 3, 1);
    CHECK(is_segal_groupoid(*f0));
    CHECK(homotopically_constant(*f0));

    auto p1 = embed_vertical(nerve(fixture_category("poset1"), 3), 1);
    CHECK_FALSE(is_segal_groupoid(*p1));
    CHECK_FALSE(homotopically_constant(*p1));

    // the classifying diagram of a groupoid is both
    auto ci = classifying_diagram(iso_category(1), 3, 2);
    CHECK(is_segal_groupoid(*ci));
    CHECK(homotopically_constant(*ci));
}

TEST_CASE("classification diagram with identity weak morphisms") {
    // rows are vertically discrete and row n matches nerve level n
    auto p2 = fixture_category("poset2");
    std::vector<bool> ids(p2->morphisms.size(), false);
    for (Idx x = 0; x < p2->objects.size(); ++x) ids[p2->ident[x]] = true;
    auto cd = classification_diagram(RelativeCategory{p2, ids}, 3, 2);
    CHECK(validate_bisimpset(*cd).ok());
    auto nv = nerve(p2, 3);
    for (int n = 0; n <= 3; ++n) {
        CHECK(column_regime(cd->column(n)) == VerticalRegime::Discrete);
        for (int l = 0; l <= 2; ++l) CHECK(cd->size(n, l) == nv->levels[n].size());
    }

    // terminal relative category gives the terminal object
    auto p0 = poset_category(0);
    std::vector<bool> w0(p0->morphisms.size(), true);
    auto cd0 = classification_diagram(RelativeCategory{p0, w0}, 2, 2);
    for (int n = 0; n <= 2; ++n)
        for (int l = 0; l <= 2; ++l) CHECK(cd0->size(n, l) == 1);
}

TEST_CASE("operator commutation is validated on constructed objects") {
    for (const auto& name : {"classify_poset1", "classify_I1", "E1", "F2", "biG2"}) {
        auto t = fixture_bisimpset(name, 2, 2);
        CHECK(validate_bisimpset(*t).ok());
    }
}

TEST_CASE("hoequiv per-pair data and degenerate membership") {
    auto e1 = e_one(3, 1);
    auto hd = hoequiv_space(*e1);
    // every degenerate edge is a member
    for (Idx x = 0; x < e1->size(0, 0); ++x) {
        const std::string& name = e1->levels[1][0][e1->hdegen[0][0][0][x]];
        CHECK(hd.hoequiv.index[0].count(name));
    }
    // in E(1) every mapping space is a singleton made of equivalences
    for (Idx x = 0; x < 2; ++x)
        for (Idx y = 0; y < 2; ++y)
            CHECK(hd.per_pair.at({x, y}).levels[0].size() == 1);

    // in a vertical poset nerve only the identity pairs carry equivalences
    auto p1 = embed_vertical(nerve(fixture_category("poset1"), 3), 1);
    auto hp = hoequiv_space(*p1);
    CHECK(hp.per_pair.at({0, 0}).levels[0].size() == 1);
    CHECK(hp.per_pair.at({0, 1}).levels[0].empty());
    CHECK(hp.per_pair.at({1, 0}).levels[0].empty());
}

TEST_CASE("hoeqchoice on a classifying diagram") {
    // chains (h, f, g) with both outer composites degenerate: in a groupoid
    // h and g are forced to be the inverse of f, one chain per morphism
    auto cd = classifying_diagram(iso_category(1), 3, 2);
    auto choice = hoeqchoice_space(*cd);
    CHECK(validate_simpset(choice).ok());
    CHECK(choice.levels[0].size() == 4);
}

TEST_CASE("hoequiv of a classifying diagram counts the invertible morphisms") {
    for (const auto& name : {"poset1", "poset2", "I1", "span", "parallel", "B2"}) {
        auto c = fixture_category(name);
        std::size_t isos = 0;
        for (Idx m = 0; m < c->morphisms.size(); ++m)
            if (c->is_invertible(m)) ++isos;
        auto cd = classifying_diagram(c, 3, 2);
        CHECK(hoequiv_space(*cd).member_of[0].size() == isos);
    }
}

TEST_CASE("non-groupoid weak subcategories yield the explicit undecidable outcome") {
    // weak = identities plus one non-invertible arrow, closed under composition
    auto b2 = fixture_category("B2");
    std::vector<bool> weak(b2->morphisms.size(), false);
    for (Idx x = 0; x < b2->objects.size(); ++x) weak[b2->ident[x]] = true;
    weak[b2->morphism_of("(e<a)")] = true;
    RelativeCategory rc{b2, weak};
    REQUIRE(validate_relative_category(rc).ok());

    auto cd = classification_diagram(rc, 2, 2);
    CHECK(validate_bisimpset(*cd).ok());
    CHECK(segal_space_check(*cd).pass());

    auto rep = completeness_check(*cd);
    CHECK(rep.strategy == VerticalRegime::Undecidable);
    CHECK_FALSE(rep.verdict.has_value());
    CHECK_THROWS_AS(homotopically_constant(*cd), PreconditionError);
}

TEST_CASE("classifying diagram of a group: nontrivial automorphism groups") {
    auto z2 = cyclic2_category();
    auto cd = classifying_diagram(z2, 3, 2);
    CHECK(validate_bisimpset(*cd).ok());
    CHECK(segal_space_check(*cd).pass());

    // the object column is the nerve of the group: one component, Aut = Z/2
    CHECK(column_regime(cd->column(0)) == VerticalRegime::GroupoidNerve);
    auto g = extract_groupoid(cd->column(0));
    REQUIRE(g.has_value());
    CHECK((*g)->hom(0, 0).size() == 2);

    auto rep = completeness_check(*cd);
    CHECK(rep.strategy == VerticalRegime::GroupoidNerve);
    REQUIRE(rep.verdict.has_value());
    CHECK(*rep.verdict);

    // the homotopy category recovers the group
    auto ho = homotopy_category(*cd);
    CHECK(categories_isomorphic(ho, z2));
    // each composable pair has exactly one witness per vertical class
    CHECK(is_segal_groupoid(*cd));
    CHECK(homotopically_constant(*cd));
}

TEST_CASE("witness count is one per composable pair in a group's classifying diagram") {
    auto cd = classifying_diagram(cyclic2_category(), 2, 1);
    std::size_t pairs = 0;
    for (Idx f = 0; f < cd->size(1, 0); ++f)
        for (Idx g = 0; g < cd->size(1, 0); ++g) {
            if (cd->hface[1][0][0][f] != cd->hface[1][0][1][g]) continue;
            ++pairs;
            CHECK(composition_witnesses(*cd, f, g).witnesses.size() == 1);
        }
    CHECK(pairs == 4);
}

TEST_CASE("the bisimplicial validator rejects broken commutation") {
    TruncBiSimpSet x = *e_one(2, 1);
    REQUIRE(x.size(1, 1) >= 2);
    std::swap(x.vdegen[1][0][0][0], x.vdegen[1][0][0][1]);
    CHECK_FALSE(validate_bisimpset(x).ok());
}
