#include <doctest.h>

#include <random>
#include <set>

#include "sscat/fibrations.hpp"
#include "sscat/fixtures.hpp"

using namespace sscat;

namespace {

// Random SetFunctors on chain posets: choices along the covering relations
// compose freely, so every sample is functorial by construction.
SetFunctor random_chain_set_functor(std::mt19937& rng) {
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<int> size(1, 3);
    int n = len(rng);
    CatPtr base = poset_category(n);
    SetFunctor f{base, {}, {}};
    f.ob_elems.resize(base->objects.size());
    for (int i = 0; i <= n; ++i) {
        int k = size(rng);
        for (int e = 0; e < k; ++e)
            f.ob_elems[i].push_back("e" + std::to_string(i) + "_" + std::to_string(e));
    }
    std::vector<std::vector<Idx>> step(n);
    for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<Idx> pick(0, f.ob_elems[i + 1].size() - 1);
        step[i].resize(f.ob_elems[i].size());
        for (auto& v : step[i]) v = pick(rng);
    }
    f.mor_fn.resize(base->morphisms.size());
    for (Idx m = 0; m < base->morphisms.size(); ++m) {
        int i = static_cast<int>(base->src[m]);
        int j = static_cast<int>(base->tgt[m]);
        f.mor_fn[m].resize(f.ob_elems[i].size());
        for (Idx e = 0; e < f.ob_elems[i].size(); ++e) {
            Idx cur = e;
            for (int k = i; k < j; ++k) cur = step[k][cur];
            f.mor_fn[m][e] = cur;
        }
    }
    return f;
}

}  // namespace

TEST_CASE("grothendieck projections are cofibered in sets") {
    std::mt19937 rng(2026);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_chain_set_functor(rng);
        REQUIRE(validate_set_functor(f).ok());
        auto g = grothendieck(f);
        CHECK(validate_category(*g.total).ok());
        CHECK(validate_functor(g.projection).ok());
        CHECK(is_cofibered_in_sets(g.projection).verdict);
    }
}

TEST_CASE("grothendieck on the worked example") {
    // poset [1], F(0) = {a}, F(1) = {b, c}, F(01)(a) = b
    CatPtr base = poset_category(1);
    SetFunctor f{base, {{"a"}, {"b", "c"}}, {}};
    f.mor_fn.resize(base->morphisms.size());
    f.mor_fn[base->ident[0]] = {0};
    f.mor_fn[base->ident[1]] = {0, 1};
    f.mor_fn[base->morphism_of("(0,1)")] = {0};
    REQUIRE(validate_set_functor(f).ok());
    auto g = grothendieck(f);
    CHECK(g.total->objects.size() == 3);
    CHECK(g.total->morphisms.size() == 4);
}

TEST_CASE("grothendieck of a representable is the under category") {
    for (const auto& name : {"poset1", "poset2", "I1", "span", "B2"}) {
        auto c = fixture_category(name);
        for (Idx x = 0; x < c->objects.size(); ++x) {
            auto g = grothendieck(yoneda_functor(c, x));
            auto u = under_category(c, x);
            CHECK(categories_isomorphic(g.total, u.cat));
        }
    }
    // constant singleton functor: the projection is an isomorphism
    auto c = fixture_category("span");
    SetFunctor pt{c, {}, {}};
    pt.ob_elems.assign(c->objects.size(), {"*"});
    pt.mor_fn.assign(c->morphisms.size(), {0});
    auto g = grothendieck(pt);
    CHECK(categories_isomorphic(g.total, c));
}

TEST_CASE("under_category shapes") {
    auto u0 = under_category(poset_category(0), 0);
    CHECK(categories_isomorphic(u0.cat, poset_category(0)));
    // 0 is initial in [2], so the under category is all of [2]
    auto u = under_category(poset_category(2), 0);
    CHECK(categories_isomorphic(u.cat, poset_category(2)));
    CHECK(validate_functor(u.projection).ok());
    // two arrows out of x in I(1)
    CHECK(under_category(iso_category(1), 0).cat->objects.size() == 2);
    // the projection is always cofibered in sets
    for (const auto& name : {"poset2", "I1", "span", "B2"}) {
        auto cat = fixture_category(name);
        for (Idx x = 0; x < cat->objects.size(); ++x)
            CHECK(is_cofibered_in_sets(under_category(cat, x).projection).verdict);
    }
}

TEST_CASE("identity functor is cofibered; projections with fat fibers are not") {
    for (const auto& name : {"poset2", "I1", "span"}) {
        auto c = fixture_category(name);
        CHECK(is_cofibered_in_sets(identity_functor(c)).verdict);
    }
    // C x D -> C with D carrying a nonidentity arrow: identity lifts multiply
    auto c = fixture_category("poset1");
    auto d = fixture_category("poset1");
    auto prod = product_category(c, d);
    Functor proj{prod, c, {}, {}};
    proj.ob_map.resize(prod->objects.size());
    proj.mor_map.resize(prod->morphisms.size());
    for (Idx x = 0; x < prod->objects.size(); ++x)
        proj.ob_map[x] = x / d->objects.size();
    for (Idx m = 0; m < prod->morphisms.size(); ++m)
        proj.mor_map[m] = m / d->morphisms.size();
    REQUIRE(validate_functor(proj).ok());
    auto rep = is_cofibered_in_sets(proj);
    CHECK_FALSE(rep.verdict);
    REQUIRE_FALSE(rep.failures.empty());
    for (const auto& fail : rep.failures) CHECK(fail.lift_count != 1);
}

TEST_CASE("cofibered yoneda") {
    auto c = fixture_category("poset2");
    // D = C_{c/} itself
    for (Idx x = 0; x < c->objects.size(); ++x) {
        auto u = under_category(c, x);
        auto w = cofibered_yoneda_check(u.projection, x);
        CHECK(w.bijective);
    }
    // D = C via the identity: both sides singletons
    auto w = cofibered_yoneda_check(identity_functor(c), 0);
    CHECK(w.bijective);
    CHECK(w.forward.size() == 1);
    // D = grothendieck(F): both sides have |F(c)| elements
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_chain_set_functor(rng);
        auto g = grothendieck(f);
        for (Idx x = 0; x < f.dom->objects.size(); ++x) {
            auto wx = cofibered_yoneda_check(g.projection, x);
            CHECK(wx.bijective);
            CHECK(wx.forward.size() == f.ob_elems[x].size());
        }
    }
}

TEST_CASE("left fibrations") {
    // nerve of a discrete category over the point
    auto disc = core(poset_category(1));
    auto p = nerve_map(Functor{disc, poset_category(0),
                               std::vector<Idx>(disc->objects.size(), 0),
                               std::vector<Idx>(disc->morphisms.size(), 0)},
                       2);
    CHECK(is_left_fibration(p));

    // nerves of under-category projections are left fibrations
    for (const auto& name : {"poset2", "I1", "span"}) {
        auto c = fixture_category(name);
        for (Idx x = 0; x < c->objects.size(); ++x) {
            auto u = under_category(c, x);
            CHECK(is_left_fibration(nerve_map(u.projection, 2)));
        }
    }

    // target-projection from the arrow category of [1] is not one
    auto p1 = poset_category(1);
    auto arrows = functor_category(p1, p1);
    Functor target{arrows.cat, p1, {}, {}};
    target.ob_map.resize(arrows.cat->objects.size());
    target.mor_map.resize(arrows.cat->morphisms.size());
    for (Idx x = 0; x < arrows.cat->objects.size(); ++x)
        target.ob_map[x] = arrows.functor_of_object[x].ob_map[1];
    for (Idx m = 0; m < arrows.cat->morphisms.size(); ++m)
        target.mor_map[m] = arrows.trans_of_morphism[m].components[1];
    REQUIRE(validate_functor(target).ok());
    CHECK_FALSE(is_left_fibration(nerve_map(target, 2)));
    // and it is not cofibered either (the discrete bridge)
    CHECK_FALSE(is_cofibered_in_sets(target).verdict);
}

TEST_CASE("right fibration is the target-leg dual") {
    // the over-category of a middle object: a right fibration that is not a
    // left fibration (no lift of (1,2) with source id_1)
    auto c = fixture_category("poset2");
    auto cop = opposite(c);
    auto u = under_category(cop, 1);  // over-category of 1 in [2]
    Functor proj_op{opposite(u.cat), c, u.projection.ob_map, u.projection.mor_map};
    REQUIRE(validate_functor(proj_op).ok());
    CHECK(is_right_fibration(nerve_map(proj_op, 2)));
    CHECK_FALSE(is_left_fibration(nerve_map(proj_op, 2)));
}

TEST_CASE("fiber decomposition over F(1)") {
    // identity on nerve([1]): transport is the unique point-to-point map
    auto p1 = poset_category(1);
    auto dec = fiber_decomposition_over_F1(identity_map(nerve(p1, 2)));
    CHECK(dec.fiber0 == std::vector<std::string>{"0"});
    CHECK(dec.fiber1 == std::vector<std::string>{"1"});
    REQUIRE(dec.transport.size() == 1);
    CHECK(dec.transport[0] == std::pair<std::string, std::string>{"0", "1"});

    // nerve of the under-category projection of ([1], 0)
    auto u = under_category(p1, 0);
    auto dec2 = fiber_decomposition_over_F1(nerve_map(u.projection, 2));
    REQUIRE(dec2.transport.size() == 1);
    CHECK(dec2.transport[0].first == "id_0");
    CHECK(dec2.transport[0].second == "(0,1)");
}

TEST_CASE("under_css matches the nerve of the classical under category") {
    for (const auto& name : {"poset2", "I1", "span"}) {
        auto c = fixture_category(name);
        auto w = embed_vertical(nerve(c, 3), 1);
        for (Idx x = 0; x < c->objects.size(); ++x) {
            auto uc = under_css(w, x);
            auto expect = embed_vertical(nerve(under_category(c, x).cat, 3), 1);
            CHECK(validate_bisimpset(*uc).ok());
            for (int n = 0; n <= 3; ++n)
                for (int l = 0; l <= 1; ++l) CHECK(uc->size(n, l) == expect->size(n, l));
            // level-0 set = morphisms out of x
            std::size_t out_of_x = 0;
            for (Idx y = 0; y < c->objects.size(); ++y) out_of_x += c->hom(x, y).size();
            CHECK(uc->size(0, 0) == out_of_x);
        }
    }
    auto f0 = bi_F(0, 3, 1);
    CHECK(under_css(f0, 0)->size(0, 0) == 1);
}

TEST_CASE("coCartesian morphisms") {
    for (const auto& name : {"poset2", "span", "I1"}) {
        auto c = fixture_category(name);
        auto idf = identity_functor(c);
        for (Idx x = 0; x < c->objects.size(); ++x)
            CHECK(is_cocartesian_morphism(idf, c->ident[x]));
    }
    // chosen lifts in a grothendieck construction are coCartesian
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_chain_set_functor(rng);
        auto g = grothendieck(f);
        for (Idx m = 0; m < g.total->morphisms.size(); ++m)
            CHECK(is_cocartesian_morphism(g.projection, m));
    }
}

TEST_CASE("coCartesian fibrations") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_chain_set_functor(rng);
        auto g = grothendieck(f);
        CHECK(is_cocartesian_fibration(g.projection).ok());
    }
    // any functor to the point is both coCartesian and Cartesian
    for (const auto& name : {"poset2", "I1", "span"}) {
        auto c = fixture_category(name);
        Functor to_pt{c, poset_category(0), std::vector<Idx>(c->objects.size(), 0),
                      std::vector<Idx>(c->morphisms.size(), 0)};
        CHECK(is_cocartesian_fibration(to_pt).ok());
        CHECK(is_cartesian_fibration(to_pt).ok());
    }
}

TEST_CASE("discrete-fiber bridge between cofibered and coCartesian") {
    // for functors whose fibers are discrete, the two notions agree
    auto fiber_discrete = [](const Functor& p) {
        const FinCategory& E = *p.dom;
        const FinCategory& B = *p.cod;
        for (Idx m = 0; m < E.morphisms.size(); ++m) {
            if (E.is_identity(m)) continue;
            if (p.mor_map[m] == B.ident[p.ob_map[E.src[m]]] &&
                p.mor_map[m] == B.ident[p.ob_map[E.tgt[m]]])
                return false;  // a nonidentity morphism over an identity
        }
        return true;
    };
    auto p2 = fixture_category("poset2");
    auto i1 = fixture_category("I1");
    auto sp = fixture_category("span");
    std::size_t checked = 0;
    for (const auto& base : {p2, i1, sp})
        for (const auto& total : {p2, i1, sp})
            for (const auto& p : enumerate_functors(total, base)) {
                if (!fiber_discrete(p)) continue;
                ++checked;
                CHECK(is_cofibered_in_sets(p).verdict == is_cocartesian_fibration(p).ok());
            }
    CHECK(checked >= 10);
}

TEST_CASE("a non-initial lift in a fat fiber is not coCartesian") {
    // over the point, a morphism is coCartesian exactly when precomposition
    // is bijective; the arrow of [1] fails at z = 0
    auto c = fixture_category("poset1");
    Functor to_pt{c, poset_category(0), std::vector<Idx>(c->objects.size(), 0),
                  std::vector<Idx>(c->morphisms.size(), 0)};
    CHECK_FALSE(is_cocartesian_morphism(to_pt, c->morphism_of("(0,1)")));
    CHECK(is_cocartesian_morphism(to_pt, c->ident[0]));
}
