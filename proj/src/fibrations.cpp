#include "sscat/fibrations.hpp"

#include <algorithm>

namespace sscat {

FiberedReport is_cofibered_in_sets(const Functor& p) {
    const FinCategory& D = *p.dom;
    const FinCategory& C = *p.cod;
    FiberedReport rep;
    for (Idx f = 0; f < C.morphisms.size(); ++f) {
        for (Idx xp = 0; xp < D.objects.size(); ++xp) {
            if (p.ob_map[xp] != C.src[f]) continue;
            std::size_t count = 0;
            for (Idx fp = 0; fp < D.morphisms.size(); ++fp)
                if (D.src[fp] == xp && p.mor_map[fp] == f) ++count;
            if (count != 1) {
                rep.verdict = false;
                rep.failures.push_back({C.morphisms[f], D.objects[xp], count});
            }
        }
    }
    return rep;
}

GrothendieckResult grothendieck(const SetFunctor& f) {
    auto rep = validate_set_functor(f);
    if (!rep.ok())
        throw PreconditionError("grothendieck: invalid set functor (" +
                                rep.issues.front().axiom + ")");
    const FinCategory& C = *f.dom;
    GrothendieckResult out;
    FinCategory total;

    for (Idx c = 0; c < C.objects.size(); ++c)
        for (Idx e = 0; e < f.ob_elems[c].size(); ++e) {
            out.object_of[{c, e}] = total.objects.size();
            total.objects.push_back("(" + C.objects[c] + "," + f.ob_elems[c][e] + ")");
        }

    // morphism (m, a): (src m, a) -> (tgt m, F(m)(a))
    std::map<std::pair<Idx, Idx>, Idx> morphism_of;
    for (Idx m = 0; m < C.morphisms.size(); ++m)
        for (Idx a = 0; a < f.ob_elems[C.src[m]].size(); ++a) {
            morphism_of[{m, a}] = total.morphisms.size();
            total.morphisms.push_back("(" + C.morphisms[m] + "," +
                                      f.ob_elems[C.src[m]][a] + ")");
            total.src.push_back(out.object_of.at({C.src[m], a}));
            total.tgt.push_back(out.object_of.at({C.tgt[m], f.mor_fn[m][a]}));
        }
    total.ident.resize(total.objects.size());
    for (Idx c = 0; c < C.objects.size(); ++c)
        for (Idx e = 0; e < f.ob_elems[c].size(); ++e)
            total.ident[out.object_of.at({c, e})] = morphism_of.at({C.ident[c], e});
    for (Idx g = 0; g < C.morphisms.size(); ++g)
        for (Idx m = 0; m < C.morphisms.size(); ++m) {
            if (!C.composable(g, m)) continue;
            Idx gm = C.compose(g, m);
            for (Idx a = 0; a < f.ob_elems[C.src[m]].size(); ++a)
                total.comp_table[total.comp_key(morphism_of.at({g, f.mor_fn[m][a]}),
                                                morphism_of.at({m, a}))] =
                    morphism_of.at({gm, a});
        }
    total.rebuild_index();
    out.total = std::make_shared<const FinCategory>(std::move(total));

    Functor proj{out.total, f.dom, {}, {}};
    proj.ob_map.resize(out.total->objects.size());
    proj.mor_map.resize(out.total->morphisms.size());
    for (const auto& [key, idx] : out.object_of) proj.ob_map[idx] = key.first;
    for (const auto& [key, idx] : morphism_of) proj.mor_map[idx] = key.first;
    out.projection = std::move(proj);
    return out;
}

UnderCategoryResult under_category(const CatPtr& c, Idx x) {
    const FinCategory& C = *c;
    if (x >= C.objects.size()) throw PreconditionError("under_category: unknown object");
    UnderCategoryResult out;
    FinCategory u;

    std::vector<Idx> object_of(C.morphisms.size(), npos);  // by C-morphism out of x
    for (Idx f = 0; f < C.morphisms.size(); ++f) {
        if (C.src[f] != x) continue;
        object_of[f] = u.objects.size();
        u.objects.push_back(C.morphisms[f]);
    }
    // morphism (f, h): f -> h after f, for h with src(h) = tgt(f)
    std::map<std::pair<Idx, Idx>, Idx> morphism_of;
    for (Idx f = 0; f < C.morphisms.size(); ++f) {
        if (C.src[f] != x) continue;
        for (Idx h = 0; h < C.morphisms.size(); ++h) {
            if (C.src[h] != C.tgt[f]) continue;
            morphism_of[{f, h}] = u.morphisms.size();
            u.morphisms.push_back("(" + C.morphisms[f] + ";" + C.morphisms[h] + ")");
            u.src.push_back(object_of[f]);
            u.tgt.push_back(object_of[C.compose(h, f)]);
        }
    }
    u.ident.resize(u.objects.size());
    for (Idx f = 0; f < C.morphisms.size(); ++f)
        if (object_of[f] != npos)
            u.ident[object_of[f]] = morphism_of.at({f, C.ident[C.tgt[f]]});
    for (const auto& [fk, idx] : morphism_of) {
        auto [f1, h1] = fk;
        Idx mid = C.compose(h1, f1);
        for (Idx k = 0; k < C.morphisms.size(); ++k) {
            if (C.src[k] != C.tgt[mid]) continue;
            u.comp_table[u.comp_key(morphism_of.at({mid, k}), idx)] =
                morphism_of.at({f1, C.compose(k, h1)});
        }
    }
    u.rebuild_index();
    out.cat = std::make_shared<const FinCategory>(std::move(u));

    Functor proj{out.cat, c, {}, {}};
    proj.ob_map.resize(out.cat->objects.size());
    proj.mor_map.resize(out.cat->morphisms.size());
    for (Idx f = 0; f < C.morphisms.size(); ++f)
        if (object_of[f] != npos) proj.ob_map[object_of[f]] = C.tgt[f];
    for (const auto& [fk, idx] : morphism_of) proj.mor_map[idx] = fk.second;
    out.projection = std::move(proj);
    return out;
}

BijectionWitness cofibered_yoneda_check(const Functor& p, Idx c, std::uint64_t max_enum) {
    auto fib = is_cofibered_in_sets(p);
    if (!fib.verdict)
        throw PreconditionError("cofibered_yoneda_check: projection is not cofibered in sets");
    const FinCategory& C = *p.cod;
    const FinCategory& D = *p.dom;

    UnderCategoryResult under = under_category(p.cod, c);
    const Functor& pi = under.projection;

    FunctorConstraints over_c;
    over_c.object_ok = [&](Idx u, Idx d) { return p.ob_map[d] == pi.ob_map[u]; };
    over_c.morphism_ok = [&](Idx um, Idx dm) { return p.mor_map[dm] == pi.mor_map[um]; };
    auto functors_over = enumerate_functors_where(under.cat, p.dom, over_c, max_enum);

    // Fun_C([0], D) at c: the fiber objects of D over c.
    std::vector<Idx> fiber;
    for (Idx d = 0; d < D.objects.size(); ++d)
        if (p.ob_map[d] == c) fiber.push_back(d);

    Idx id_object = under.cat->object_of(C.morphisms[C.ident[c]]);

    BijectionWitness w;
    std::vector<Idx> hit(fiber.size(), npos);
    bool injective = true;
    for (Idx i = 0; i < functors_over.size(); ++i) {
        Idx value = functors_over[i].ob_map[id_object];
        auto slot = static_cast<std::size_t>(
            std::find(fiber.begin(), fiber.end(), value) - fiber.begin());
        if (slot == fiber.size())
            throw std::logic_error("cofibered_yoneda_check: evaluation escapes the fiber");
        if (hit[slot] != npos) injective = false;
        hit[slot] = i;
        w.forward.emplace_back("G" + std::to_string(i), D.objects[value]);
    }
    bool surjective = std::all_of(hit.begin(), hit.end(), [](Idx v) { return v != npos; });
    w.bijective = injective && surjective;
    w.detail = "|Fun_C(C_{c/},D)| = " + std::to_string(functors_over.size()) +
               ", |fiber| = " + std::to_string(fiber.size());
    return w;
}

namespace {

bool comparison_bijective(const SimpMap& p, bool source_leg) {
    const TruncSimpSet& L = *p.dom;
    const TruncSimpSet& W = *p.cod;
    if (L.truncation < 1) throw PreconditionError("left fibration check needs truncation >= 1");
    const int leg = source_leg ? 1 : 0;  // d_1 = source, d_0 = target
    // pairs (v in L_0, w in W_1) with p_0(v) = leg(w)
    std::map<std::pair<Idx, Idx>, std::size_t> count;
    for (Idx v = 0; v < L.levels[0].size(); ++v)
        for (Idx w = 0; w < W.levels[1].size(); ++w)
            if (p.level_map[0][v] == W.face[1][leg][w]) count[{v, w}] = 0;
    for (Idx e = 0; e < L.levels[1].size(); ++e) {
        auto key = std::make_pair(L.face[1][leg][e], p.level_map[1][e]);
        auto it = count.find(key);
        if (it == count.end())
            throw std::logic_error("fibration comparison map escapes the fiber product");
        ++it->second;
    }
    return std::all_of(count.begin(), count.end(),
                       [](const auto& kv) { return kv.second == 1; });
}

}  // namespace

bool is_left_fibration(const SimpMap& p) { return comparison_bijective(p, true); }
bool is_right_fibration(const SimpMap& p) { return comparison_bijective(p, false); }

FiberDecomposition fiber_decomposition_over_F1(const SimpMap& p) {
    const TruncSimpSet& L = *p.dom;
    const TruncSimpSet& W = *p.cod;
    if (W.levels[0].size() != 2 || W.levels[1].size() != 3)
        throw PreconditionError("fiber_decomposition_over_F1: codomain is not nerve([1])");
    if (!is_left_fibration(p))
        throw PreconditionError("fiber_decomposition_over_F1: p is not a left fibration");

    // identify the nondegenerate edge of the base and its endpoints
    Idx e01 = npos;
    for (Idx w = 0; w < W.levels[1].size(); ++w)
        if (W.face[1][1][w] != W.face[1][0][w]) e01 = w;
    if (e01 == npos)
        throw PreconditionError("fiber_decomposition_over_F1: base has no nondegenerate edge");
    Idx b0 = W.face[1][1][e01];
    Idx b1 = W.face[1][0][e01];

    FiberDecomposition out;
    std::vector<Idx> fiber0;
    for (Idx v = 0; v < L.levels[0].size(); ++v) {
        if (p.level_map[0][v] == b0) {
            fiber0.push_back(v);
            out.fiber0.push_back(L.levels[0][v]);
        }
        if (p.level_map[0][v] == b1) out.fiber1.push_back(L.levels[0][v]);
    }
    std::vector<Idx> fiber01;
    for (Idx e = 0; e < L.levels[1].size(); ++e)
        if (p.level_map[1][e] == e01) {
            fiber01.push_back(e);
            out.fiber01.push_back(L.levels[1][e]);
        }
    // transport: v -> target of the unique element of L_/01 with source v
    for (Idx v : fiber0) {
        Idx arrow = npos;
        for (Idx e : fiber01)
            if (L.face[1][1][e] == v) arrow = e;
        out.transport.emplace_back(L.levels[0][v], L.levels[0][L.face[1][0][arrow]]);
    }
    return out;
}

BiSetPtr under_css(const BiSetPtr& w, Idx x) {
    for (int n = 0; n <= w->htrunc; ++n)
        if (column_regime(w->column(n)) != VerticalRegime::Discrete)
            throw PreconditionError("under_css: input is outside the discrete regime");
    if (w->htrunc < 3)
        throw PreconditionError("under_css: horizontal truncation must be >= 3");
    TruncSimpSet base = w->row(0);
    CatPtr c = category_from_segal(base);
    UnderCategoryResult under = under_category(c, x);
    return embed_vertical(nerve(under.cat, w->htrunc), w->vtrunc);
}

bool is_cocartesian_morphism(const Functor& p, Idx f) {
    const FinCategory& V = *p.dom;
    const FinCategory& W = *p.cod;
    Idx x = V.src[f], y = V.tgt[f];
    for (Idx z = 0; z < V.objects.size(); ++z) {
        for (Idx g = 0; g < V.morphisms.size(); ++g) {
            if (V.src[g] != x || V.tgt[g] != z) continue;
            for (Idx hbar = 0; hbar < W.morphisms.size(); ++hbar) {
                if (W.src[hbar] != p.ob_map[y] || W.tgt[hbar] != p.ob_map[z]) continue;
                if (W.compose(hbar, p.mor_map[f]) != p.mor_map[g]) continue;
                std::size_t count = 0;
                for (Idx h = 0; h < V.morphisms.size(); ++h) {
                    if (V.src[h] != y || V.tgt[h] != z) continue;
                    if (V.compose(h, f) == g && p.mor_map[h] == hbar) ++count;
                }
                if (count != 1) return false;
            }
        }
    }
    return true;
}

namespace {

Functor opposite_functor(const Functor& p) {
    return Functor{opposite(p.dom), opposite(p.cod), p.ob_map, p.mor_map};
}

}  // namespace

bool is_cartesian_morphism(const Functor& p, Idx f) {
    return is_cocartesian_morphism(opposite_functor(p), f);
}

namespace {

CoCartResult cocart_fibration_impl(const Functor& p, bool cocartesian) {
    const Functor q = cocartesian ? p : opposite_functor(p);
    const FinCategory& E = *q.dom;
    const FinCategory& B = *q.cod;
    CoCartResult res;
    CoCartStructure structure;

    for (Idx f = 0; f < B.morphisms.size(); ++f) {
        for (Idx xp = 0; xp < E.objects.size(); ++xp) {
            if (q.ob_map[xp] != B.src[f]) continue;
            std::vector<Idx> good;
            for (Idx fp = 0; fp < E.morphisms.size(); ++fp) {
                if (E.src[fp] != xp || q.mor_map[fp] != f) continue;
                if (is_cocartesian_morphism(q, fp)) good.push_back(fp);
            }
            if (good.empty()) {
                res.failure = CoCartFailure{B.morphisms[f], E.objects[xp],
                                            cocartesian ? "no coCartesian lift"
                                                        : "no Cartesian lift"};
                return res;
            }
            // (-1)-truncation at desk scale: any two lifts are linked by a
            // unique compatible isomorphism over the identity.
            for (Idx a : good)
                for (Idx b : good) {
                    std::vector<Idx> connecting;
                    for (Idx u = 0; u < E.morphisms.size(); ++u) {
                        if (E.src[u] != E.tgt[a] || E.tgt[u] != E.tgt[b]) continue;
                        if (q.mor_map[u] != B.ident[B.tgt[f]]) continue;
                        if (E.compose(u, a) != b) continue;
                        connecting.push_back(u);
                    }
                    if (connecting.size() != 1 || !E.is_invertible(connecting.front())) {
                        res.failure = CoCartFailure{
                            B.morphisms[f], E.objects[xp],
                            "lifts are not uniquely isomorphic over the target"};
                        return res;
                    }
                }
            structure.lifts[{f, xp}] = std::move(good);
        }
    }
    res.structure = std::move(structure);
    return res;
}

}  // namespace

CoCartResult is_cocartesian_fibration(const Functor& p) {
    return cocart_fibration_impl(p, true);
}

CoCartResult is_cartesian_fibration(const Functor& p) {
    return cocart_fibration_impl(p, false);
}

}  // namespace sscat
