#include "sscat/colim_adj.hpp"

#include <algorithm>
#include <set>

namespace sscat {

namespace {

std::vector<Idx> extremal_objects(const FinCategory& c, bool initial) {
    std::vector<Idx> out;
    for (Idx i = 0; i < c.objects.size(); ++i) {
        bool good = true;
        for (Idx y = 0; y < c.objects.size() && good; ++y) {
            std::size_t n = initial ? c.hom(i, y).size() : c.hom(y, i).size();
            if (n != 1) good = false;
        }
        if (good) out.push_back(i);
    }
    // Members are pairwise uniquely isomorphic.
    for (Idx a : out)
        for (Idx b : out) {
            auto ab = c.hom(a, b);
            auto ba = c.hom(b, a);
            if (ab.size() != 1 || ba.size() != 1 ||
                c.compose(ba.front(), ab.front()) != c.ident[a])
                throw std::logic_error(
                    "extremal objects are not pairwise uniquely isomorphic");
        }
    return out;
}

}  // namespace

std::vector<Idx> initial_objects(const CatPtr& c) { return extremal_objects(*c, true); }
std::vector<Idx> final_objects(const CatPtr& c) { return extremal_objects(*c, false); }

CoconeCategory cocone_category(const Functor& f, std::uint64_t max_enum) {
    Budget budget(max_enum);
    const FinCategory& I = *f.dom;
    const FinCategory& C = *f.cod;
    CoconeCategory out;
    FinCategory cat;

    for (Idx v = 0; v < C.objects.size(); ++v) {
        // Assemble commuting leg families F(i) -> v.
        std::vector<Idx> legs(I.objects.size(), npos);
        auto recurse = [&](auto&& self, Idx i) -> void {
            if (i == I.objects.size()) {
                Cocone cone{f, v, legs};
                std::vector<std::string> leg_names;
                for (Idx leg : legs) leg_names.push_back(C.morphisms[leg]);
                cat.objects.push_back("<" + C.objects[v] + "|" + join(leg_names, ",") + ">");
                out.cocone_of_object.push_back(std::move(cone));
                return;
            }
            for (Idx leg : C.hom(f.ob_map[i], v)) {
                budget.spend();
                legs[i] = leg;
                bool ok = true;
                for (Idx u = 0; u < I.morphisms.size() && ok; ++u) {
                    Idx si = I.src[u], ti = I.tgt[u];
                    if (legs[si] == npos || legs[ti] == npos) continue;
                    if (C.compose(legs[ti], f.mor_map[u]) != legs[si]) ok = false;
                }
                if (ok) self(self, i + 1);
                legs[i] = npos;
            }
        };
        recurse(recurse, 0);
    }

    // Morphisms: vertex maps commuting with all legs.
    std::map<std::pair<Idx, Idx>, Idx> morphism_of;  // (cocone, vertex map)
    for (Idx a = 0; a < out.cocone_of_object.size(); ++a)
        for (Idx b = 0; b < out.cocone_of_object.size(); ++b) {
            const Cocone& ca = out.cocone_of_object[a];
            const Cocone& cb = out.cocone_of_object[b];
            for (Idx h : C.hom(ca.vertex, cb.vertex)) {
                budget.spend();
                bool ok = true;
                for (Idx i = 0; i < I.objects.size() && ok; ++i)
                    if (C.compose(h, ca.legs[i]) != cb.legs[i]) ok = false;
                if (!ok) continue;
                morphism_of[{a, h}] = cat.morphisms.size();
                cat.morphisms.push_back(cat.objects[a] + ";" + C.morphisms[h]);
                cat.src.push_back(a);
                cat.tgt.push_back(b);
            }
        }
    cat.ident.resize(cat.objects.size());
    for (Idx a = 0; a < out.cocone_of_object.size(); ++a)
        cat.ident[a] = morphism_of.at({a, C.ident[out.cocone_of_object[a].vertex]});
    for (const auto& [ka, ma] : morphism_of) {
        Idx a = ka.first;
        Idx h = ka.second;
        Idx b = cat.tgt[ma];
        for (Idx k = 0; k < C.morphisms.size(); ++k) {
            auto it = morphism_of.find({b, k});
            if (it == morphism_of.end()) continue;
            cat.comp_table[cat.comp_key(it->second, ma)] =
                morphism_of.at({a, C.compose(k, h)});
        }
    }
    cat.rebuild_index();
    out.cat = std::make_shared<const FinCategory>(std::move(cat));
    return out;
}

std::optional<Cocone> colimit(const Functor& f, std::uint64_t max_enum) {
    CoconeCategory cones = cocone_category(f, max_enum);
    std::vector<Idx> init = initial_objects(cones.cat);
    if (init.empty()) return std::nullopt;
    Cocone best = cones.cocone_of_object[init.front()];
    if (!colimit_oracle(f, best))
        throw std::logic_error("colimit: candidate failed the universal-property oracle");
    return best;
}

bool colimit_oracle(const Functor& f, const Cocone& cand) {
    const FinCategory& I = *f.dom;
    const FinCategory& C = *f.cod;
    // cand is a cocone at all?
    for (Idx u = 0; u < I.morphisms.size(); ++u)
        if (C.compose(cand.legs[I.tgt[u]], f.mor_map[u]) != cand.legs[I.src[u]]) return false;

    for (Idx y = 0; y < C.objects.size(); ++y) {
        // All leg-compatible families with vertex y.
        std::vector<std::vector<Idx>> families;
        std::vector<Idx> legs(I.objects.size(), npos);
        auto recurse = [&](auto&& self, Idx i) -> void {
            if (i == I.objects.size()) {
                families.push_back(legs);
                return;
            }
            for (Idx leg : C.hom(f.ob_map[i], y)) {
                legs[i] = leg;
                bool ok = true;
                for (Idx u = 0; u < I.morphisms.size() && ok; ++u) {
                    if (legs[I.src[u]] == npos || legs[I.tgt[u]] == npos) continue;
                    if (C.compose(legs[I.tgt[u]], f.mor_map[u]) != legs[I.src[u]]) ok = false;
                }
                if (ok) self(self, i + 1);
                legs[i] = npos;
            }
        };
        recurse(recurse, 0);

        // Canonical map h |-> (h after leg_i)_i must be a bijection.
        std::vector<bool> hit(families.size(), false);
        for (Idx h : C.hom(cand.vertex, y)) {
            std::vector<Idx> fam;
            for (Idx i = 0; i < I.objects.size(); ++i)
                fam.push_back(C.compose(h, cand.legs[i]));
            auto pos = std::find(families.begin(), families.end(), fam);
            if (pos == families.end()) return false;
            auto slot = static_cast<std::size_t>(pos - families.begin());
            if (hit[slot]) return false;
            hit[slot] = true;
        }
        if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return false;
    }
    return true;
}

CollageResult collage(const Functor& f, std::uint64_t max_enum) {
    const FinCategory& C = *f.dom;
    const FinCategory& D = *f.cod;
    Budget budget(max_enum);
    FinCategory total;

    for (const auto& name : C.objects) total.objects.push_back("0:" + name);
    for (const auto& name : D.objects) total.objects.push_back("1:" + name);
    auto left_ob = [&](Idx c) { return c; };
    auto right_ob = [&](Idx d) { return C.objects.size() + d; };

    std::vector<Idx> left_mor(C.morphisms.size());
    std::vector<Idx> right_mor(D.morphisms.size());
    std::map<std::pair<Idx, Idx>, Idx> cross_mor;  // (c, u: Fc -> d)
    for (Idx m = 0; m < C.morphisms.size(); ++m) {
        left_mor[m] = total.morphisms.size();
        total.morphisms.push_back("0:" + C.morphisms[m]);
        total.src.push_back(left_ob(C.src[m]));
        total.tgt.push_back(left_ob(C.tgt[m]));
    }
    for (Idx m = 0; m < D.morphisms.size(); ++m) {
        right_mor[m] = total.morphisms.size();
        total.morphisms.push_back("1:" + D.morphisms[m]);
        total.src.push_back(right_ob(D.src[m]));
        total.tgt.push_back(right_ob(D.tgt[m]));
    }
    for (Idx c = 0; c < C.objects.size(); ++c)
        for (Idx u = 0; u < D.morphisms.size(); ++u) {
            if (D.src[u] != f.ob_map[c]) continue;
            budget.spend();
            cross_mor[{c, u}] = total.morphisms.size();
            total.morphisms.push_back("01:(" + C.objects[c] + "," + D.morphisms[u] + ")");
            total.src.push_back(left_ob(c));
            total.tgt.push_back(right_ob(D.tgt[u]));
        }

    total.ident.resize(total.objects.size());
    for (Idx c = 0; c < C.objects.size(); ++c) total.ident[left_ob(c)] = left_mor[C.ident[c]];
    for (Idx d = 0; d < D.objects.size(); ++d) total.ident[right_ob(d)] = right_mor[D.ident[d]];

    for (Idx g = 0; g < C.morphisms.size(); ++g)
        for (Idx m = 0; m < C.morphisms.size(); ++m)
            if (C.composable(g, m))
                total.comp_table[total.comp_key(left_mor[g], left_mor[m])] =
                    left_mor[C.compose(g, m)];
    for (Idx g = 0; g < D.morphisms.size(); ++g)
        for (Idx m = 0; m < D.morphisms.size(); ++m)
            if (D.composable(g, m))
                total.comp_table[total.comp_key(right_mor[g], right_mor[m])] =
                    right_mor[D.compose(g, m)];
    for (const auto& [key, idx] : cross_mor) {
        auto [c, u] = key;
        // cross(c, u) after 0:m for m: c' -> c
        for (Idx m = 0; m < C.morphisms.size(); ++m)
            if (C.tgt[m] == c)
                total.comp_table[total.comp_key(idx, left_mor[m])] =
                    cross_mor.at({C.src[m], D.compose(u, f.mor_map[m])});
        // 1:g after cross(c, u) for g: tgt(u) -> d'
        for (Idx g = 0; g < D.morphisms.size(); ++g)
            if (D.src[g] == D.tgt[u])
                total.comp_table[total.comp_key(right_mor[g], idx)] =
                    cross_mor.at({c, D.compose(g, u)});
    }
    total.rebuild_index();

    CollageResult out;
    out.total = std::make_shared<const FinCategory>(std::move(total));
    CatPtr interval = poset_category(1);
    Functor proj{out.total, interval, {}, {}};
    proj.ob_map.resize(out.total->objects.size());
    proj.mor_map.resize(out.total->morphisms.size());
    for (Idx c = 0; c < C.objects.size(); ++c) proj.ob_map[left_ob(c)] = 0;
    for (Idx d = 0; d < D.objects.size(); ++d) proj.ob_map[right_ob(d)] = 1;
    Idx arrow01 = interval->morphism_of("(0,1)");
    for (Idx m = 0; m < C.morphisms.size(); ++m) proj.mor_map[left_mor[m]] = interval->ident[0];
    for (Idx m = 0; m < D.morphisms.size(); ++m)
        proj.mor_map[right_mor[m]] = interval->ident[1];
    for (const auto& [key, idx] : cross_mor) proj.mor_map[idx] = arrow01;
    out.to_interval = std::move(proj);
    return out;
}

AdjointSearch left_adjoint_via_comma(const Functor& f, std::uint64_t max_enum) {
    Budget budget(max_enum);
    const FinCategory& C = *f.dom;
    const FinCategory& D = *f.cod;
    AdjointSearch res;

    // Per D-object: the comma category (f down d) and its final object.
    std::vector<Idx> g_ob(D.objects.size(), npos);
    std::vector<Idx> counit(D.objects.size(), npos);  // epsilon_d: F(Gd) -> d
    for (Idx d = 0; d < D.objects.size(); ++d) {
        std::vector<std::pair<Idx, Idx>> comma;  // (c, u: Fc -> d)
        for (Idx c = 0; c < C.objects.size(); ++c)
            for (Idx u : D.hom(f.ob_map[c], d)) {
                budget.spend();
                comma.emplace_back(c, u);
            }
        // Final object: every (c, u) admits exactly one h: c -> c0 with
        // epsilon after F(h) = u. Ties resolved lexicographically (the comma
        // list is in deterministic order already).
        Idx final_at = npos;
        for (Idx cand = 0; cand < comma.size(); ++cand) {
            auto [c0, u0] = comma[cand];
            bool good = true;
            for (const auto& [c, u] : comma) {
                std::size_t count = 0;
                for (Idx h : C.hom(c, c0)) {
                    budget.spend();
                    if (D.compose(u0, f.mor_map[h]) == u) ++count;
                }
                if (count != 1) {
                    good = false;
                    break;
                }
            }
            if (good) {
                final_at = cand;
                break;
            }
        }
        if (final_at == npos) {
            res.failing_object = D.objects[d];
            return res;
        }
        g_ob[d] = comma[final_at].first;
        counit[d] = comma[final_at].second;
    }

    // G on morphisms, by universality of the chosen final objects.
    Functor g{f.cod, f.dom, g_ob, {}};
    g.mor_map.resize(D.morphisms.size(), npos);
    for (Idx m = 0; m < D.morphisms.size(); ++m) {
        Idx d = D.src[m], dp = D.tgt[m];
        Idx want = D.compose(m, counit[d]);  // F(G d) -> d'
        Idx found = npos;
        for (Idx h : C.hom(g_ob[d], g_ob[dp]))
            if (D.compose(counit[dp], f.mor_map[h]) == want) {
                if (found != npos)
                    throw std::logic_error("left_adjoint_via_comma: universality broke");
                found = h;
            }
        if (found == npos)
            throw std::logic_error("left_adjoint_via_comma: universality broke");
        g.mor_map[m] = found;
    }
    {
        auto rep = validate_functor(g);
        if (!rep.ok())
            throw std::logic_error("left_adjoint_via_comma: assembled adjoint not a functor");
    }

    // Certificate: Hom_D(Fc, d) <-> Hom_C(c, Gd) via u = epsilon_d after F(h).
    AdjunctionCertificate cert;
    cert.left = f;
    cert.right = g;
    // phi[c][d]: u-index (in D) -> h-index (in C)
    std::vector<std::vector<std::map<Idx, Idx>>> phi(
        C.objects.size(), std::vector<std::map<Idx, Idx>>(D.objects.size()));
    bool bijective = true;
    for (Idx c = 0; c < C.objects.size(); ++c)
        for (Idx d = 0; d < D.objects.size(); ++d) {
            auto us = D.hom(f.ob_map[c], d);
            auto hs = C.hom(c, g_ob[d]);
            if (us.size() != hs.size()) bijective = false;
            std::set<Idx> used;
            for (Idx u : us) {
                Idx match = npos;
                for (Idx h : hs) {
                    budget.spend();
                    if (D.compose(counit[d], f.mor_map[h]) == u) {
                        if (match != npos) bijective = false;
                        match = h;
                    }
                }
                if (match == npos) {
                    bijective = false;
                    continue;
                }
                if (!used.insert(match).second) bijective = false;
                phi[c][d][u] = match;
                cert.hom_bijections[{c, d}].emplace_back(u, match);
            }
        }
    if (!bijective)
        throw std::logic_error("left_adjoint_via_comma: hom comparison is not a bijection");

    // Naturality in both variables, exhaustively.
    cert.natural = true;
    for (Idx a = 0; a < C.morphisms.size() && cert.natural; ++a)
        for (Idx b = 0; b < D.morphisms.size() && cert.natural; ++b) {
            Idx cp = C.src[a], c = C.tgt[a];
            Idx d = D.src[b], dp = D.tgt[b];
            for (Idx u : D.hom(f.ob_map[c], d)) {
                Idx lhs_u = D.compose(b, D.compose(u, f.mor_map[a]));
                Idx lhs = phi[cp][dp].at(lhs_u);
                Idx rhs = C.compose(g.mor_map[b], C.compose(phi[c][d].at(u), a));
                if (lhs != rhs) {
                    cert.natural = false;
                    break;
                }
            }
        }
    if (!cert.natural)
        throw std::logic_error("left_adjoint_via_comma: certificate fails naturality");

    res.adjoint = std::move(g);
    res.certificate = std::move(cert);
    return res;
}

AdjointSearch right_adjoint_via_comma(const Functor& f, std::uint64_t max_enum) {
    Functor op_f{opposite(f.dom), opposite(f.cod), f.ob_map, f.mor_map};
    AdjointSearch dual = left_adjoint_via_comma(op_f, max_enum);
    AdjointSearch res;
    res.failing_object = dual.failing_object;
    if (dual.adjoint)
        res.adjoint = Functor{f.cod, f.dom, dual.adjoint->ob_map, dual.adjoint->mor_map};
    return res;
}

AdjunctionConsistency adjunction_consistency(const Functor& f, std::uint64_t max_enum) {
    AdjunctionConsistency out;
    CollageResult col = collage(f, max_enum);
    out.collage_cocartesian = is_cocartesian_fibration(col.to_interval).ok();
    out.cartesian_route = is_cartesian_fibration(col.to_interval).ok();
    out.comma_route = left_adjoint_via_comma(f, max_enum).adjoint.has_value();
    return out;
}

DeltaAdjointReport delta_adjoint_check(const CatPtr& w, const CatPtr& i,
                                       std::uint64_t max_enum) {
    DeltaAdjointReport rep;
    FunctorCategory fc = functor_category(i, w, max_enum);
    const FinCategory& W = *w;

    // The constant-diagram functor.
    Functor delta_functor{w, fc.cat, {}, {}};
    delta_functor.ob_map.resize(W.objects.size());
    delta_functor.mor_map.resize(W.morphisms.size());
    for (Idx x = 0; x < W.objects.size(); ++x) {
        Functor constant{i, w, std::vector<Idx>(i->objects.size(), x),
                         std::vector<Idx>(i->morphisms.size(), W.ident[x])};
        Idx ob = fc.object_of_functor(constant);
        if (ob == npos) throw std::logic_error("delta_adjoint_check: missing constant functor");
        delta_functor.ob_map[x] = ob;
    }
    for (Idx m = 0; m < W.morphisms.size(); ++m) {
        Functor cs{i, w, std::vector<Idx>(i->objects.size(), W.src[m]),
                   std::vector<Idx>(i->morphisms.size(), W.ident[W.src[m]])};
        Functor ct{i, w, std::vector<Idx>(i->objects.size(), W.tgt[m]),
                   std::vector<Idx>(i->morphisms.size(), W.ident[W.tgt[m]])};
        NatTrans constant{cs, ct, std::vector<Idx>(i->objects.size(), m)};
        Idx mor = fc.morphism_of_trans(constant);
        if (mor == npos)
            throw std::logic_error("delta_adjoint_check: missing constant transformation");
        delta_functor.mor_map[m] = mor;
    }
    {
        auto vrep = validate_functor(delta_functor);
        if (!vrep.ok())
            throw std::logic_error("delta_adjoint_check: constant-diagram map not a functor");
    }

    rep.delta_has_left_adjoint = right_adjoint_via_comma(delta_functor, max_enum)
                                     .adjoint.has_value();
    rep.delta_has_right_adjoint = left_adjoint_via_comma(delta_functor, max_enum)
                                      .adjoint.has_value();

    rep.all_diagrams_have_colimits = true;
    rep.all_diagrams_have_limits = true;
    for (const Functor& diagram : fc.functor_of_object) {
        if (!colimit(diagram, max_enum)) rep.all_diagrams_have_colimits = false;
        Functor op_diagram{opposite(i), opposite(w), diagram.ob_map, diagram.mor_map};
        if (!colimit(op_diagram, max_enum)) rep.all_diagrams_have_limits = false;
    }
    return rep;
}

}  // namespace sscat
