#include "sscat/fincat.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace sscat {

Idx FinCategory::object_of(const std::string& name) const {
    auto it = object_index.find(name);
    if (it == object_index.end())
        throw PreconditionError("unknown object: " + name);
    return it->second;
}

Idx FinCategory::morphism_of(const std::string& name) const {
    auto it = morphism_index.find(name);
    if (it == morphism_index.end())
        throw PreconditionError("unknown morphism: " + name);
    return it->second;
}

std::vector<Idx> FinCategory::hom(Idx x, Idx y) const {
    std::vector<Idx> out;
    for (Idx m = 0; m < morphisms.size(); ++m)
        if (src[m] == x && tgt[m] == y) out.push_back(m);
    return out;
}

bool FinCategory::is_invertible(Idx m) const { return inverse(m).has_value(); }

std::optional<Idx> FinCategory::inverse(Idx m) const {
    for (Idx w : hom(tgt[m], src[m])) {
        if (compose(w, m) == ident[src[m]] && compose(m, w) == ident[tgt[m]])
            return w;
    }
    return std::nullopt;
}

void FinCategory::rebuild_index() {
    object_index.clear();
    morphism_index.clear();
    for (Idx i = 0; i < objects.size(); ++i) object_index[objects[i]] = i;
    for (Idx i = 0; i < morphisms.size(); ++i) morphism_index[morphisms[i]] = i;
}

// ---- builder ---------------------------------------------------------------

Idx CategoryBuilder::add_object(const std::string& name) {
    if (cat_.object_index.count(name))
        throw PreconditionError("duplicate object: " + name);
    Idx i = cat_.objects.size();
    cat_.objects.push_back(name);
    cat_.object_index[name] = i;
    Idx id = add_morphism("id_" + name, i, i);
    cat_.ident.push_back(id);
    return i;
}

Idx CategoryBuilder::add_morphism(const std::string& name, Idx source, Idx target) {
    if (cat_.morphism_index.count(name))
        throw PreconditionError("duplicate morphism: " + name);
    Idx i = cat_.morphisms.size();
    cat_.morphisms.push_back(name);
    cat_.morphism_index[name] = i;
    cat_.src.push_back(source);
    cat_.tgt.push_back(target);
    return i;
}

void CategoryBuilder::set_composite(Idx g, Idx f, Idx gf) {
    cat_.comp_table[cat_.comp_key(g, f)] = gf;
}

CatPtr CategoryBuilder::finish() {
    // Unit composites are filled in automatically.
    for (Idx m = 0; m < cat_.morphisms.size(); ++m) {
        cat_.comp_table.emplace(cat_.comp_key(cat_.ident[cat_.tgt[m]], m), m);
        cat_.comp_table.emplace(cat_.comp_key(m, cat_.ident[cat_.src[m]]), m);
    }
    return std::make_shared<const FinCategory>(std::move(cat_));
}

// ---- validation -------------------------------------------------------------

namespace {

std::string tuple_witness(const FinCategory& c, std::initializer_list<Idx> mors) {
    std::vector<std::string> names;
    for (Idx m : mors) names.push_back(c.morphisms[m]);
    return "(" + join(names, ", ") + ")";
}

}  // namespace

ValidationReport validate_category(const FinCategory& c) {
    ValidationReport rep;
    auto issue = [&](const std::string& axiom, const std::string& witness) {
        rep.issues.push_back({axiom, witness});
    };

    // Structural pass: dangling references come first.
    for (Idx m = 0; m < c.morphisms.size(); ++m) {
        if (c.src[m] >= c.objects.size() || c.tgt[m] >= c.objects.size())
            issue("structure", "morphism " + c.morphisms[m] + " has dangling endpoint");
    }
    if (c.ident.size() != c.objects.size())
        issue("structure", "identity table not total on objects");
    for (Idx x = 0; x < c.ident.size(); ++x) {
        if (c.ident[x] >= c.morphisms.size())
            issue("structure", "identity of " + c.objects[x] + " dangles");
    }
    for (const auto& [key, gf] : c.comp_table) {
        auto [g, f] = FinCategory::comp_key_parts(key);
        if (g >= c.morphisms.size() || f >= c.morphisms.size() || gf >= c.morphisms.size())
            issue("structure", "composition entry references unknown morphism");
    }
    if (!rep.ok()) return rep;

    for (Idx x = 0; x < c.objects.size(); ++x) {
        Idx e = c.ident[x];
        if (c.src[e] != x || c.tgt[e] != x)
            issue("identity-endpoints", c.objects[x]);
    }

    // comp is defined exactly on composable pairs.
    for (Idx g = 0; g < c.morphisms.size(); ++g) {
        for (Idx f = 0; f < c.morphisms.size(); ++f) {
            Idx gf = c.compose(g, f);
            if (c.composable(g, f) && gf == npos)
                issue("composition-domain", "missing composite " + tuple_witness(c, {g, f}));
            if (!c.composable(g, f) && gf != npos)
                issue("composition-domain", "spurious composite " + tuple_witness(c, {g, f}));
            if (gf == npos || !c.composable(g, f)) continue;
            if (c.src[gf] != c.src[f] || c.tgt[gf] != c.tgt[g])
                issue("source-target", tuple_witness(c, {g, f}));
        }
    }

    for (Idx f = 0; f < c.morphisms.size(); ++f) {
        if (c.compose(c.ident[c.tgt[f]], f) != f || c.compose(f, c.ident[c.src[f]]) != f)
            issue("unit", c.morphisms[f]);
    }

    for (Idx h = 0; h < c.morphisms.size(); ++h) {
        for (Idx g = 0; g < c.morphisms.size(); ++g) {
            if (!c.composable(h, g)) continue;
            for (Idx f = 0; f < c.morphisms.size(); ++f) {
                if (!c.composable(g, f)) continue;
                Idx gf = c.compose(g, f);
                Idx hg = c.compose(h, g);
                if (gf == npos || hg == npos) continue;
                if (c.compose(h, gf) != c.compose(hg, f))
                    issue("associativity", tuple_witness(c, {h, g, f}));
            }
        }
    }
    return rep;
}

ValidationReport validate_functor(const Functor& f) {
    ValidationReport rep;
    const FinCategory& c = *f.dom;
    const FinCategory& d = *f.cod;
    auto issue = [&](const std::string& axiom, const std::string& witness) {
        rep.issues.push_back({axiom, witness});
    };
    if (f.ob_map.size() != c.objects.size() || f.mor_map.size() != c.morphisms.size()) {
        issue("structure", "functor tables not total");
        return rep;
    }
    for (Idx m = 0; m < c.morphisms.size(); ++m) {
        Idx fm = f.mor_map[m];
        if (d.src[fm] != f.ob_map[c.src[m]] || d.tgt[fm] != f.ob_map[c.tgt[m]])
            issue("source-target", c.morphisms[m]);
    }
    for (Idx x = 0; x < c.objects.size(); ++x) {
        if (f.mor_map[c.ident[x]] != d.ident[f.ob_map[x]])
            issue("identity", c.objects[x]);
    }
    for (Idx g = 0; g < c.morphisms.size(); ++g) {
        for (Idx fm = 0; fm < c.morphisms.size(); ++fm) {
            if (!c.composable(g, fm)) continue;
            Idx gf = c.compose(g, fm);
            if (f.mor_map[gf] != d.compose(f.mor_map[g], f.mor_map[fm]))
                issue("composition", tuple_witness(c, {g, fm}));
        }
    }
    return rep;
}

ValidationReport validate_nat_trans(const NatTrans& a) {
    ValidationReport rep;
    const FinCategory& c = *a.source.dom;
    const FinCategory& d = *a.source.cod;
    if (a.components.size() != c.objects.size()) {
        rep.issues.push_back({"structure", "component table not total"});
        return rep;
    }
    for (Idx x = 0; x < c.objects.size(); ++x) {
        Idx ax = a.components[x];
        if (d.src[ax] != a.source.ob_map[x] || d.tgt[ax] != a.target.ob_map[x])
            rep.issues.push_back({"component-endpoints", c.objects[x]});
    }
    if (!rep.ok()) return rep;
    for (Idx m = 0; m < c.morphisms.size(); ++m) {
        Idx x = c.src[m], y = c.tgt[m];
        if (d.compose(a.target.mor_map[m], a.components[x]) !=
            d.compose(a.components[y], a.source.mor_map[m]))
            rep.issues.push_back({"naturality", c.morphisms[m]});
    }
    return rep;
}

ValidationReport validate_relative_category(const RelativeCategory& rc) {
    ValidationReport rep;
    const FinCategory& c = *rc.cat;
    if (rc.weak.size() != c.morphisms.size()) {
        rep.issues.push_back({"structure", "weak table not total"});
        return rep;
    }
    for (Idx x = 0; x < c.objects.size(); ++x)
        if (!rc.weak[c.ident[x]])
            rep.issues.push_back({"weak-identities", c.objects[x]});
    for (Idx m = 0; m < c.morphisms.size(); ++m)
        if (c.is_invertible(m) && !rc.weak[m])
            rep.issues.push_back({"weak-isomorphisms", c.morphisms[m]});
    for (Idx g = 0; g < c.morphisms.size(); ++g)
        for (Idx f = 0; f < c.morphisms.size(); ++f) {
            if (!c.composable(g, f) || !rc.weak[g] || !rc.weak[f]) continue;
            if (!rc.weak[c.compose(g, f)])
                rep.issues.push_back({"weak-composition", tuple_witness(c, {g, f})});
        }
    return rep;
}

ValidationReport validate_set_functor(const SetFunctor& f) {
    ValidationReport rep;
    const FinCategory& c = *f.dom;
    if (f.ob_elems.size() != c.objects.size() || f.mor_fn.size() != c.morphisms.size()) {
        rep.issues.push_back({"structure", "assignment tables not total"});
        return rep;
    }
    for (Idx m = 0; m < c.morphisms.size(); ++m) {
        if (f.mor_fn[m].size() != f.ob_elems[c.src[m]].size()) {
            rep.issues.push_back({"structure", "function table for " + c.morphisms[m] +
                                                   " not total"});
            return rep;
        }
        for (Idx e : f.mor_fn[m])
            if (e >= f.ob_elems[c.tgt[m]].size())
                rep.issues.push_back({"structure", "function for " + c.morphisms[m] +
                                                       " escapes its codomain"});
    }
    if (!rep.ok()) return rep;
    for (Idx x = 0; x < c.objects.size(); ++x) {
        const auto& table = f.mor_fn[c.ident[x]];
        for (Idx e = 0; e < table.size(); ++e)
            if (table[e] != e)
                rep.issues.push_back({"identity", c.objects[x]});
    }
    for (Idx g = 0; g < c.morphisms.size(); ++g)
        for (Idx m = 0; m < c.morphisms.size(); ++m) {
            if (!c.composable(g, m)) continue;
            Idx gm = c.compose(g, m);
            for (Idx e = 0; e < f.mor_fn[m].size(); ++e)
                if (f.mor_fn[gm][e] != f.mor_fn[g][f.mor_fn[m][e]]) {
                    rep.issues.push_back({"composition", tuple_witness(c, {g, m})});
                    break;
                }
        }
    return rep;
}

// ---- generators --------------------------------------------------------------

CatPtr poset_category(int n) {
    if (n < 0) throw PreconditionError("poset_category: n must be >= 0");
    CategoryBuilder b;
    for (int i = 0; i <= n; ++i) b.add_object(std::to_string(i));
    std::vector<std::vector<Idx>> arrow(n + 1, std::vector<Idx>(n + 1, npos));
    for (int i = 0; i <= n; ++i) arrow[i][i] = b.peek().ident[i];
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            arrow[i][j] = b.add_morphism("(" + std::to_string(i) + "," + std::to_string(j) + ")",
                                         static_cast<Idx>(i), static_cast<Idx>(j));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                b.set_composite(arrow[j][k], arrow[i][j], arrow[i][k]);
    return b.finish();
}

CatPtr iso_category(int n) {
    if (n < 0) throw PreconditionError("iso_category: n must be >= 0");
    CategoryBuilder b;
    for (int i = 0; i <= n; ++i) b.add_object("x" + std::to_string(i));
    std::vector<std::vector<Idx>> arrow(n + 1, std::vector<Idx>(n + 1));
    for (int i = 0; i <= n; ++i) arrow[i][i] = b.peek().ident[i];
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            arrow[i][j] = b.add_morphism("(x" + std::to_string(i) + ",x" + std::to_string(j) + ")",
                                         static_cast<Idx>(i), static_cast<Idx>(j));
        }
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k)
                b.set_composite(arrow[j][k], arrow[i][j], arrow[i][k]);
    return b.finish();
}

namespace {

/// Full subcategory structure on a chosen morphism subset (assumed closed
/// under composition and containing all identities).
CatPtr subcategory_on_morphisms(const CatPtr& c, const std::vector<bool>& keep) {
    FinCategory out;
    out.objects = c->objects;
    std::vector<Idx> remap(c->morphisms.size(), npos);
    for (Idx m = 0; m < c->morphisms.size(); ++m) {
        if (!keep[m]) continue;
        remap[m] = out.morphisms.size();
        out.morphisms.push_back(c->morphisms[m]);
        out.src.push_back(c->src[m]);
        out.tgt.push_back(c->tgt[m]);
    }
    out.ident.resize(c->objects.size());
    for (Idx x = 0; x < c->objects.size(); ++x) out.ident[x] = remap[c->ident[x]];
    for (Idx g = 0; g < c->morphisms.size(); ++g)
        for (Idx f = 0; f < c->morphisms.size(); ++f) {
            if (!keep[g] || !keep[f] || !c->composable(g, f)) continue;
            out.comp_table[out.comp_key(remap[g], remap[f])] = remap[c->compose(g, f)];
        }
    out.rebuild_index();
    return std::make_shared<const FinCategory>(std::move(out));
}

}  // namespace

CatPtr core(const CatPtr& c) {
    std::vector<bool> keep(c->morphisms.size());
    for (Idx m = 0; m < c->morphisms.size(); ++m) keep[m] = c->is_invertible(m);
    return subcategory_on_morphisms(c, keep);
}

CatPtr opposite(const CatPtr& c) {
    FinCategory out;
    out.objects = c->objects;
    out.morphisms = c->morphisms;
    out.src = c->tgt;
    out.tgt = c->src;
    out.ident = c->ident;
    for (Idx g = 0; g < c->morphisms.size(); ++g)
        for (Idx f = 0; f < c->morphisms.size(); ++f) {
            if (!c->composable(g, f)) continue;
            // (g after f) in c becomes (f after g) in c^op.
            out.comp_table[out.comp_key(f, g)] = c->compose(g, f);
        }
    out.rebuild_index();
    return std::make_shared<const FinCategory>(std::move(out));
}

CatPtr product_category(const CatPtr& c, const CatPtr& d) {
    FinCategory out;
    auto pair_name = [](const std::string& a, const std::string& b) {
        return "(" + a + "," + b + ")";
    };
    for (Idx x = 0; x < c->objects.size(); ++x)
        for (Idx y = 0; y < d->objects.size(); ++y)
            out.objects.push_back(pair_name(c->objects[x], d->objects[y]));
    auto ob = [&](Idx x, Idx y) { return x * d->objects.size() + y; };
    auto mor = [&](Idx m, Idx w) { return m * d->morphisms.size() + w; };
    for (Idx m = 0; m < c->morphisms.size(); ++m)
        for (Idx w = 0; w < d->morphisms.size(); ++w) {
            out.morphisms.push_back(pair_name(c->morphisms[m], d->morphisms[w]));
            out.src.push_back(ob(c->src[m], d->src[w]));
            out.tgt.push_back(ob(c->tgt[m], d->tgt[w]));
        }
    out.ident.resize(out.objects.size());
    for (Idx x = 0; x < c->objects.size(); ++x)
        for (Idx y = 0; y < d->objects.size(); ++y)
            out.ident[ob(x, y)] = mor(c->ident[x], d->ident[y]);
    for (Idx g = 0; g < c->morphisms.size(); ++g)
        for (Idx f = 0; f < c->morphisms.size(); ++f) {
            if (!c->composable(g, f)) continue;
            for (Idx u = 0; u < d->morphisms.size(); ++u)
                for (Idx v = 0; v < d->morphisms.size(); ++v) {
                    if (!d->composable(u, v)) continue;
                    out.comp_table[out.comp_key(mor(g, u), mor(f, v))] =
                        mor(c->compose(g, f), d->compose(u, v));
                }
        }
    out.rebuild_index();
    return std::make_shared<const FinCategory>(std::move(out));
}

// ---- functor machinery ---------------------------------------------------

bool functor_equal(const Functor& f, const Functor& g) {
    return f.ob_map == g.ob_map && f.mor_map == g.mor_map;
}

Functor identity_functor(const CatPtr& c) {
    Functor f{c, c, {}, {}};
    f.ob_map.resize(c->objects.size());
    f.mor_map.resize(c->morphisms.size());
    std::iota(f.ob_map.begin(), f.ob_map.end(), Idx{0});
    std::iota(f.mor_map.begin(), f.mor_map.end(), Idx{0});
    return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
    Functor out{f.dom, g.cod, {}, {}};
    out.ob_map.reserve(f.ob_map.size());
    out.mor_map.reserve(f.mor_map.size());
    for (Idx x : f.ob_map) out.ob_map.push_back(g.ob_map[x]);
    for (Idx m : f.mor_map) out.mor_map.push_back(g.mor_map[m]);
    return out;
}

Functor functor_from_monotone(const CatPtr& dom_poset, const CatPtr& cod_poset,
                              const std::vector<int>& images) {
    const FinCategory& C = *dom_poset;
    const FinCategory& D = *cod_poset;
    if (images.size() != C.objects.size())
        throw PreconditionError("functor_from_monotone: assignment not total");
    if (!std::is_sorted(images.begin(), images.end()))
        throw PreconditionError("functor_from_monotone: assignment not monotone");
    Functor f{dom_poset, cod_poset, {}, {}};
    for (int v : images) f.ob_map.push_back(static_cast<Idx>(v));
    f.mor_map.resize(C.morphisms.size());
    for (Idx m = 0; m < C.morphisms.size(); ++m) {
        auto h = D.hom(f.ob_map[C.src[m]], f.ob_map[C.tgt[m]]);
        if (h.size() != 1)
            throw PreconditionError("functor_from_monotone: codomain is not a poset");
        f.mor_map[m] = h.front();
    }
    return f;
}

namespace {

// Composition triples of c grouped by the largest morphism index involved,
// so functor search can prune as soon as a triple is fully assigned.
std::vector<std::vector<std::array<Idx, 3>>> triples_by_max(const FinCategory& c) {
    std::vector<std::vector<std::array<Idx, 3>>> by_max(c.morphisms.size());
    for (Idx g = 0; g < c.morphisms.size(); ++g)
        for (Idx f = 0; f < c.morphisms.size(); ++f) {
            if (!c.composable(g, f)) continue;
            Idx gf = c.compose(g, f);
            by_max[std::max({g, f, gf})].push_back({g, f, gf});
        }
    return by_max;
}

}  // namespace

std::vector<Functor> enumerate_functors(const CatPtr& c, const CatPtr& d,
                                        std::uint64_t max_enum) {
    return enumerate_functors_where(c, d, {}, max_enum);
}

std::vector<Functor> enumerate_functors_where(const CatPtr& c, const CatPtr& d,
                                              const FunctorConstraints& constraints,
                                              std::uint64_t max_enum) {
    Budget budget(max_enum);
    const FinCategory& C = *c;
    const FinCategory& D = *d;
    std::vector<Functor> out;
    if (C.objects.empty()) {
        out.push_back(Functor{c, d, {}, {}});
        return out;
    }
    if (D.objects.empty()) return out;

    // Size guard on the object-assignment space: |Ob D| ^ |Ob C|.
    double total = 1;
    for (std::size_t i = 0; i < C.objects.size(); ++i) {
        total *= static_cast<double>(D.objects.size());
        if (total > static_cast<double>(max_enum))
            throw EnumerationLimitError("functor enumeration: object assignments exceed bound");
    }

    auto by_max = triples_by_max(C);
    // Hom tables of D, indexed by (src, tgt).
    std::vector<std::vector<std::vector<Idx>>> dhom(
        D.objects.size(), std::vector<std::vector<Idx>>(D.objects.size()));
    for (Idx m = 0; m < D.morphisms.size(); ++m) dhom[D.src[m]][D.tgt[m]].push_back(m);

    std::vector<Idx> ob(C.objects.size(), 0);
    std::vector<Idx> mor(C.morphisms.size(), npos);

    auto extend_morphisms = [&](auto&& self, Idx m) -> void {
        while (m < C.morphisms.size() && C.is_identity(m)) {
            Idx img = D.ident[ob[C.src[m]]];
            if (constraints.morphism_ok && !constraints.morphism_ok(m, img)) return;
            mor[m] = img;
            ++m;
        }
        if (m == C.morphisms.size()) {
            Functor f{c, d, ob, mor};
            out.push_back(std::move(f));
            return;
        }
        for (Idx cand : dhom[ob[C.src[m]]][ob[C.tgt[m]]]) {
            budget.spend();
            if (constraints.morphism_ok && !constraints.morphism_ok(m, cand)) continue;
            mor[m] = cand;
            bool ok = true;
            for (const auto& t : by_max[m]) {
                if (mor[t[0]] == npos || mor[t[1]] == npos || mor[t[2]] == npos) continue;
                if (D.compose(mor[t[0]], mor[t[1]]) != mor[t[2]]) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, m + 1);
            mor[m] = npos;
        }
    };

    auto next_object = [&](auto&& self, Idx x) -> void {
        if (x == C.objects.size()) {
            std::fill(mor.begin(), mor.end(), npos);
            extend_morphisms(extend_morphisms, 0);
            return;
        }
        for (Idx cand = 0; cand < D.objects.size(); ++cand) {
            budget.spend();
            if (constraints.object_ok && !constraints.object_ok(x, cand)) continue;
            ob[x] = cand;
            self(self, x + 1);
        }
    };
    next_object(next_object, 0);
    return out;
}

std::vector<NatTrans> enumerate_nat_trans(const Functor& f, const Functor& g,
                                          std::uint64_t max_enum) {
    Budget budget(max_enum);
    const FinCategory& C = *f.dom;
    const FinCategory& D = *f.cod;
    std::vector<NatTrans> out;

    // Naturality squares grouped by the larger object index they touch.
    std::vector<std::vector<Idx>> squares_by_max(std::max<std::size_t>(C.objects.size(), 1));
    for (Idx m = 0; m < C.morphisms.size(); ++m)
        squares_by_max[std::max(C.src[m], C.tgt[m])].push_back(m);

    std::vector<Idx> comp(C.objects.size(), npos);
    auto recurse = [&](auto&& self, Idx x) -> void {
        if (x == C.objects.size()) {
            out.push_back(NatTrans{f, g, comp});
            return;
        }
        for (Idx cand : D.hom(f.ob_map[x], g.ob_map[x])) {
            budget.spend();
            comp[x] = cand;
            bool ok = true;
            for (Idx m : squares_by_max[x]) {
                Idx sx = C.src[m], ty = C.tgt[m];
                if (comp[sx] == npos || comp[ty] == npos) continue;
                if (D.compose(g.mor_map[m], comp[sx]) != D.compose(comp[ty], f.mor_map[m])) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, x + 1);
            comp[x] = npos;
        }
    };
    if (C.objects.empty()) {
        out.push_back(NatTrans{f, g, {}});
        return out;
    }
    recurse(recurse, 0);
    return out;
}

std::string functor_key(const Functor& f) {
    std::ostringstream os;
    os << "o:";
    for (Idx x : f.ob_map) os << x << ",";
    os << "|m:";
    for (Idx m : f.mor_map) os << m << ",";
    return os.str();
}

std::string trans_key(const NatTrans& t) {
    std::ostringstream os;
    os << functor_key(t.source) << ">" << functor_key(t.target) << "|c:";
    for (Idx m : t.components) os << m << ",";
    return os.str();
}

Idx FunctorCategory::object_of_functor(const Functor& f) const {
    auto it = functor_index.find(functor_key(f));
    return it == functor_index.end() ? npos : it->second;
}

Idx FunctorCategory::morphism_of_trans(const NatTrans& t) const {
    auto it = trans_index.find(trans_key(t));
    return it == trans_index.end() ? npos : it->second;
}

namespace {

FunctorCategory build_functor_category(const CatPtr& c, const CatPtr& d,
                                       const std::vector<bool>* weak,
                                       std::uint64_t max_enum) {
    FunctorCategory fc;
    fc.functor_of_object = enumerate_functors(c, d, max_enum);

    Budget budget(max_enum);
    FinCategory cat;
    for (Idx i = 0; i < fc.functor_of_object.size(); ++i) {
        cat.objects.push_back("F" + std::to_string(i));
        fc.functor_index[functor_key(fc.functor_of_object[i])] = i;
    }
    cat.ident.assign(cat.objects.size(), npos);

    const FinCategory& D = *d;
    auto is_weak_trans = [&](const NatTrans& t) {
        if (!weak) return true;
        for (Idx m : t.components)
            if (!(*weak)[m]) return false;
        return true;
    };

    // Morphisms: all (weak) natural transformations between every ordered pair.
    std::vector<std::vector<std::vector<Idx>>> trans_between(
        fc.functor_of_object.size(),
        std::vector<std::vector<Idx>>(fc.functor_of_object.size()));
    for (Idx i = 0; i < fc.functor_of_object.size(); ++i)
        for (Idx j = 0; j < fc.functor_of_object.size(); ++j) {
            auto all = enumerate_nat_trans(fc.functor_of_object[i], fc.functor_of_object[j],
                                           max_enum);
            for (auto& t : all) {
                if (!is_weak_trans(t)) continue;
                budget.spend();
                Idx m = cat.morphisms.size();
                std::vector<std::string> cn;
                for (Idx cm : t.components) cn.push_back(D.morphisms[cm]);
                cat.morphisms.push_back("F" + std::to_string(i) + ">F" + std::to_string(j) +
                                        "{" + join(cn, ",") + "}");
                cat.src.push_back(i);
                cat.tgt.push_back(j);
                fc.trans_index[trans_key(t)] = m;
                fc.trans_of_morphism.push_back(std::move(t));
                trans_between[i][j].push_back(m);
            }
        }

    for (Idx i = 0; i < fc.functor_of_object.size(); ++i) {
        NatTrans id{fc.functor_of_object[i], fc.functor_of_object[i], {}};
        id.components.resize(c->objects.size());
        for (Idx x = 0; x < c->objects.size(); ++x)
            id.components[x] = D.ident[fc.functor_of_object[i].ob_map[x]];
        cat.ident[i] = fc.trans_index.at(trans_key(id));
    }

    for (Idx j = 0; j < fc.functor_of_object.size(); ++j)
        for (Idx k = 0; k < fc.functor_of_object.size(); ++k)
            for (Idx i = 0; i < fc.functor_of_object.size(); ++i)
                for (Idx b : trans_between[j][k])
                    for (Idx a : trans_between[i][j]) {
                        budget.spend();
                        NatTrans comp{fc.trans_of_morphism[a].source,
                                      fc.trans_of_morphism[b].target, {}};
                        comp.components.resize(c->objects.size());
                        for (Idx x = 0; x < c->objects.size(); ++x)
                            comp.components[x] =
                                D.compose(fc.trans_of_morphism[b].components[x],
                                          fc.trans_of_morphism[a].components[x]);
                        cat.comp_table[cat.comp_key(b, a)] = fc.trans_index.at(trans_key(comp));
                    }

    cat.rebuild_index();
    fc.cat = std::make_shared<const FinCategory>(std::move(cat));
    return fc;
}

}  // namespace

FunctorCategory functor_category(const CatPtr& c, const CatPtr& d, std::uint64_t max_enum) {
    return build_functor_category(c, d, nullptr, max_enum);
}

FunctorCategory we_functor_category(const RelativeCategory& rc, const CatPtr& d,
                                    std::uint64_t max_enum) {
    return build_functor_category(d, rc.cat, &rc.weak, max_enum);
}

// ---- Yoneda ----------------------------------------------------------------

SetFunctor yoneda_functor(const CatPtr& c, Idx x) {
    SetFunctor f{c, {}, {}};
    f.ob_elems.resize(c->objects.size());
    f.mor_fn.resize(c->morphisms.size());
    std::vector<std::vector<Idx>> hom_of(c->objects.size());
    for (Idx y = 0; y < c->objects.size(); ++y) {
        hom_of[y] = c->hom(x, y);
        for (Idx m : hom_of[y]) f.ob_elems[y].push_back(c->morphisms[m]);
    }
    for (Idx g = 0; g < c->morphisms.size(); ++g) {
        const auto& dom_elems = hom_of[c->src[g]];
        const auto& cod_elems = hom_of[c->tgt[g]];
        for (Idx h : dom_elems) {
            Idx gh = c->compose(g, h);
            auto pos = std::find(cod_elems.begin(), cod_elems.end(), gh);
            f.mor_fn[g].push_back(static_cast<Idx>(pos - cod_elems.begin()));
        }
    }
    return f;
}

namespace {

/// All natural transformations Y_x => F, as per-object element assignments.
/// Each transformation is a table alpha[y] : Hom(x,y) -> F(y).
std::vector<std::vector<std::vector<Idx>>> enumerate_set_nat_trans(
    const CatPtr& c, Idx x, const SetFunctor& F, Budget& budget) {
    const FinCategory& C = *c;
    std::vector<std::vector<Idx>> hom_of(C.objects.size());
    for (Idx y = 0; y < C.objects.size(); ++y) hom_of[y] = C.hom(x, y);

    std::vector<std::vector<Idx>> alpha(C.objects.size());
    for (Idx y = 0; y < C.objects.size(); ++y) alpha[y].assign(hom_of[y].size(), npos);

    std::vector<std::vector<std::vector<Idx>>> out;
    auto natural_so_far = [&](Idx assigned_obj) {
        // check naturality squares whose source and target assignments exist
        for (Idx g = 0; g < C.morphisms.size(); ++g) {
            Idx sy = C.src[g], ty = C.tgt[g];
            if (sy > assigned_obj || ty > assigned_obj) continue;
            for (std::size_t i = 0; i < hom_of[sy].size(); ++i) {
                Idx h = hom_of[sy][i];
                Idx gh = C.compose(g, h);
                auto pos = std::find(hom_of[ty].begin(), hom_of[ty].end(), gh) -
                           hom_of[ty].begin();
                if (alpha[sy][i] == npos || alpha[ty][pos] == npos) continue;
                if (F.mor_fn[g][alpha[sy][i]] != alpha[ty][pos]) return false;
            }
        }
        return true;
    };

    auto recurse = [&](auto&& self, Idx y, std::size_t slot) -> void {
        if (y == C.objects.size()) {
            out.push_back(alpha);
            return;
        }
        if (slot == hom_of[y].size()) {
            if (natural_so_far(y)) self(self, y + 1, 0);
            return;
        }
        for (Idx e = 0; e < F.ob_elems[y].size(); ++e) {
            budget.spend();
            alpha[y][slot] = e;
            self(self, y, slot + 1);
            alpha[y][slot] = npos;
        }
    };
    recurse(recurse, 0, 0);
    return out;
}

}  // namespace

BijectionWitness yoneda_check(const CatPtr& c, Idx x, const SetFunctor& f,
                              std::uint64_t max_enum) {
    Budget budget(max_enum);
    const FinCategory& C = *c;
    auto report = validate_set_functor(f);
    if (!report.ok())
        throw PreconditionError("yoneda_check: set functor invalid: " +
                                report.issues.front().axiom);

    auto all = enumerate_set_nat_trans(c, x, f, budget);
    std::vector<Idx> hom_xx = C.hom(x, x);
    auto id_pos = static_cast<std::size_t>(
        std::find(hom_xx.begin(), hom_xx.end(), C.ident[x]) - hom_xx.begin());

    BijectionWitness w;
    std::vector<Idx> hit(f.ob_elems[x].size(), npos);
    bool injective = true;
    for (std::size_t a = 0; a < all.size(); ++a) {
        Idx value = all[a][x][id_pos];  // alpha_x(id_x)
        std::vector<std::string> label;
        for (Idx y = 0; y < C.objects.size(); ++y)
            for (std::size_t i = 0; i < all[a][y].size(); ++i)
                label.push_back(C.morphisms[C.hom(x, y)[i]] + "->" +
                                f.ob_elems[y][all[a][y][i]]);
        w.forward.emplace_back("alpha{" + join(label, ";") + "}", f.ob_elems[x][value]);
        if (hit[value] != npos) injective = false;
        hit[value] = a;
    }
    bool surjective =
        std::all_of(hit.begin(), hit.end(), [](Idx v) { return v != npos; });

    // The enumerated inverse: a in F(x) gives alpha^a_y(h) = F(h)(a). Check the
    // two composites are identities on all enumerated elements.
    bool inverse_ok = surjective && injective;
    for (Idx a = 0; a < f.ob_elems[x].size() && inverse_ok; ++a) {
        std::vector<std::vector<Idx>> alpha(C.objects.size());
        for (Idx y = 0; y < C.objects.size(); ++y) {
            for (Idx h : C.hom(x, y)) alpha[y].push_back(f.mor_fn[h][a]);
        }
        if (alpha[x][id_pos] != a) inverse_ok = false;  // forward o inverse
        bool found = false;
        for (const auto& b : all)
            if (b == alpha) found = true;  // inverse lands in Nat(Y_x, F)
        if (!found) inverse_ok = false;
    }

    w.bijective = injective && surjective && inverse_ok;
    w.detail = "|Nat(Y_x,F)| = " + std::to_string(all.size()) +
               ", |F(x)| = " + std::to_string(f.ob_elems[x].size());
    if (!w.bijective)
        throw std::logic_error("yoneda_check: evaluation at the identity is not a bijection (" +
                               w.detail + ")");
    return w;
}

// ---- isomorphism search -------------------------------------------------

bool categories_isomorphic(const CatPtr& a, const CatPtr& b, std::uint64_t max_enum) {
    const FinCategory& A = *a;
    const FinCategory& B = *b;
    if (A.objects.size() != B.objects.size() || A.morphisms.size() != B.morphisms.size())
        return false;
    Budget budget(max_enum);

    // Degree profile pruning for the object bijection.
    auto profile = [](const FinCategory& c, Idx x) {
        std::size_t out = 0, in = 0;
        for (Idx m = 0; m < c.morphisms.size(); ++m) {
            if (c.src[m] == x) ++out;
            if (c.tgt[m] == x) ++in;
        }
        return std::pair<std::size_t, std::size_t>{out, in};
    };

    std::vector<Idx> ob(A.objects.size(), npos);
    std::vector<bool> used(B.objects.size(), false);

    // With objects fixed, map each hom set bijectively and check composition.
    auto try_morphisms = [&]() -> bool {
        std::vector<Idx> mor(A.morphisms.size(), npos);
        std::vector<bool> taken(B.morphisms.size(), false);
        auto by_max = triples_by_max(A);
        auto recurse = [&](auto&& self, Idx m) -> bool {
            while (m < A.morphisms.size() && A.is_identity(m)) {
                Idx target = B.ident[ob[A.src[m]]];
                if (taken[target]) return false;
                mor[m] = target;
                taken[target] = true;
                Idx done = m;
                if (self(self, m + 1)) return true;
                taken[target] = false;
                mor[done] = npos;
                return false;
            }
            if (m == A.morphisms.size()) return true;
            for (Idx cand = 0; cand < B.morphisms.size(); ++cand) {
                if (taken[cand]) continue;
                if (B.src[cand] != ob[A.src[m]] || B.tgt[cand] != ob[A.tgt[m]]) continue;
                budget.spend();
                mor[m] = cand;
                taken[cand] = true;
                bool ok = true;
                for (const auto& t : by_max[m]) {
                    if (mor[t[0]] == npos || mor[t[1]] == npos || mor[t[2]] == npos) continue;
                    if (B.compose(mor[t[0]], mor[t[1]]) != mor[t[2]]) {
                        ok = false;
                        break;
                    }
                }
                if (ok && self(self, m + 1)) return true;
                taken[cand] = false;
                mor[m] = npos;
            }
            return false;
        };
        return recurse(recurse, 0);
    };

    auto assign = [&](auto&& self, Idx x) -> bool {
        if (x == A.objects.size()) return try_morphisms();
        auto pa = profile(A, x);
        for (Idx cand = 0; cand < B.objects.size(); ++cand) {
            if (used[cand] || profile(B, cand) != pa) continue;
            budget.spend();
            ob[x] = cand;
            used[cand] = true;
            if (self(self, x + 1)) return true;
            used[cand] = false;
            ob[x] = npos;
        }
        return false;
    };
    if (A.objects.empty()) return true;
    return assign(assign, 0);
}

}  // namespace sscat
