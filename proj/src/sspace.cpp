#include "sscat/sspace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sscat {

TruncSimpSet TruncBiSimpSet::column(int n) const {
    TruncSimpSet v;
    v.truncation = vtrunc;
    v.levels.resize(vtrunc + 1);
    for (int l = 0; l <= vtrunc; ++l) v.levels[l] = levels[n][l];
    v.face.resize(vtrunc + 1);
    for (int l = 1; l <= vtrunc; ++l) v.face[l] = vface[n][l];
    v.degen.resize(std::max(vtrunc, 0));
    for (int l = 0; l < vtrunc; ++l) v.degen[l] = vdegen[n][l];
    v.rebuild_index();
    return v;
}

TruncSimpSet TruncBiSimpSet::row(int l) const {
    TruncSimpSet h;
    h.truncation = htrunc;
    h.levels.resize(htrunc + 1);
    for (int n = 0; n <= htrunc; ++n) h.levels[n] = levels[n][l];
    h.face.resize(htrunc + 1);
    for (int n = 1; n <= htrunc; ++n) h.face[n] = hface[n][l];
    h.degen.resize(std::max(htrunc, 0));
    for (int n = 0; n < htrunc; ++n) h.degen[n] = hdegen[n][l];
    h.rebuild_index();
    return h;
}

Idx TruncBiSimpSet::constant_at(int n, Idx e, int l) const {
    Idx cur = e;
    for (int k = 0; k < l; ++k) cur = vdegen[n][k][0][cur];
    return cur;
}

Idx TruncBiSimpSet::h_constant_at(int l, Idx e, int n) const {
    Idx cur = e;
    for (int k = 0; k < n; ++k) cur = hdegen[k][l][0][cur];
    return cur;
}

Idx TruncBiSimpSet::index_of(int n, int l, const std::string& name) const {
    const auto& names = levels[n][l];
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw PreconditionError("unknown bisimplex at (" + std::to_string(n) + "," +
                                std::to_string(l) + "): " + name);
    return static_cast<Idx>(it - names.begin());
}

ValidationReport validate_bisimpset(const TruncBiSimpSet& x) {
    ValidationReport rep;
    for (int l = 0; l <= x.vtrunc; ++l) {
        auto r = validate_simpset(x.row(l));
        for (auto& issue : r.issues)
            rep.issues.push_back({"h-" + issue.axiom, "row " + std::to_string(l) + ": " +
                                                          issue.witness});
    }
    for (int n = 0; n <= x.htrunc; ++n) {
        auto r = validate_simpset(x.column(n));
        for (auto& issue : r.issues)
            rep.issues.push_back({"v-" + issue.axiom, "column " + std::to_string(n) + ": " +
                                                          issue.witness});
    }
    auto witness = [&](int n, int l, Idx e) {
        return "(" + std::to_string(n) + "," + std::to_string(l) + ") " + x.levels[n][l][e];
    };
    // Horizontal and vertical operators commute.
    for (int n = 0; n <= x.htrunc; ++n)
        for (int l = 0; l <= x.vtrunc; ++l)
            for (Idx e = 0; e < x.size(n, l); ++e) {
                if (n >= 1 && l >= 1)
                    for (int i = 0; i <= n; ++i)
                        for (int j = 0; j <= l; ++j)
                            if (x.vface[n - 1][l][j][x.hface[n][l][i][e]] !=
                                x.hface[n][l - 1][i][x.vface[n][l][j][e]])
                                rep.issues.push_back({"hv-face-face", witness(n, l, e)});
                if (n >= 1 && l < x.vtrunc)
                    for (int i = 0; i <= n; ++i)
                        for (int j = 0; j <= l; ++j)
                            if (x.vdegen[n - 1][l][j][x.hface[n][l][i][e]] !=
                                x.hface[n][l + 1][i][x.vdegen[n][l][j][e]])
                                rep.issues.push_back({"hv-face-degen", witness(n, l, e)});
                if (n < x.htrunc && l >= 1)
                    for (int i = 0; i <= n; ++i)
                        for (int j = 0; j <= l; ++j)
                            if (x.vface[n + 1][l][j][x.hdegen[n][l][i][e]] !=
                                x.hdegen[n][l - 1][i][x.vface[n][l][j][e]])
                                rep.issues.push_back({"hv-degen-face", witness(n, l, e)});
                if (n < x.htrunc && l < x.vtrunc)
                    for (int i = 0; i <= n; ++i)
                        for (int j = 0; j <= l; ++j)
                            if (x.vdegen[n + 1][l][j][x.hdegen[n][l][i][e]] !=
                                x.hdegen[n][l + 1][i][x.vdegen[n][l][j][e]])
                                rep.issues.push_back({"hv-degen-degen", witness(n, l, e)});
            }
    return rep;
}

// ---- embeddings -------------------------------------------------------------

BiSetPtr embed_vertical(const SimpSetPtr& s, int vtrunc) {
    const TruncSimpSet& S = *s;
    TruncBiSimpSet x;
    x.htrunc = S.truncation;
    x.vtrunc = vtrunc;
    const int N = x.htrunc;
    x.levels.assign(N + 1, {});
    x.hface.assign(N + 1, {});
    x.hdegen.assign(N + 1, {});
    x.vface.assign(N + 1, {});
    x.vdegen.assign(N + 1, {});
    for (int n = 0; n <= N; ++n) {
        x.levels[n].assign(vtrunc + 1, S.levels[n]);
        x.hface[n].assign(vtrunc + 1, n >= 1 ? S.face[n] : std::vector<std::vector<Idx>>{});
        x.hdegen[n].assign(vtrunc + 1, n < N ? S.degen[n] : std::vector<std::vector<Idx>>{});
        std::vector<Idx> id_table(S.levels[n].size());
        std::iota(id_table.begin(), id_table.end(), Idx{0});
        x.vface[n].resize(vtrunc + 1);
        x.vdegen[n].resize(vtrunc + 1);
        for (int l = 1; l <= vtrunc; ++l)
            x.vface[n][l].assign(l + 1, id_table);
        for (int l = 0; l < vtrunc; ++l)
            x.vdegen[n][l].assign(l + 1, id_table);
    }
    return std::make_shared<const TruncBiSimpSet>(std::move(x));
}

BiSetPtr embed_horizontal(const SimpSetPtr& s, int htrunc) {
    const TruncSimpSet& S = *s;
    TruncBiSimpSet x;
    x.htrunc = htrunc;
    x.vtrunc = S.truncation;
    const int L = x.vtrunc;
    x.levels.assign(htrunc + 1, {});
    x.hface.assign(htrunc + 1, {});
    x.hdegen.assign(htrunc + 1, {});
    x.vface.assign(htrunc + 1, {});
    x.vdegen.assign(htrunc + 1, {});
    for (int n = 0; n <= htrunc; ++n) {
        x.levels[n].assign(L + 1, {});
        x.vface[n].resize(L + 1);
        x.vdegen[n].resize(L + 1);
        x.hface[n].resize(L + 1);
        x.hdegen[n].resize(L + 1);
        for (int l = 0; l <= L; ++l) {
            x.levels[n][l] = S.levels[l];
            if (l >= 1) x.vface[n][l] = S.face[l];
            if (l < L) x.vdegen[n][l] = S.degen[l];
            std::vector<Idx> id_table(S.levels[l].size());
            std::iota(id_table.begin(), id_table.end(), Idx{0});
            if (n >= 1) x.hface[n][l].assign(n + 1, id_table);
            if (n < htrunc) x.hdegen[n][l].assign(n + 1, id_table);
        }
    }
    return std::make_shared<const TruncBiSimpSet>(std::move(x));
}

BiSetPtr bi_F(int n, int N, int L) { return embed_vertical(delta(n, N), L); }

BiSpine bi_spine(int n, int N, int L) {
    SubObject s = spine_set(n, N);
    return BiSpine{embed_vertical(s.object, L), embed_vertical(s.inclusion.cod, L)};
}

BiSetPtr e_one(int N, int L) { return embed_vertical(nerve(iso_category(1), N), L); }

// ---- helpers ---------------------------------------------------------------

namespace {

std::vector<Idx> pi0_or_discrete(const TruncSimpSet& v) {
    if (v.truncation >= 1) return pi0(v);
    std::vector<Idx> cls(v.levels[0].size());
    std::iota(cls.begin(), cls.end(), Idx{0});
    return cls;
}

/// Induced sub-simplicial set on the kept elements (assumed operator-closed).
TruncSimpSet sub_simpset(const TruncSimpSet& v, const std::vector<std::vector<bool>>& keep) {
    TruncSimpSet out;
    out.truncation = v.truncation;
    out.levels.resize(v.truncation + 1);
    std::vector<std::vector<Idx>> remap(v.truncation + 1);
    for (int l = 0; l <= v.truncation; ++l) {
        remap[l].assign(v.levels[l].size(), npos);
        for (Idx e = 0; e < v.levels[l].size(); ++e) {
            if (!keep[l][e]) continue;
            remap[l][e] = out.levels[l].size();
            out.levels[l].push_back(v.levels[l][e]);
        }
    }
    out.face.resize(v.truncation + 1);
    for (int l = 1; l <= v.truncation; ++l) {
        out.face[l].assign(l + 1, {});
        for (int j = 0; j <= l; ++j) {
            for (Idx e = 0; e < v.levels[l].size(); ++e) {
                if (!keep[l][e]) continue;
                Idx img = remap[l - 1][v.face[l][j][e]];
                if (img == npos)
                    throw std::logic_error("sub_simpset: kept set is not closed under faces");
                out.face[l][j].push_back(img);
            }
        }
    }
    out.degen.resize(std::max(v.truncation, 0));
    for (int l = 0; l < v.truncation; ++l) {
        out.degen[l].assign(l + 1, {});
        for (int j = 0; j <= l; ++j)
            for (Idx e = 0; e < v.levels[l].size(); ++e) {
                if (!keep[l][e]) continue;
                Idx img = remap[l + 1][v.degen[l][j][e]];
                if (img == npos)
                    throw std::logic_error(
                        "sub_simpset: kept set is not closed under degeneracies");
                out.degen[l][j].push_back(img);
            }
    }
    out.rebuild_index();
    return out;
}

/// Horizontal spine edge k (1-based) of an (n, l)-bisimplex.
Idx h_spine_edge(const TruncBiSimpSet& t, int n, int l, Idx e, int k) {
    Idx cur = e;
    int level = n;
    for (int v = n; v >= 0; --v) {
        if (v == k - 1 || v == k) continue;
        cur = t.hface[level][l][v][cur];
        --level;
    }
    return cur;
}

}  // namespace

// ---- Segal ------------------------------------------------------------------

SegalVerdict segal_space_check(const TruncBiSimpSet& t) {
    if (t.htrunc < 2)
        throw PreconditionError("segal_space_check: horizontal truncation must be >= 2");
    SegalVerdict verdict;
    for (int n = 2; n <= t.htrunc; ++n) {
        SegalSpaceLevel lev;
        lev.n = n;

        // The spine fiber product as a vertical simplicial set: tuples of
        // composable edges at each vertical level, componentwise operators.
        std::vector<std::vector<std::vector<Idx>>> tuples(t.vtrunc + 1);
        std::vector<std::unordered_map<std::string, Idx>> tuple_index(t.vtrunc + 1);
        auto key = [](const std::vector<Idx>& v) {
            std::string k;
            for (Idx e : v) k += std::to_string(e) + ",";
            return k;
        };
        for (int l = 0; l <= t.vtrunc; ++l) {
            std::vector<Idx> cur;
            auto recurse = [&](auto&& self) -> void {
                if (static_cast<int>(cur.size()) == n) {
                    tuple_index[l][key(cur)] = tuples[l].size();
                    tuples[l].push_back(cur);
                    return;
                }
                for (Idx e = 0; e < t.size(1, l); ++e) {
                    if (!cur.empty() &&
                        t.hface[1][l][0][cur.back()] != t.hface[1][l][1][e])
                        continue;
                    cur.push_back(e);
                    self(self);
                    cur.pop_back();
                }
            };
            recurse(recurse);
        }

        bool bijective = true;
        std::vector<std::vector<Idx>> spine_map(t.vtrunc + 1);
        for (int l = 0; l <= t.vtrunc; ++l) {
            std::vector<bool> hit(tuples[l].size(), false);
            bool injective = true;
            spine_map[l].resize(t.size(n, l));
            for (Idx e = 0; e < t.size(n, l); ++e) {
                std::vector<Idx> spine;
                for (int k = 1; k <= n; ++k) spine.push_back(h_spine_edge(t, n, l, e, k));
                Idx ti = tuple_index[l].at(key(spine));
                spine_map[l][e] = ti;
                if (hit[ti]) injective = false;
                hit[ti] = true;
            }
            bool surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
            lev.cards.emplace_back(t.size(n, l), tuples[l].size());
            if (!injective || !surjective) bijective = false;
        }
        lev.levelwise_bijective = bijective;

        // Weaker comparison: pi0 of the column against pi0 of the fiber
        // product, through the spine map.
        {
            TruncSimpSet col = t.column(n);
            TruncSimpSet fp;
            fp.truncation = t.vtrunc;
            fp.levels.resize(t.vtrunc + 1);
            for (int l = 0; l <= t.vtrunc; ++l)
                for (const auto& tup : tuples[l]) {
                    std::vector<std::string> parts;
                    for (Idx e : tup) parts.push_back(t.levels[1][l][e]);
                    fp.levels[l].push_back("(" + join(parts, ";") + ")");
                }
            fp.face.resize(t.vtrunc + 1);
            for (int l = 1; l <= t.vtrunc; ++l) {
                fp.face[l].assign(l + 1, std::vector<Idx>(tuples[l].size()));
                for (int j = 0; j <= l; ++j)
                    for (Idx e = 0; e < tuples[l].size(); ++e) {
                        std::vector<Idx> img;
                        for (Idx comp : tuples[l][e]) img.push_back(t.vface[1][l][j][comp]);
                        fp.face[l][j][e] = tuple_index[l - 1].at(key(img));
                    }
            }
            fp.degen.resize(std::max(t.vtrunc, 0));
            for (int l = 0; l < t.vtrunc; ++l) {
                fp.degen[l].assign(l + 1, std::vector<Idx>(tuples[l].size()));
                for (int j = 0; j <= l; ++j)
                    for (Idx e = 0; e < tuples[l].size(); ++e) {
                        std::vector<Idx> img;
                        for (Idx comp : tuples[l][e]) img.push_back(t.vdegen[1][l][j][comp]);
                        fp.degen[l][j][e] = tuple_index[l + 1].at(key(img));
                    }
            }

            auto col_cls = pi0_or_discrete(col);
            auto fp_cls = pi0_or_discrete(fp);
            std::unordered_map<Idx, Idx> image;  // col class -> fp class
            bool well_defined = true;
            for (Idx e = 0; e < col.levels[0].size(); ++e) {
                auto [it, fresh] = image.emplace(col_cls[e], fp_cls[spine_map[0][e]]);
                if (!fresh && it->second != fp_cls[spine_map[0][e]]) well_defined = false;
            }
            std::set<Idx> col_classes(col_cls.begin(), col_cls.end());
            std::set<Idx> fp_classes(fp_cls.begin(), fp_cls.end());
            std::set<Idx> image_classes;
            for (const auto& [from, to] : image) image_classes.insert(to);
            lev.pi0_bijective = well_defined && image.size() == col_classes.size() &&
                                image_classes.size() == image.size() &&
                                image_classes.size() == fp_classes.size();
        }
        verdict.per_n.push_back(std::move(lev));
    }
    return verdict;
}

// ---- category theory ----------------------------------------------------------

std::vector<std::string> objects_of(const TruncBiSimpSet& t) { return t.levels[0][0]; }

TruncSimpSet mapping_space(const TruncBiSimpSet& t, Idx x, Idx y) {
    if (x >= t.size(0, 0) || y >= t.size(0, 0))
        throw PreconditionError("mapping_space: unknown object");
    TruncSimpSet col = t.column(1);
    std::vector<std::vector<bool>> keep(t.vtrunc + 1);
    for (int l = 0; l <= t.vtrunc; ++l) {
        Idx cx = t.constant_at(0, x, l);
        Idx cy = t.constant_at(0, y, l);
        keep[l].assign(t.size(1, l), false);
        for (Idx e = 0; e < t.size(1, l); ++e)
            keep[l][e] = t.hface[1][l][1][e] == cx && t.hface[1][l][0][e] == cy;
    }
    return sub_simpset(col, keep);
}

namespace {

Idx edge_source(const TruncBiSimpSet& t, Idx e) { return t.hface[1][0][1][e]; }
Idx edge_target(const TruncBiSimpSet& t, Idx e) { return t.hface[1][0][0][e]; }

/// pi0 class lookup inside a mapping space, by simplex name.
Idx class_of_name(const TruncSimpSet& space, const std::vector<Idx>& classes,
                  const std::string& name) {
    return classes[space.index_of(0, name)];
}

}  // namespace

CompositionWitnesses composition_witnesses(const TruncBiSimpSet& t, Idx f, Idx g) {
    if (edge_target(t, f) != edge_source(t, g))
        throw PreconditionError("composition_witnesses: pair is not composable");
    CompositionWitnesses out;
    for (Idx sig = 0; sig < t.size(2, 0); ++sig) {
        if (h_spine_edge(t, 2, 0, sig, 1) != f || h_spine_edge(t, 2, 0, sig, 2) != g) continue;
        out.witnesses.push_back(t.levels[2][0][sig]);
        out.composites.push_back(t.levels[1][0][t.hface[2][0][1][sig]]);
    }
    if (out.witnesses.empty())
        throw PreconditionError("composition_witnesses: empty witness set (Segal violation)");

    Idx least = 0;
    for (Idx i = 1; i < out.witnesses.size(); ++i)
        if (out.witnesses[i] < out.witnesses[least]) least = i;
    out.chosen_witness = out.witnesses[least];
    out.chosen_composite = out.composites[least];

    TruncSimpSet space = mapping_space(t, edge_source(t, f), edge_target(t, g));
    auto classes = pi0_or_discrete(space);
    Idx cls = class_of_name(space, classes, out.composites.front());
    out.composites_pi0_equal = true;
    for (const auto& name : out.composites)
        if (class_of_name(space, classes, name) != cls) out.composites_pi0_equal = false;
    return out;
}

HoEquivVerdict is_hoequiv(const TruncBiSimpSet& t, Idx f) {
    HoEquivVerdict v;
    Idx x = edge_source(t, f);
    Idx y = edge_target(t, f);

    TruncSimpSet map_xx = mapping_space(t, x, x);
    TruncSimpSet map_yy = mapping_space(t, y, y);
    auto cls_xx = pi0_or_discrete(map_xx);
    auto cls_yy = pi0_or_discrete(map_yy);
    Idx id_x_class = class_of_name(map_xx, cls_xx, t.levels[1][0][t.hdegen[0][0][0][x]]);
    Idx id_y_class = class_of_name(map_yy, cls_yy, t.levels[1][0][t.hdegen[0][0][0][y]]);

    bool has_left = false, has_right = false;
    for (Idx e = 0; e < t.size(1, 0); ++e) {
        if (edge_source(t, e) != y || edge_target(t, e) != x) continue;
        // g with g after f ~ id_x
        auto wf = composition_witnesses(t, f, e);
        if (class_of_name(map_xx, cls_xx, wf.chosen_composite) == id_x_class) {
            has_left = true;
            v.inverse_witnesses.push_back("g:" + t.levels[1][0][e]);
        }
        // h with f after h ~ id_y
        auto wh = composition_witnesses(t, e, f);
        if (class_of_name(map_yy, cls_yy, wh.chosen_composite) == id_y_class) {
            has_right = true;
            v.inverse_witnesses.push_back("h:" + t.levels[1][0][e]);
        }
    }
    v.by_inverses = has_left && has_right;

    if (t.htrunc >= 3) {
        Idx id_x = t.hdegen[0][0][0][x];
        Idx id_y = t.hdegen[0][0][0][y];
        bool found = false;
        for (Idx H = 0; H < t.size(3, 0); ++H) {
            Idx d3 = t.hface[3][0][3][H];
            Idx d0 = t.hface[3][0][0][H];
            if (t.hface[2][0][1][d3] == id_y && t.hface[2][0][0][d3] == f &&
                t.hface[2][0][1][d0] == id_x) {
                found = true;
                v.tetra_witnesses.push_back(t.levels[3][0][H]);
            }
        }
        v.by_tetra_lift = found;
    }
    return v;
}

HoEquivData hoequiv_space(const TruncBiSimpSet& t) {
    HoEquivData data;
    TruncSimpSet col = t.column(1);
    auto classes = pi0_or_discrete(col);

    std::set<Idx> marked;
    for (Idx e = 0; e < t.size(1, 0); ++e)
        if (is_hoequiv(t, e).by_inverses) marked.insert(classes[e]);

    std::vector<std::vector<bool>> keep(t.vtrunc + 1);
    data.member_of.resize(t.vtrunc + 1);
    for (int l = 0; l <= t.vtrunc; ++l) {
        keep[l].assign(col.levels[l].size(), false);
        for (Idx e = 0; e < col.levels[l].size(); ++e) {
            Idx v0 = col.vertex(l, e, 0);
            if (marked.count(classes[v0])) {
                keep[l][e] = true;
                data.member_of[l].push_back(e);
            }
        }
    }
    data.hoequiv = sub_simpset(col, keep);

    for (Idx x = 0; x < t.size(0, 0); ++x)
        for (Idx y = 0; y < t.size(0, 0); ++y) {
            TruncSimpSet m = mapping_space(t, x, y);
            std::vector<std::vector<bool>> mk(t.vtrunc + 1);
            for (int l = 0; l <= t.vtrunc; ++l) {
                mk[l].assign(m.levels[l].size(), false);
                for (Idx e = 0; e < m.levels[l].size(); ++e)
                    mk[l][e] = data.hoequiv.index[l].count(m.levels[l][e]) > 0;
            }
            data.per_pair.emplace(std::make_pair(x, y), sub_simpset(m, mk));
        }
    return data;
}

TruncSimpSet hoeqchoice_space(const TruncBiSimpSet& t) {
    if (t.htrunc < 3)
        throw PreconditionError("hoeqchoice_space: horizontal truncation must be >= 3");
    TruncSimpSet col3 = t.column(3);

    std::vector<std::vector<bool>> keep(t.vtrunc + 1);
    for (int l = 0; l <= t.vtrunc; ++l) {
        std::vector<bool> degenerate_edge(t.size(1, l), false);
        for (Idx v = 0; v < t.size(0, l); ++v)
            degenerate_edge[t.hdegen[0][l][0][v]] = true;
        keep[l].assign(t.size(3, l), false);
        for (Idx H = 0; H < t.size(3, l); ++H) {
            Idx d3 = t.hface[3][l][3][H];
            Idx d0 = t.hface[3][l][0][H];
            keep[l][H] = degenerate_edge[t.hface[2][l][1][d3]] &&
                         degenerate_edge[t.hface[2][l][1][d0]];
        }
    }
    TruncSimpSet choice = sub_simpset(col3, keep);

    // The forgetful map (middle edge) lands in hoequiv and covers its pi0.
    HoEquivData hd = hoequiv_space(t);
    TruncSimpSet col1 = t.column(1);
    auto classes = pi0_or_discrete(col1);
    std::set<Idx> covered;
    for (Idx H = 0; H < t.size(3, 0); ++H) {
        if (!keep[0][H]) continue;
        Idx mid = t.hface[2][0][0][t.hface[3][0][3][H]];
        if (!hd.hoequiv.index[0].count(t.levels[1][0][mid]))
            throw std::logic_error("hoeqchoice_space: middle edge escapes hoequiv");
        covered.insert(classes[mid]);
    }
    std::set<Idx> needed;
    for (Idx e : hd.member_of[0]) needed.insert(classes[e]);
    if (covered != needed)
        throw std::logic_error("hoeqchoice_space: forgetful map is not pi0-surjective");
    return choice;
}

// ---- regimes and completeness ---------------------------------------------------

std::string to_string(VerticalRegime r) {
    switch (r) {
        case VerticalRegime::Discrete: return "discrete";
        case VerticalRegime::GroupoidNerve: return "groupoid-nerve";
        default: return "undecidable";
    }
}

VerticalRegime column_regime(const TruncSimpSet& v) {
    bool discrete = true;
    auto bijective = [](const std::vector<Idx>& table, std::size_t cod) {
        std::vector<bool> hit(cod, false);
        for (Idx e : table) {
            if (hit[e]) return false;
            hit[e] = true;
        }
        return table.size() == cod;
    };
    for (int l = 1; l <= v.truncation && discrete; ++l)
        for (int j = 0; j <= l && discrete; ++j)
            if (!bijective(v.face[l][j], v.levels[l - 1].size())) discrete = false;
    for (int l = 0; l < v.truncation && discrete; ++l)
        for (int j = 0; j <= l && discrete; ++j)
            if (!bijective(v.degen[l][j], v.levels[l + 1].size())) discrete = false;
    if (discrete) return VerticalRegime::Discrete;
    if (extract_groupoid(v)) return VerticalRegime::GroupoidNerve;
    return VerticalRegime::Undecidable;
}

std::optional<CatPtr> extract_groupoid(const TruncSimpSet& v) {
    if (v.truncation < 2) return std::nullopt;
    SegalReport seg = segal_check(v);
    if (!seg.pass()) return std::nullopt;

    FinCategory c;
    c.objects = v.levels[0];
    c.morphisms = v.levels[1];
    c.src.resize(v.levels[1].size());
    c.tgt.resize(v.levels[1].size());
    for (Idx e = 0; e < v.levels[1].size(); ++e) {
        c.src[e] = v.face[1][1][e];
        c.tgt[e] = v.face[1][0][e];
    }
    c.ident.resize(v.levels[0].size());
    for (Idx o = 0; o < v.levels[0].size(); ++o) c.ident[o] = v.degen[0][0][o];
    std::unordered_map<std::string, Idx> by_spine;
    auto key = [](Idx a, Idx b) { return std::to_string(a) + "," + std::to_string(b); };
    for (Idx s = 0; s < v.levels[2].size(); ++s)
        by_spine[key(v.spine_edge(2, s, 1), v.spine_edge(2, s, 2))] = s;
    for (Idx g = 0; g < c.morphisms.size(); ++g)
        for (Idx f = 0; f < c.morphisms.size(); ++f) {
            if (c.tgt[f] != c.src[g]) continue;
            auto it = by_spine.find(key(f, g));
            if (it == by_spine.end()) return std::nullopt;
            c.comp_table[c.comp_key(g, f)] = v.face[2][1][it->second];
        }
    c.rebuild_index();
    auto out = std::make_shared<const FinCategory>(std::move(c));
    if (!validate_category(*out).ok()) return std::nullopt;
    for (Idx m = 0; m < out->morphisms.size(); ++m)
        if (!out->is_invertible(m)) return std::nullopt;
    return out;
}

bool groupoid_equivalence_along(const TruncSimpSet& a, const TruncSimpSet& b,
                                const std::vector<std::vector<Idx>>& level_map,
                                std::string* detail) {
    auto ga = extract_groupoid(a);
    auto gb = extract_groupoid(b);
    if (!ga || !gb) {
        if (detail) *detail = "operand is not a groupoid nerve";
        return false;
    }
    auto cls_a = pi0(a);
    auto cls_b = pi0(b);
    std::unordered_map<Idx, Idx> image;
    for (Idx e = 0; e < a.levels[0].size(); ++e) {
        auto [it, fresh] = image.emplace(cls_a[e], cls_b[level_map[0][e]]);
        if (!fresh && it->second != cls_b[level_map[0][e]]) {
            if (detail) *detail = "pi0 image ill-defined";
            return false;
        }
    }
    std::set<Idx> b_classes(cls_b.begin(), cls_b.end());
    std::set<Idx> hit;
    for (const auto& [from, to] : image) hit.insert(to);
    if (hit.size() != image.size() || hit.size() != b_classes.size()) {
        if (detail)
            *detail = "pi0 not bijective: " + std::to_string(image.size()) + " vs " +
                      std::to_string(b_classes.size()) + " components";
        return false;
    }
    // Automorphism groups on matched components, through the induced map.
    std::set<Idx> seen;
    for (Idx e = 0; e < a.levels[0].size(); ++e) {
        if (!seen.insert(cls_a[e]).second) continue;
        const FinCategory& A = **ga;
        const FinCategory& B = **gb;
        auto aut_a = A.hom(e, e);
        auto aut_b = B.hom(level_map[0][e], level_map[0][e]);
        if (aut_a.size() != aut_b.size()) {
            if (detail)
                *detail = "automorphism groups differ at " + a.levels[0][e] + ": " +
                          std::to_string(aut_a.size()) + " vs " + std::to_string(aut_b.size());
            return false;
        }
        std::set<Idx> img;
        for (Idx u : aut_a) img.insert(level_map[1][u]);
        for (Idx u : aut_b)
            if (!img.count(u)) {
                if (detail) *detail = "automorphism map not surjective at " + a.levels[0][e];
                return false;
            }
        if (img.size() != aut_a.size()) {
            if (detail) *detail = "automorphism map not injective at " + a.levels[0][e];
            return false;
        }
    }
    if (detail) *detail = "groupoid equivalence verified";
    return true;
}

CompletenessReport completeness_check(const TruncBiSimpSet& w) {
    CompletenessReport rep;
    HoEquivData hd = hoequiv_space(w);
    TruncSimpSet col0 = w.column(0);
    rep.objects_card = w.size(0, 0);
    rep.hoequiv_card = hd.member_of[0].size();

    // s_0 as a map of vertical simplicial sets X_0 -> hoequiv.
    std::vector<std::vector<Idx>> s0(w.vtrunc + 1);
    bool lands_inside = true;
    for (int l = 0; l <= w.vtrunc; ++l) {
        s0[l].resize(w.size(0, l));
        for (Idx e = 0; e < w.size(0, l); ++e) {
            const std::string& name = w.levels[1][l][w.hdegen[0][l][0][e]];
            auto it = hd.hoequiv.index[l].find(name);
            if (it == hd.hoequiv.index[l].end()) {
                lands_inside = false;
                break;
            }
            s0[l][e] = it->second;
        }
    }
    if (!lands_inside)
        throw std::logic_error("completeness_check: a degenerate edge is not an equivalence");

    VerticalRegime ra = column_regime(col0);
    VerticalRegime rb = column_regime(hd.hoequiv);
    if (ra == VerticalRegime::Discrete && rb == VerticalRegime::Discrete) {
        rep.strategy = VerticalRegime::Discrete;
        rep.verdict = rep.objects_card == rep.hoequiv_card;
        rep.detail = "s_0 injective; cardinalities " + std::to_string(rep.objects_card) +
                     " vs " + std::to_string(rep.hoequiv_card);
        return rep;
    }
    if (ra != VerticalRegime::Undecidable && rb != VerticalRegime::Undecidable &&
        w.vtrunc >= 2) {
        rep.strategy = VerticalRegime::GroupoidNerve;
        std::string detail;
        rep.verdict = groupoid_equivalence_along(col0, hd.hoequiv, s0, &detail);
        rep.detail = detail;
        return rep;
    }
    rep.strategy = VerticalRegime::Undecidable;
    rep.detail = "verticals are neither discrete nor recognizable groupoid nerves";
    return rep;
}

bool is_segal_groupoid(const TruncBiSimpSet& t) {
    for (Idx e = 0; e < t.size(1, 0); ++e)
        if (!is_hoequiv(t, e).by_inverses) return false;
    return true;
}

bool homotopically_constant(const TruncBiSimpSet& t) {
    TruncSimpSet col0 = t.column(0);
    VerticalRegime r0 = column_regime(col0);
    for (int n = 1; n <= t.htrunc; ++n) {
        TruncSimpSet coln = t.column(n);
        std::vector<std::vector<Idx>> lift(t.vtrunc + 1);
        for (int l = 0; l <= t.vtrunc; ++l) {
            lift[l].resize(t.size(0, l));
            for (Idx e = 0; e < t.size(0, l); ++e) lift[l][e] = t.h_constant_at(l, e, n);
        }
        VerticalRegime rn = column_regime(coln);
        if (r0 == VerticalRegime::Discrete && rn == VerticalRegime::Discrete) {
            for (int l = 0; l <= t.vtrunc; ++l) {
                if (t.size(0, l) != t.size(n, l)) return false;
                std::vector<bool> hit(t.size(n, l), false);
                for (Idx img : lift[l]) {
                    if (hit[img]) return false;
                    hit[img] = true;
                }
            }
        } else if (r0 != VerticalRegime::Undecidable && rn != VerticalRegime::Undecidable &&
                   t.vtrunc >= 2) {
            if (!groupoid_equivalence_along(col0, coln, lift, nullptr)) return false;
        } else {
            throw PreconditionError("homotopically_constant: undecidable at desk scale");
        }
    }
    return true;
}

// ---- classification diagrams ------------------------------------------------------

BiSetPtr classification_diagram(const RelativeCategory& rc, int N, int L,
                                std::uint64_t max_enum) {
    auto rep = validate_relative_category(rc);
    if (!rep.ok())
        throw PreconditionError("classification_diagram: invalid relative category (" +
                                rep.issues.front().axiom + ")");

    std::vector<CatPtr> posets;
    std::vector<FunctorCategory> fc;
    std::vector<NerveData> nd;
    for (int n = 0; n <= N; ++n) {
        posets.push_back(poset_category(n));
        fc.push_back(we_functor_category(rc, posets[n], max_enum));
        nd.push_back(nerve_with_chains(fc[n].cat, L));
    }

    TruncBiSimpSet x;
    x.htrunc = N;
    x.vtrunc = L;
    x.levels.assign(N + 1, {});
    x.hface.assign(N + 1, {});
    x.hdegen.assign(N + 1, {});
    x.vface.assign(N + 1, {});
    x.vdegen.assign(N + 1, {});
    for (int n = 0; n <= N; ++n) {
        x.levels[n].resize(L + 1);
        x.vface[n].resize(L + 1);
        x.vdegen[n].resize(L + 1);
        x.hface[n].resize(L + 1);
        x.hdegen[n].resize(L + 1);
        for (int l = 0; l <= L; ++l) {
            x.levels[n][l] = nd[n].set->levels[l];
            if (l >= 1) x.vface[n][l] = nd[n].set->face[l];
            if (l < L) x.vdegen[n][l] = nd[n].set->degen[l];
        }
    }

    // Reindexing along a monotone map phi: [m] -> [n], applied chainwise.
    auto reindex_table = [&](int n_from, int n_to, const std::vector<int>& phi) {
        const Functor reindex =
            functor_from_monotone(posets[n_to], posets[n_from], phi);
        std::vector<std::vector<Idx>> per_level(L + 1);
        for (int l = 0; l <= L; ++l) {
            per_level[l].resize(nd[n_from].chains[l].size());
            for (Idx e = 0; e < nd[n_from].chains[l].size(); ++e) {
                const auto& chain = nd[n_from].chains[l][e];
                if (l == 0) {
                    Functor f = compose_functors(fc[n_from].functor_of_object[chain[0]],
                                                 reindex);
                    Idx ob = fc[n_to].object_of_functor(f);
                    per_level[0][e] = nd[n_to].set->index_of(0, fc[n_to].cat->objects[ob]);
                } else {
                    std::vector<std::string> names;
                    for (Idx m : chain) {
                        const NatTrans& t = fc[n_from].trans_of_morphism[m];
                        NatTrans rt{compose_functors(t.source, reindex),
                                    compose_functors(t.target, reindex), {}};
                        for (Idx v : reindex.ob_map) rt.components.push_back(t.components[v]);
                        Idx mm = fc[n_to].morphism_of_trans(rt);
                        names.push_back(fc[n_to].cat->morphisms[mm]);
                    }
                    per_level[l][e] = nd[n_to].set->index_of(l, join(names, "."));
                }
            }
        }
        return per_level;
    };

    for (int n = 1; n <= N; ++n) {
        std::vector<std::vector<std::vector<Idx>>> tables(L + 1);
        for (int i = 0; i <= n; ++i) {
            std::vector<int> phi;  // coface d^i: [n-1] -> [n]
            for (int v = 0; v <= n; ++v)
                if (v != i) phi.push_back(v);
            auto per_level = reindex_table(n, n - 1, phi);
            for (int l = 0; l <= L; ++l) {
                if (tables[l].empty()) tables[l].resize(n + 1);
                tables[l][i] = per_level[l];
            }
        }
        for (int l = 0; l <= L; ++l) x.hface[n][l] = tables[l];
    }
    for (int n = 0; n < N; ++n) {
        std::vector<std::vector<std::vector<Idx>>> tables(L + 1);
        for (int i = 0; i <= n; ++i) {
            std::vector<int> phi;  // codegeneracy s^i: [n+1] -> [n]
            for (int v = 0; v <= n; ++v) {
                phi.push_back(v);
                if (v == i) phi.push_back(v);
            }
            auto per_level = reindex_table(n, n + 1, phi);
            for (int l = 0; l <= L; ++l) {
                if (tables[l].empty()) tables[l].resize(n + 1);
                tables[l][i] = per_level[l];
            }
        }
        for (int l = 0; l <= L; ++l) x.hdegen[n][l] = tables[l];
    }
    return std::make_shared<const TruncBiSimpSet>(std::move(x));
}

BiSetPtr classifying_diagram(const CatPtr& c, int N, int L, std::uint64_t max_enum) {
    RelativeCategory rc{c, {}};
    rc.weak.resize(c->morphisms.size());
    for (Idx m = 0; m < c->morphisms.size(); ++m) rc.weak[m] = c->is_invertible(m);
    return classification_diagram(rc, N, L, max_enum);
}

// ---- homotopy category ---------------------------------------------------------

CatPtr homotopy_category(const TruncBiSimpSet& t) {
    const std::size_t nobj = t.size(0, 0);
    CategoryBuilder builder;
    for (Idx x = 0; x < nobj; ++x) builder.add_object(t.levels[0][0][x]);

    struct HomData {
        TruncSimpSet space;
        std::vector<Idx> classes;           // pi0 class per level-0 element
        std::vector<Idx> class_reps;        // deterministic representative per class
        std::vector<Idx> morphism_of_class; // builder morphism per class
    };
    std::vector<std::vector<HomData>> hom(nobj, std::vector<HomData>(nobj));

    for (Idx x = 0; x < nobj; ++x)
        for (Idx y = 0; y < nobj; ++y) {
            HomData h;
            h.space = mapping_space(t, x, y);
            h.classes = pi0_or_discrete(h.space);
            std::map<Idx, Idx> rep;  // class -> least-name member
            for (Idx e = 0; e < h.space.levels[0].size(); ++e) {
                auto it = rep.find(h.classes[e]);
                if (it == rep.end() ||
                    h.space.levels[0][e] < h.space.levels[0][it->second])
                    rep[h.classes[e]] = e;
            }
            for (const auto& [cls, member] : rep) {
                h.class_reps.push_back(member);
                std::string name = "[" + h.space.levels[0][member] + "]";
                Idx id_edge = t.hdegen[0][0][0][x];
                bool is_id = x == y && h.classes[h.space.index_of(
                                           0, t.levels[1][0][id_edge])] == cls;
                Idx m = is_id ? builder.peek().ident[x]
                              : builder.add_morphism(name, x, y);
                h.morphism_of_class.push_back(m);
            }
            hom[x][y] = std::move(h);
        }

    auto class_slot = [&](const HomData& h, const std::string& edge_name) {
        Idx cls = h.classes[h.space.index_of(0, edge_name)];
        for (Idx k = 0; k < h.class_reps.size(); ++k)
            if (h.classes[h.class_reps[k]] == cls) return k;
        throw std::logic_error("homotopy_category: missing pi0 class");
    };

    for (Idx x = 0; x < nobj; ++x)
        for (Idx y = 0; y < nobj; ++y)
            for (Idx z = 0; z < nobj; ++z) {
                const HomData& hf = hom[x][y];
                const HomData& hg = hom[y][z];
                const HomData& hc = hom[x][z];
                for (Idx kf = 0; kf < hf.class_reps.size(); ++kf)
                    for (Idx kg = 0; kg < hg.class_reps.size(); ++kg) {
                        Idx f = t.index_of(1, 0, hf.space.levels[0][hf.class_reps[kf]]);
                        Idx g = t.index_of(1, 0, hg.space.levels[0][hg.class_reps[kg]]);
                        auto w = composition_witnesses(t, f, g);
                        if (!w.composites_pi0_equal)
                            throw std::logic_error(
                                "homotopy_category: witness independence violated");
                        Idx slot = class_slot(hc, w.chosen_composite);

                        // Representative independence across the two classes.
                        for (Idx e = 0; e < hf.space.levels[0].size(); ++e)
                            for (Idx u = 0; u < hg.space.levels[0].size(); ++u) {
                                if (hf.classes[e] != hf.classes[hf.class_reps[kf]] ||
                                    hg.classes[u] != hg.classes[hg.class_reps[kg]])
                                    continue;
                                auto w2 = composition_witnesses(
                                    t, t.index_of(1, 0, hf.space.levels[0][e]),
                                    t.index_of(1, 0, hg.space.levels[0][u]));
                                if (class_slot(hc, w2.chosen_composite) != slot)
                                    throw std::logic_error(
                                        "homotopy_category: witness independence violated");
                            }
                        builder.set_composite(hg.morphism_of_class[kg],
                                              hf.morphism_of_class[kf],
                                              hc.morphism_of_class[slot]);
                    }
            }

    CatPtr out = builder.finish();
    auto rep = validate_category(*out);
    if (!rep.ok())
        throw std::logic_error("homotopy_category: output fails validation (" +
                               rep.issues.front().axiom + " at " +
                               rep.issues.front().witness + ")");
    return out;
}

}  // namespace sscat
