#include "sscat/simpset.hpp"

#include <algorithm>
#include <sstream>

namespace sscat {

Idx TruncSimpSet::index_of(int n, const std::string& name) const {
    auto it = index[n].find(name);
    if (it == index[n].end())
        throw PreconditionError("unknown simplex at level " + std::to_string(n) + ": " + name);
    return it->second;
}

Idx TruncSimpSet::face_on_subset(int n, Idx x, const std::vector<int>& keep) const {
    // Dropping vertices from the highest down keeps every remaining vertex at
    // its original index, so each drop is a single d_v.
    Idx cur = x;
    int level = n;
    for (int v = n; v >= 0; --v) {
        if (std::find(keep.begin(), keep.end(), v) != keep.end()) continue;
        cur = face[level][v][cur];
        --level;
    }
    return cur;
}

Idx TruncSimpSet::spine_edge(int n, Idx x, int k) const {
    return face_on_subset(n, x, {k - 1, k});
}

Idx TruncSimpSet::vertex(int n, Idx x, int j) const { return face_on_subset(n, x, {j}); }

bool TruncSimpSet::is_degenerate(int n, Idx x) const {
    if (n == 0) return false;
    for (int i = 0; i < n; ++i)
        for (Idx w = 0; w < levels[n - 1].size(); ++w)
            if (degen[n - 1][i][w] == x) return true;
    return false;
}

void TruncSimpSet::rebuild_index() {
    index.assign(levels.size(), {});
    for (std::size_t n = 0; n < levels.size(); ++n)
        for (Idx i = 0; i < levels[n].size(); ++i) {
            auto [it, fresh] = index[n].emplace(levels[n][i], i);
            if (!fresh)
                throw PreconditionError("duplicate simplex name at level " + std::to_string(n) +
                                        ": " + levels[n][i]);
        }
}

// ---- validation ------------------------------------------------------------

ValidationReport validate_simpset(const TruncSimpSet& x) {
    ValidationReport rep;
    auto issue = [&](const std::string& axiom, const std::string& witness) {
        rep.issues.push_back({axiom, witness});
    };
    const int N = x.truncation;
    if (static_cast<int>(x.levels.size()) != N + 1 ||
        static_cast<int>(x.face.size()) != N + 1 ||
        static_cast<int>(x.degen.size()) < N) {
        issue("structure", "level/table shape does not match truncation");
        return rep;
    }
    for (int n = 1; n <= N; ++n) {
        if (static_cast<int>(x.face[n].size()) != n + 1) {
            issue("structure", "face tables at level " + std::to_string(n) + " not total");
            return rep;
        }
        for (int i = 0; i <= n; ++i) {
            if (x.face[n][i].size() != x.levels[n].size()) {
                issue("structure", "face d_" + std::to_string(i) + " not total at level " +
                                       std::to_string(n));
                return rep;
            }
            for (Idx v : x.face[n][i])
                if (v >= x.levels[n - 1].size()) {
                    issue("structure", "face image out of range at level " + std::to_string(n));
                    return rep;
                }
        }
    }
    for (int n = 0; n < N; ++n) {
        if (static_cast<int>(x.degen[n].size()) != n + 1) {
            issue("structure", "degeneracy tables at level " + std::to_string(n) + " not total");
            return rep;
        }
        for (int i = 0; i <= n; ++i) {
            if (x.degen[n][i].size() != x.levels[n].size()) {
                issue("structure", "degeneracy s_" + std::to_string(i) + " not total at level " +
                                       std::to_string(n));
                return rep;
            }
            for (Idx v : x.degen[n][i])
                if (v >= x.levels[n + 1].size()) {
                    issue("structure",
                          "degeneracy image out of range at level " + std::to_string(n));
                    return rep;
                }
        }
    }

    auto name = [&](int n, Idx e) { return x.levels[n][e]; };
    // d_i d_j = d_{j-1} d_i for i < j
    for (int n = 2; n <= N; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (Idx e = 0; e < x.levels[n].size(); ++e)
                    if (x.face[n - 1][i][x.face[n][j][e]] !=
                        x.face[n - 1][j - 1][x.face[n][i][e]])
                        issue("face-face", "d" + std::to_string(i) + " d" + std::to_string(j) +
                                               " at " + name(n, e));
    // face/degeneracy relations out of level n (s_j : X_n -> X_{n+1})
    for (int n = 0; n < N; ++n)
        for (int j = 0; j <= n; ++j)
            for (Idx e = 0; e < x.levels[n].size(); ++e) {
                Idx se = x.degen[n][j][e];
                for (int i = 0; i <= n + 1; ++i) {
                    Idx lhs = x.face[n + 1][i][se];
                    if (i == j || i == j + 1) {
                        if (lhs != e)
                            issue("face-degen", "d" + std::to_string(i) + " s" +
                                                    std::to_string(j) + " at " + name(n, e));
                    } else if (i < j) {
                        if (n >= 1 && lhs != x.degen[n - 1][j - 1][x.face[n][i][e]])
                            issue("face-degen", "d" + std::to_string(i) + " s" +
                                                    std::to_string(j) + " at " + name(n, e));
                    } else {  // i > j + 1
                        if (n >= 1 && lhs != x.degen[n - 1][j][x.face[n][i - 1][e]])
                            issue("face-degen", "d" + std::to_string(i) + " s" +
                                                    std::to_string(j) + " at " + name(n, e));
                    }
                }
            }
    // s_i s_j = s_{j+1} s_i for i <= j
    for (int n = 0; n + 2 <= N; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                for (Idx e = 0; e < x.levels[n].size(); ++e)
                    if (x.degen[n + 1][i][x.degen[n][j][e]] !=
                        x.degen[n + 1][j + 1][x.degen[n][i][e]])
                        issue("degen-degen", "s" + std::to_string(i) + " s" + std::to_string(j) +
                                                 " at " + name(n, e));
    return rep;
}

bool simp_map_commutes(const SimpMap& f) {
    const TruncSimpSet& X = *f.dom;
    const TruncSimpSet& Y = *f.cod;
    if (X.truncation != Y.truncation) return false;
    if (static_cast<int>(f.level_map.size()) != X.truncation + 1) return false;
    for (int n = 0; n <= X.truncation; ++n) {
        if (f.level_map[n].size() != X.levels[n].size()) return false;
        for (Idx v : f.level_map[n])
            if (v >= Y.levels[n].size()) return false;
    }
    for (int n = 1; n <= X.truncation; ++n)
        for (int i = 0; i <= n; ++i)
            for (Idx e = 0; e < X.levels[n].size(); ++e)
                if (f.level_map[n - 1][X.face[n][i][e]] != Y.face[n][i][f.level_map[n][e]])
                    return false;
    for (int n = 0; n < X.truncation; ++n)
        for (int i = 0; i <= n; ++i)
            for (Idx e = 0; e < X.levels[n].size(); ++e)
                if (f.level_map[n + 1][X.degen[n][i][e]] != Y.degen[n][i][f.level_map[n][e]])
                    return false;
    return true;
}

SimpMap compose_maps(const SimpMap& g, const SimpMap& f) {
    for (std::size_t n = 0; n < f.level_map.size(); ++n)
        if (f.cod->levels[n].size() != g.dom->levels[n].size())
            throw PreconditionError("compose_maps: middle objects do not match");
    SimpMap out{f.dom, g.cod, {}};
    out.level_map.resize(f.level_map.size());
    for (std::size_t n = 0; n < f.level_map.size(); ++n) {
        out.level_map[n].reserve(f.level_map[n].size());
        for (Idx v : f.level_map[n]) out.level_map[n].push_back(g.level_map[n][v]);
    }
    return out;
}

SimpMap identity_map(const SimpSetPtr& x) {
    SimpMap out{x, x, {}};
    out.level_map.resize(x->levels.size());
    for (std::size_t n = 0; n < x->levels.size(); ++n) {
        out.level_map[n].resize(x->levels[n].size());
        std::iota(out.level_map[n].begin(), out.level_map[n].end(), Idx{0});
    }
    return out;
}

bool maps_equal(const SimpMap& a, const SimpMap& b) { return a.level_map == b.level_map; }

// ---- generators -----------------------------------------------------------

namespace {

std::string vertex_word_name(const std::vector<int>& word, int top_vertex) {
    std::ostringstream os;
    bool wide = top_vertex > 9;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (wide && i) os << "-";
        os << word[i];
    }
    return os.str();
}

std::vector<std::vector<std::vector<int>>> monotone_words(int n, int N) {
    std::vector<std::vector<std::vector<int>>> words(N + 1);
    for (int m = 0; m <= N; ++m) {
        std::vector<int> w(m + 1, 0);
        while (true) {
            words[m].push_back(w);
            int k = m;
            while (k >= 0 && w[k] == n) --k;
            if (k < 0) break;
            ++w[k];
            for (int j = k + 1; j <= m; ++j) w[j] = w[k];
        }
    }
    return words;
}

/// Builds a delta-like object from per-level vertex words (each list sorted
/// lexicographically); the simplicial operators drop/repeat vertices.
SimpSetPtr from_vertex_words(int n, int N,
                             const std::vector<std::vector<std::vector<int>>>& words) {
    TruncSimpSet x;
    x.truncation = N;
    x.levels.resize(N + 1);
    for (int m = 0; m <= N; ++m)
        for (const auto& w : words[m]) x.levels[m].push_back(vertex_word_name(w, n));
    x.rebuild_index();

    x.face.resize(N + 1);
    for (int m = 1; m <= N; ++m) {
        x.face[m].assign(m + 1, std::vector<Idx>(words[m].size()));
        for (int i = 0; i <= m; ++i)
            for (Idx e = 0; e < words[m].size(); ++e) {
                std::vector<int> w = words[m][e];
                w.erase(w.begin() + i);
                x.face[m][i][e] = x.index_of(m - 1, vertex_word_name(w, n));
            }
    }
    x.degen.resize(std::max(N, 0));
    for (int m = 0; m < N; ++m) {
        x.degen[m].assign(m + 1, std::vector<Idx>(words[m].size()));
        for (int i = 0; i <= m; ++i)
            for (Idx e = 0; e < words[m].size(); ++e) {
                std::vector<int> w = words[m][e];
                w.insert(w.begin() + i, w[i]);
                x.degen[m][i][e] = x.index_of(m + 1, vertex_word_name(w, n));
            }
    }
    return std::make_shared<const TruncSimpSet>(std::move(x));
}

SubObject filtered_delta(int n, int N, const std::function<bool(const std::vector<int>&)>& keep) {
    auto all = monotone_words(n, N);
    std::vector<std::vector<std::vector<int>>> sub(N + 1);
    for (int m = 0; m <= N; ++m)
        for (const auto& w : all[m])
            if (keep(w)) sub[m].push_back(w);
    SubObject out;
    out.object = from_vertex_words(n, N, sub);
    SimpSetPtr ambient = from_vertex_words(n, N, all);
    SimpMap incl{out.object, ambient, {}};
    incl.level_map.resize(N + 1);
    for (int m = 0; m <= N; ++m)
        for (const auto& name : out.object->levels[m])
            incl.level_map[m].push_back(ambient->index_of(m, name));
    out.inclusion = std::move(incl);
    return out;
}

std::vector<bool> word_image(const std::vector<int>& w, int n) {
    std::vector<bool> hit(n + 1, false);
    for (int v : w) hit[v] = true;
    return hit;
}

}  // namespace

SimpSetPtr delta(int n, int N) {
    if (n < 0 || N < 0) throw PreconditionError("delta: n and N must be >= 0");
    return from_vertex_words(n, N, monotone_words(n, N));
}

SubObject boundary(int n, int N) {
    return filtered_delta(n, N, [n](const std::vector<int>& w) {
        auto hit = word_image(w, n);
        return std::any_of(hit.begin(), hit.end(), [](bool b) { return !b; });
    });
}

SubObject horn(int n, int i, int N) {
    if (i < 0 || i > n) throw PreconditionError("horn: index out of range");
    return filtered_delta(n, N, [n, i](const std::vector<int>& w) {
        auto hit = word_image(w, n);
        int missing = 0;
        for (bool b : hit)
            if (!b) ++missing;
        if (missing == 0) return false;        // surjective
        if (hit[i]) return true;               // i present, any non-surjective map
        return missing >= 2;                   // i missing forces a second gap
    });
}

SubObject spine_set(int n, int N) {
    if (n < 1) throw PreconditionError("spine: n must be >= 1");
    return filtered_delta(n, N, [](const std::vector<int>& w) {
        return w.back() - w.front() <= 1;  // image inside some {j, j+1}
    });
}

// ---- nerve -----------------------------------------------------------------

namespace {

std::string chain_key(const std::vector<Idx>& chain) {
    std::ostringstream os;
    for (Idx m : chain) os << m << ",";
    return os.str();
}

}  // namespace

NerveData nerve_with_chains(const CatPtr& c, int N) {
    const FinCategory& C = *c;
    NerveData out;
    out.chains.resize(N + 1);
    TruncSimpSet x;
    x.truncation = N;
    x.levels.resize(N + 1);

    std::vector<std::unordered_map<std::string, Idx>> chain_index(N + 1);
    for (Idx o = 0; o < C.objects.size(); ++o) {
        out.chains[0].push_back({o});
        chain_index[0][chain_key({o})] = x.levels[0].size();
        x.levels[0].push_back(C.objects[o]);
    }
    for (int m = 1; m <= N; ++m) {
        for (const auto& prev : out.chains[m - 1]) {
            for (Idx f = 0; f < C.morphisms.size(); ++f) {
                if (m == 1) {
                    out.chains[1].push_back({f});
                } else {
                    if (C.tgt[prev.back()] != C.src[f]) continue;
                    auto chain = prev;
                    chain.push_back(f);
                    out.chains[m].push_back(std::move(chain));
                }
            }
            if (m == 1) break;  // level-1 chains come straight from morphisms
        }
        for (Idx e = 0; e < out.chains[m].size(); ++e) {
            chain_index[m][chain_key(out.chains[m][e])] = e;
            std::vector<std::string> names;
            for (Idx f : out.chains[m][e]) names.push_back(C.morphisms[f]);
            x.levels[m].push_back(join(names, "."));
        }
    }
    x.rebuild_index();

    auto lookup = [&](int m, const std::vector<Idx>& chain) {
        return chain_index[m].at(chain_key(chain));
    };

    x.face.resize(N + 1);
    for (int m = 1; m <= N; ++m) {
        x.face[m].assign(m + 1, std::vector<Idx>(out.chains[m].size()));
        for (Idx e = 0; e < out.chains[m].size(); ++e) {
            const auto& chain = out.chains[m][e];
            for (int i = 0; i <= m; ++i) {
                std::vector<Idx> img;
                if (m == 1) {
                    // d_0 = target, d_1 = source.
                    img = {i == 0 ? C.tgt[chain[0]] : C.src[chain[0]]};
                } else if (i == 0) {
                    img.assign(chain.begin() + 1, chain.end());
                } else if (i == m) {
                    img.assign(chain.begin(), chain.end() - 1);
                } else {
                    img.assign(chain.begin(), chain.end());
                    Idx composite = C.compose(img[i], img[i - 1]);
                    img[i - 1] = composite;
                    img.erase(img.begin() + i);
                }
                x.face[m][i][e] = lookup(m - 1, img);
            }
        }
    }
    x.degen.resize(std::max(N, 0));
    for (int m = 0; m < N; ++m) {
        x.degen[m].assign(m + 1, std::vector<Idx>(out.chains[m].size()));
        for (Idx e = 0; e < out.chains[m].size(); ++e) {
            const auto& chain = out.chains[m][e];
            for (int i = 0; i <= m; ++i) {
                std::vector<Idx> img;
                if (m == 0) {
                    img = {C.ident[chain[0]]};
                } else {
                    img.assign(chain.begin(), chain.end());
                    Idx at_vertex = (i == 0) ? C.ident[C.src[chain[0]]]
                                             : C.ident[C.tgt[chain[i - 1]]];
                    img.insert(img.begin() + i, at_vertex);
                }
                x.degen[m][i][e] = lookup(m + 1, img);
            }
        }
    }
    out.set = std::make_shared<const TruncSimpSet>(std::move(x));
    return out;
}

SimpSetPtr nerve(const CatPtr& c, int N) { return nerve_with_chains(c, N).set; }

SimpMap nerve_map(const Functor& f, int N) {
    NerveData dom = nerve_with_chains(f.dom, N);
    NerveData cod = nerve_with_chains(f.cod, N);
    const FinCategory& D = *f.cod;
    SimpMap out{dom.set, cod.set, {}};
    out.level_map.resize(N + 1);
    for (int m = 0; m <= N; ++m) {
        out.level_map[m].reserve(dom.chains[m].size());
        for (const auto& chain : dom.chains[m]) {
            std::vector<std::string> names;
            if (m == 0) {
                names.push_back(D.objects[f.ob_map[chain[0]]]);
            } else {
                for (Idx mor : chain) names.push_back(D.morphisms[f.mor_map[mor]]);
            }
            out.level_map[m].push_back(cod.set->index_of(m, join(names, ".")));
        }
    }
    return out;
}

SimpMap map_from_vertices(const SimpSetPtr& dom, const SimpSetPtr& cod,
                          const std::vector<int>& vertex_images) {
    // Works for delta-like objects whose level-0 names are vertex labels.
    const TruncSimpSet& X = *dom;
    int cod_top = 0;
    for (const auto& v : cod->levels[0]) cod_top = std::max(cod_top, std::stoi(v));
    SimpMap out{dom, cod, {}};
    out.level_map.resize(X.truncation + 1);
    for (int n = 0; n <= X.truncation; ++n) {
        out.level_map[n].resize(X.levels[n].size());
        for (Idx e = 0; e < X.levels[n].size(); ++e) {
            std::vector<int> word;
            for (int j = 0; j <= n; ++j) {
                Idx v = X.vertex(n, e, j);
                word.push_back(vertex_images[v]);
            }
            if (!std::is_sorted(word.begin(), word.end()))
                throw PreconditionError("map_from_vertices: image of " + X.levels[n][e] +
                                        " is not monotone");
            out.level_map[n][e] = cod->index_of(n, vertex_word_name(word, cod_top));
        }
    }
    if (!simp_map_commutes(out))
        throw std::logic_error("map_from_vertices: assembled map fails to commute");
    return out;
}

SimpMap map_to_point(const SimpSetPtr& x) {
    SimpSetPtr pt = delta(0, x->truncation);
    SimpMap out{x, pt, {}};
    out.level_map.resize(x->truncation + 1);
    for (int n = 0; n <= x->truncation; ++n)
        out.level_map[n].assign(x->levels[n].size(), 0);
    return out;
}

// ---- Segal -----------------------------------------------------------------

namespace {

/// Composable n-tuples of edges: d_0(e_k) = d_1(e_{k+1}).
std::vector<std::vector<Idx>> edge_tuples(const TruncSimpSet& x, int n) {
    std::vector<std::vector<Idx>> tuples;
    std::vector<Idx> cur;
    auto recurse = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == n) {
            tuples.push_back(cur);
            return;
        }
        for (Idx e = 0; e < x.levels[1].size(); ++e) {
            if (!cur.empty() && x.face[1][0][cur.back()] != x.face[1][1][e]) continue;
            cur.push_back(e);
            self(self);
            cur.pop_back();
        }
    };
    recurse(recurse);
    return tuples;
}

}  // namespace

SegalReport segal_check(const TruncSimpSet& x) {
    if (x.truncation < 2) throw PreconditionError("segal_check: truncation must be >= 2");
    SegalReport rep;
    for (int n = 2; n <= x.truncation; ++n) {
        auto tuples = edge_tuples(x, n);
        std::unordered_map<std::string, Idx> tuple_index;
        for (Idx t = 0; t < tuples.size(); ++t) tuple_index[chain_key(tuples[t])] = t;

        std::vector<Idx> hits(tuples.size(), npos);
        bool injective = true;
        for (Idx e = 0; e < x.levels[n].size(); ++e) {
            std::vector<Idx> spine;
            for (int k = 1; k <= n; ++k) spine.push_back(x.spine_edge(n, e, k));
            Idx t = tuple_index.at(chain_key(spine));
            if (hits[t] != npos) injective = false;
            hits[t] = e;
        }
        bool surjective =
            std::all_of(hits.begin(), hits.end(), [](Idx v) { return v != npos; });
        rep.per_level.push_back(
            {n, x.levels[n].size(), tuples.size(), injective, surjective});
    }
    return rep;
}

CatPtr category_from_segal(const TruncSimpSet& x) {
    if (x.truncation < 3)
        throw PreconditionError("category_from_segal: truncation must be >= 3");
    SegalReport seg = segal_check(x);
    if (!seg.pass()) {
        for (const auto& l : seg.per_level)
            if (!l.injective)
                throw PreconditionError(
                    "category_from_segal: Segal map not injective at level " +
                    std::to_string(l.n) + "; refusing to choose");
        throw PreconditionError("category_from_segal: input fails the Segal condition");
    }

    FinCategory c;
    c.objects = x.levels[0];
    c.morphisms = x.levels[1];
    c.src.resize(x.levels[1].size());
    c.tgt.resize(x.levels[1].size());
    for (Idx e = 0; e < x.levels[1].size(); ++e) {
        c.src[e] = x.face[1][1][e];
        c.tgt[e] = x.face[1][0][e];
    }
    c.ident.resize(x.levels[0].size());
    for (Idx o = 0; o < x.levels[0].size(); ++o) c.ident[o] = x.degen[0][0][o];

    // comp(g, f): the unique 2-simplex with spine (f, g), then its long edge.
    std::unordered_map<std::string, Idx> by_spine;
    for (Idx t = 0; t < x.levels[2].size(); ++t)
        by_spine[chain_key({x.spine_edge(2, t, 1), x.spine_edge(2, t, 2)})] = t;
    for (Idx g = 0; g < c.morphisms.size(); ++g)
        for (Idx f = 0; f < c.morphisms.size(); ++f) {
            if (c.tgt[f] != c.src[g]) continue;
            Idx t = by_spine.at(chain_key({f, g}));
            c.comp_table[c.comp_key(g, f)] = x.face[2][1][t];
        }
    c.rebuild_index();
    auto out = std::make_shared<const FinCategory>(std::move(c));
    auto rep = validate_category(*out);
    if (!rep.ok())
        throw std::logic_error("category_from_segal: output fails validation (" +
                               rep.issues.front().axiom + " at " + rep.issues.front().witness +
                               ")");
    return out;
}

// ---- map enumeration ----------------------------------------------------------

namespace {

struct DegeneracyOrigin {
    int i = -1;
    Idx w = npos;
};

/// First degeneracy presentation per simplex, npos when nondegenerate.
std::vector<std::vector<DegeneracyOrigin>> degeneracy_origins(const TruncSimpSet& x) {
    std::vector<std::vector<DegeneracyOrigin>> origin(x.truncation + 1);
    for (int n = 0; n <= x.truncation; ++n)
        origin[n].assign(x.levels[n].size(), DegeneracyOrigin{});
    for (int n = 0; n < x.truncation; ++n)
        for (int i = n; i >= 0; --i)
            for (Idx w = 0; w < x.levels[n].size(); ++w)
                origin[n + 1][x.degen[n][i][w]] = DegeneracyOrigin{i, w};
    return origin;
}

using CandidateFilter = std::function<bool(int, Idx, Idx)>;

std::vector<SimpMap> enumerate_maps(
    const SimpSetPtr& xp, const SimpSetPtr& yp,
    const std::vector<std::unordered_map<Idx, Idx>>& forced, const CandidateFilter& filter,
    std::uint64_t max_enum) {
    const TruncSimpSet& X = *xp;
    const TruncSimpSet& Y = *yp;
    if (X.truncation != Y.truncation)
        throw PreconditionError("simplicial_maps: truncations differ");
    Budget budget(max_enum);

    auto origin = degeneracy_origins(X);

    // Index of Y simplices by their face tuple, per level.
    std::vector<std::unordered_map<std::string, std::vector<Idx>>> y_by_faces(X.truncation + 1);
    for (int n = 1; n <= Y.truncation; ++n)
        for (Idx e = 0; e < Y.levels[n].size(); ++e) {
            std::vector<Idx> faces;
            for (int i = 0; i <= n; ++i) faces.push_back(Y.face[n][i][e]);
            y_by_faces[n][chain_key(faces)].push_back(e);
        }

    std::vector<std::vector<Idx>> assign(X.truncation + 1);
    for (int n = 0; n <= X.truncation; ++n) assign[n].assign(X.levels[n].size(), npos);

    std::vector<SimpMap> out;

    auto admissible = [&](int n, Idx e, Idx cand) {
        auto f = forced[n].find(e);
        if (f != forced[n].end() && f->second != cand) return false;
        if (filter && !filter(n, e, cand)) return false;
        return true;
    };

    // Verifies operator commutation for every simplex of level n once the
    // whole level is assigned.
    auto level_consistent = [&](int n) {
        if (n >= 1) {
            for (Idx e = 0; e < X.levels[n].size(); ++e)
                for (int i = 0; i <= n; ++i)
                    if (Y.face[n][i][assign[n][e]] != assign[n - 1][X.face[n][i][e]])
                        return false;
        }
        if (n >= 1) {
            for (Idx w = 0; w < X.levels[n - 1].size(); ++w)
                for (int i = 0; i <= n - 1; ++i)
                    if (assign[n][X.degen[n - 1][i][w]] !=
                        Y.degen[n - 1][i][assign[n - 1][w]])
                        return false;
        }
        return true;
    };

    auto recurse_level = [&](auto&& self, int n) -> void {
        if (n > X.truncation) {
            SimpMap m{xp, yp, assign};
            out.push_back(std::move(m));
            return;
        }
        // Forced images: degenerate simplices follow their origin.
        std::vector<Idx> free_simplices;
        for (Idx e = 0; e < X.levels[n].size(); ++e) {
            if (n > 0 && origin[n][e].i >= 0) continue;
            free_simplices.push_back(e);
        }

        auto candidates_for = [&](Idx e) {
            std::vector<Idx> cands;
            if (n == 0) {
                for (Idx y = 0; y < Y.levels[0].size(); ++y)
                    if (admissible(0, e, y)) cands.push_back(y);
            } else {
                std::vector<Idx> faces;
                for (int i = 0; i <= n; ++i) faces.push_back(assign[n - 1][X.face[n][i][e]]);
                auto it = y_by_faces[n].find(chain_key(faces));
                if (it != y_by_faces[n].end())
                    for (Idx y : it->second)
                        if (admissible(n, e, y)) cands.push_back(y);
            }
            return cands;
        };

        auto fill_degenerate = [&]() {
            for (Idx e = 0; e < X.levels[n].size(); ++e) {
                if (n == 0 || origin[n][e].i < 0) continue;
                Idx w = origin[n][e].w;
                Idx img = Y.degen[n - 1][origin[n][e].i][assign[n - 1][w]];
                if (!admissible(n, e, img)) return false;
                assign[n][e] = img;
            }
            return true;
        };

        if (!fill_degenerate()) {
            for (Idx e = 0; e < X.levels[n].size(); ++e) assign[n][e] = npos;
            return;
        }

        auto recurse_simplex = [&](auto&& inner, std::size_t k) -> void {
            if (k == free_simplices.size()) {
                if (level_consistent(n)) self(self, n + 1);
                return;
            }
            Idx e = free_simplices[k];
            for (Idx cand : candidates_for(e)) {
                budget.spend();
                assign[n][e] = cand;
                inner(inner, k + 1);
                assign[n][e] = npos;
            }
        };
        recurse_simplex(recurse_simplex, 0);
        for (Idx e = 0; e < X.levels[n].size(); ++e) assign[n][e] = npos;
    };

    recurse_level(recurse_level, 0);
    return out;
}

}  // namespace

std::vector<SimpMap> simplicial_maps(const SimpSetPtr& x, const SimpSetPtr& y,
                                     std::uint64_t max_enum) {
    std::vector<std::unordered_map<Idx, Idx>> forced(x->truncation + 1);
    return enumerate_maps(x, y, forced, nullptr, max_enum);
}

std::vector<SimpMap> solve_lift(const LiftProblem& lp, std::uint64_t max_enum) {
    const SimpMap& i = lp.i;
    const SimpMap& p = lp.p;
    if (!maps_equal(compose_maps(lp.p, lp.top), compose_maps(lp.bottom, lp.i)))
        throw PreconditionError("solve_lift: square does not commute");

    SimpSetPtr B = i.cod;
    SimpSetPtr Y = p.dom;
    std::vector<std::unordered_map<Idx, Idx>> forced(B->truncation + 1);
    for (int n = 0; n <= B->truncation; ++n)
        for (Idx a = 0; a < i.dom->levels[n].size(); ++a) {
            Idx b = i.level_map[n][a];
            Idx want = lp.top.level_map[n][a];
            auto it = forced[n].find(b);
            if (it != forced[n].end() && it->second != want) return {};
            forced[n][b] = want;
        }
    CandidateFilter over_bottom = [&](int n, Idx b, Idx y) {
        return p.level_map[n][y] == lp.bottom.level_map[n][b];
    };
    return enumerate_maps(B, Y, forced, over_bottom, max_enum);
}

FibrationReport classify_fibration(const SimpMap& p, int up_to, std::uint64_t max_enum) {
    const int N = p.dom->truncation;
    if (up_to > N) throw PreconditionError("classify_fibration: up_to exceeds truncation");
    FibrationReport rep;

    auto run = [&](const SubObject& sub, int n, int horn_i, bool& flag,
                   std::optional<FibrationWitness>& witness) {
        if (!flag) return;
        auto tops = simplicial_maps(sub.object, p.dom, max_enum);
        SimpSetPtr simplex = sub.inclusion.cod;
        for (const auto& top : tops) {
            SimpMap bottom0 = compose_maps(p, top);
            // All extensions of the projected top across the inclusion.
            std::vector<std::unordered_map<Idx, Idx>> forced(N + 1);
            for (int m = 0; m <= N; ++m)
                for (Idx a = 0; a < sub.object->levels[m].size(); ++a)
                    forced[m][sub.inclusion.level_map[m][a]] = bottom0.level_map[m][a];
            auto bottoms = enumerate_maps(simplex, p.cod, forced, nullptr, max_enum);
            for (const auto& bottom : bottoms) {
                LiftProblem lp{sub.inclusion, p, top, bottom};
                if (solve_lift(lp, max_enum).empty()) {
                    flag = false;
                    FibrationWitness w;
                    w.n = n;
                    w.horn_index = horn_i;
                    for (int m = 0; m <= N; ++m)
                        for (Idx a = 0; a < sub.object->levels[m].size(); ++a)
                            w.top.push_back(sub.object->levels[m][a] + "->" +
                                            p.dom->levels[m][top.level_map[m][a]]);
                    for (int m = 0; m <= N; ++m)
                        for (Idx b = 0; b < simplex->levels[m].size(); ++b)
                            w.bottom.push_back(simplex->levels[m][b] + "->" +
                                               p.cod->levels[m][bottom.level_map[m][b]]);
                    witness = std::move(w);
                    return;
                }
            }
        }
    };

    // At n = 0 both shapes are the empty inclusion into Delta[0]; the square
    // asks for a point of the fiber over every vertex of the base.
    for (int n = 0; n <= up_to && (rep.kan_fibration || rep.trivial_fibration); ++n) {
        for (int i = 0; i <= n; ++i)
            run(horn(n, i, N), n, i, rep.kan_fibration, rep.kan_witness);
        run(boundary(n, N), n, -1, rep.trivial_fibration, rep.trivial_witness);
    }
    return rep;
}

std::vector<Idx> pi0(const TruncSimpSet& x) {
    if (x.truncation < 1) throw PreconditionError("pi0: truncation must be >= 1");
    UnionFind uf(x.levels[0].size());
    for (Idx e = 0; e < x.levels[1].size(); ++e)
        uf.unite(x.face[1][1][e], x.face[1][0][e]);
    return uf.classes();
}

// ---- products -------------------------------------------------------------------

SimpSetPtr product(const SimpSetPtr& xp, const SimpSetPtr& yp) {
    const TruncSimpSet& X = *xp;
    const TruncSimpSet& Y = *yp;
    if (X.truncation != Y.truncation) throw PreconditionError("product: truncations differ");
    const int N = X.truncation;
    TruncSimpSet out;
    out.truncation = N;
    out.levels.resize(N + 1);
    std::vector<std::vector<std::pair<Idx, Idx>>> pairs(N + 1);
    for (int n = 0; n <= N; ++n)
        for (Idx a = 0; a < X.levels[n].size(); ++a)
            for (Idx b = 0; b < Y.levels[n].size(); ++b) {
                pairs[n].emplace_back(a, b);
                out.levels[n].push_back("(" + X.levels[n][a] + "|" + Y.levels[n][b] + ")");
            }
    out.rebuild_index();
    auto pair_index = [&](int n, Idx a, Idx b) { return a * Y.levels[n].size() + b; };
    out.face.resize(N + 1);
    for (int n = 1; n <= N; ++n) {
        out.face[n].assign(n + 1, std::vector<Idx>(pairs[n].size()));
        for (int i = 0; i <= n; ++i)
            for (Idx e = 0; e < pairs[n].size(); ++e)
                out.face[n][i][e] = pair_index(n - 1, X.face[n][i][pairs[n][e].first],
                                               Y.face[n][i][pairs[n][e].second]);
    }
    out.degen.resize(std::max(N, 0));
    for (int n = 0; n < N; ++n) {
        out.degen[n].assign(n + 1, std::vector<Idx>(pairs[n].size()));
        for (int i = 0; i <= n; ++i)
            for (Idx e = 0; e < pairs[n].size(); ++e)
                out.degen[n][i][e] = pair_index(n + 1, X.degen[n][i][pairs[n][e].first],
                                                Y.degen[n][i][pairs[n][e].second]);
    }
    return std::make_shared<const TruncSimpSet>(std::move(out));
}

PullbackResult pullback(const SimpMap& f, const SimpMap& g) {
    const TruncSimpSet& X = *f.dom;
    const TruncSimpSet& Y = *g.dom;
    if (X.truncation != Y.truncation) throw PreconditionError("pullback: truncations differ");
    for (std::size_t n = 0; n < f.level_map.size(); ++n)
        if (f.cod->levels[n].size() != g.cod->levels[n].size())
            throw PreconditionError("pullback: the cospan legs have different codomains");
    const int N = X.truncation;

    TruncSimpSet out;
    out.truncation = N;
    out.levels.resize(N + 1);
    std::vector<std::vector<std::pair<Idx, Idx>>> pairs(N + 1);
    std::vector<std::unordered_map<std::string, Idx>> pair_index(N + 1);
    auto key = [](Idx a, Idx b) {
        return std::to_string(a) + "," + std::to_string(b);
    };
    for (int n = 0; n <= N; ++n)
        for (Idx a = 0; a < X.levels[n].size(); ++a)
            for (Idx b = 0; b < Y.levels[n].size(); ++b) {
                if (f.level_map[n][a] != g.level_map[n][b]) continue;
                pair_index[n][key(a, b)] = pairs[n].size();
                pairs[n].emplace_back(a, b);
                out.levels[n].push_back("(" + X.levels[n][a] + "|" + Y.levels[n][b] + ")");
            }
    out.rebuild_index();
    out.face.resize(N + 1);
    for (int n = 1; n <= N; ++n) {
        out.face[n].assign(n + 1, std::vector<Idx>(pairs[n].size()));
        for (int i = 0; i <= n; ++i)
            for (Idx e = 0; e < pairs[n].size(); ++e)
                out.face[n][i][e] = pair_index[n - 1].at(
                    key(X.face[n][i][pairs[n][e].first], Y.face[n][i][pairs[n][e].second]));
    }
    out.degen.resize(std::max(N, 0));
    for (int n = 0; n < N; ++n) {
        out.degen[n].assign(n + 1, std::vector<Idx>(pairs[n].size()));
        for (int i = 0; i <= n; ++i)
            for (Idx e = 0; e < pairs[n].size(); ++e)
                out.degen[n][i][e] = pair_index[n + 1].at(
                    key(X.degen[n][i][pairs[n][e].first], Y.degen[n][i][pairs[n][e].second]));
    }

    PullbackResult res;
    res.object = std::make_shared<const TruncSimpSet>(std::move(out));
    SimpMap left{res.object, f.dom, {}};
    SimpMap right{res.object, g.dom, {}};
    left.level_map.resize(N + 1);
    right.level_map.resize(N + 1);
    for (int n = 0; n <= N; ++n)
        for (const auto& [a, b] : pairs[n]) {
            left.level_map[n].push_back(a);
            right.level_map[n].push_back(b);
        }
    res.to_left = std::move(left);
    res.to_right = std::move(right);
    return res;
}

}  // namespace sscat
