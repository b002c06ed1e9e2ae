#include "sscat/json_io.hpp"

#include <algorithm>
#include <array>

namespace sscat {

json category_to_json(const FinCategory& c) {
    json j;
    j["objects"] = c.objects;
    json mors = json::array();
    for (Idx m = 0; m < c.morphisms.size(); ++m)
        mors.push_back({{"id", c.morphisms[m]},
                        {"src", c.objects[c.src[m]]},
                        {"tgt", c.objects[c.tgt[m]]}});
    j["morphisms"] = mors;
    json idents = json::object();
    for (Idx x = 0; x < c.objects.size(); ++x)
        idents[c.objects[x]] = c.morphisms[c.ident[x]];
    j["identities"] = idents;
    std::vector<std::array<std::string, 3>> rows;
    for (const auto& [key, gf] : c.comp_table) {
        auto [g, f] = FinCategory::comp_key_parts(key);
        rows.push_back({c.morphisms[g], c.morphisms[f], c.morphisms[gf]});
    }
    std::sort(rows.begin(), rows.end());
    j["comp"] = rows;
    return j;
}

LoadedCategory category_from_json(const json& j) {
    LoadedCategory out;
    auto structural = [&](const std::string& msg) {
        out.report.issues.push_back({"structure", msg});
    };
    if (!j.is_object() || !j.contains("objects") || !j.contains("morphisms"))
        throw ParseError("category document needs \"objects\" and \"morphisms\"");

    FinCategory c;
    for (const auto& o : j.at("objects")) c.objects.push_back(o.get<std::string>());
    c.object_index.clear();
    for (Idx i = 0; i < c.objects.size(); ++i) {
        if (c.object_index.count(c.objects[i])) structural("duplicate object " + c.objects[i]);
        c.object_index[c.objects[i]] = i;
    }
    for (const auto& m : j.at("morphisms")) {
        std::string id = m.at("id").get<std::string>();
        std::string src = m.at("src").get<std::string>();
        std::string tgt = m.at("tgt").get<std::string>();
        if (c.morphism_index.count(id)) structural("duplicate morphism " + id);
        if (!c.object_index.count(src)) structural("morphism " + id + " has dangling src " + src);
        if (!c.object_index.count(tgt)) structural("morphism " + id + " has dangling tgt " + tgt);
        if (!out.report.ok()) continue;
        c.morphism_index[id] = c.morphisms.size();
        c.morphisms.push_back(id);
        c.src.push_back(c.object_index.at(src));
        c.tgt.push_back(c.object_index.at(tgt));
    }
    c.ident.assign(c.objects.size(), npos);
    if (j.contains("identities"))
        for (const auto& [obj, mor] : j.at("identities").items()) {
            if (!c.object_index.count(obj)) {
                structural("identity entry for unknown object " + obj);
                continue;
            }
            if (!c.morphism_index.count(mor.get<std::string>())) {
                structural("identity of " + obj + " dangles");
                continue;
            }
            c.ident[c.object_index.at(obj)] = c.morphism_index.at(mor.get<std::string>());
        }
    for (Idx x = 0; x < c.objects.size(); ++x)
        if (c.ident[x] == npos) structural("object " + c.objects[x] + " has no identity");
    if (j.contains("comp"))
        for (const auto& row : j.at("comp")) {
            if (!row.is_array() || row.size() != 3) {
                structural("malformed comp row");
                continue;
            }
            std::string g = row[0].get<std::string>();
            std::string f = row[1].get<std::string>();
            std::string gf = row[2].get<std::string>();
            bool ok = true;
            for (const auto& name : {g, f, gf})
                if (!c.morphism_index.count(name)) {
                    structural("comp row references unknown morphism " + name);
                    ok = false;
                }
            if (!ok) continue;
            c.comp_table[c.comp_key(c.morphism_index.at(g), c.morphism_index.at(f))] =
                c.morphism_index.at(gf);
        }
    if (!out.report.ok()) return out;

    out.cat = std::make_shared<const FinCategory>(std::move(c));
    out.report = validate_category(*out.cat);
    return out;
}

json simpset_to_json(const TruncSimpSet& x) {
    json j;
    j["truncation"] = x.truncation;
    j["levels"] = x.levels;
    json faces = json::object();
    for (int n = 1; n <= x.truncation; ++n)
        for (int i = 0; i <= n; ++i) {
            json table = json::object();
            for (Idx e = 0; e < x.levels[n].size(); ++e)
                table[x.levels[n][e]] = x.levels[n - 1][x.face[n][i][e]];
            faces[std::to_string(n) + "," + std::to_string(i)] = table;
        }
    j["faces"] = faces;
    json degens = json::object();
    for (int n = 0; n < x.truncation; ++n)
        for (int i = 0; i <= n; ++i) {
            json table = json::object();
            for (Idx e = 0; e < x.levels[n].size(); ++e)
                table[x.levels[n][e]] = x.levels[n + 1][x.degen[n][i][e]];
            degens[std::to_string(n) + "," + std::to_string(i)] = table;
        }
    j["degens"] = degens;
    return j;
}

LoadedSimpSet simpset_from_json(const json& j) {
    LoadedSimpSet out;
    if (!j.is_object() || !j.contains("truncation") || !j.contains("levels"))
        throw ParseError("simplicial-set document needs \"truncation\" and \"levels\"");
    TruncSimpSet x;
    x.truncation = j.at("truncation").get<int>();
    x.levels = j.at("levels").get<std::vector<std::vector<std::string>>>();
    if (static_cast<int>(x.levels.size()) != x.truncation + 1) {
        out.report.issues.push_back({"structure", "levels do not match truncation"});
        return out;
    }
    x.rebuild_index();
    x.face.resize(x.truncation + 1);
    x.degen.resize(std::max(x.truncation, 0));
    auto load_tables = [&](const char* key, bool is_face) {
        if (!j.contains(key)) return;
        for (const auto& [slot, table] : j.at(key).items()) {
            auto comma = slot.find(',');
            if (comma == std::string::npos) throw ParseError("bad operator slot " + slot);
            int n = std::stoi(slot.substr(0, comma));
            int i = std::stoi(slot.substr(comma + 1));
            int from = n, to = is_face ? n - 1 : n + 1;
            auto& bank = is_face ? x.face[n] : x.degen[n];
            if (static_cast<int>(bank.size()) <= i) bank.resize(i + 1);
            bank[i].assign(x.levels[from].size(), npos);
            for (const auto& [name, img] : table.items()) {
                if (!x.index[from].count(name)) {
                    out.report.issues.push_back({"structure", "unknown simplex " + name});
                    continue;
                }
                const std::string target = img.get<std::string>();
                if (!x.index[to].count(target)) {
                    out.report.issues.push_back({"structure", "dangling image " + target});
                    continue;
                }
                bank[i][x.index[from].at(name)] = x.index[to].at(target);
            }
        }
    };
    load_tables("faces", true);
    load_tables("degens", false);
    for (int n = 1; n <= x.truncation; ++n) {
        if (static_cast<int>(x.face[n].size()) != n + 1)
            out.report.issues.push_back({"structure", "missing face tables at level " +
                                                          std::to_string(n)});
        for (const auto& table : x.face[n])
            for (Idx v : table)
                if (v == npos)
                    out.report.issues.push_back({"structure", "partial face table"});
    }
    for (int n = 0; n < x.truncation; ++n) {
        if (static_cast<int>(x.degen[n].size()) != n + 1)
            out.report.issues.push_back({"structure", "missing degeneracy tables at level " +
                                                          std::to_string(n)});
        for (const auto& table : x.degen[n])
            for (Idx v : table)
                if (v == npos)
                    out.report.issues.push_back({"structure", "partial degeneracy table"});
    }
    if (!out.report.ok()) return out;
    out.set = std::make_shared<const TruncSimpSet>(std::move(x));
    out.report = validate_simpset(*out.set);
    return out;
}

json bisimpset_to_json(const TruncBiSimpSet& x) {
    json j;
    j["htrunc"] = x.htrunc;
    j["vtrunc"] = x.vtrunc;
    j["levels"] = x.levels;
    auto dump_tables = [&](const char* key, bool horizontal, bool is_face) {
        json bank = json::object();
        for (int n = 0; n <= x.htrunc; ++n)
            for (int l = 0; l <= x.vtrunc; ++l) {
                int ops;
                if (horizontal)
                    ops = is_face ? (n >= 1 ? n : -1) : (n < x.htrunc ? n : -1);
                else
                    ops = is_face ? (l >= 1 ? l : -1) : (l < x.vtrunc ? l : -1);
                if (ops < 0) continue;
                for (int i = 0; i <= ops; ++i) {
                    const auto& table = horizontal
                                            ? (is_face ? x.hface[n][l][i] : x.hdegen[n][l][i])
                                            : (is_face ? x.vface[n][l][i] : x.vdegen[n][l][i]);
                    int tn = n, tl = l;
                    if (horizontal)
                        tn = is_face ? n - 1 : n + 1;
                    else
                        tl = is_face ? l - 1 : l + 1;
                    json entries = json::object();
                    for (Idx e = 0; e < x.levels[n][l].size(); ++e)
                        entries[x.levels[n][l][e]] = x.levels[tn][tl][table[e]];
                    bank[std::to_string(n) + "," + std::to_string(l) + "," +
                         std::to_string(i)] = entries;
                }
            }
        j[key] = bank;
    };
    dump_tables("hfaces", true, true);
    dump_tables("hdegens", true, false);
    dump_tables("vfaces", false, true);
    dump_tables("vdegens", false, false);
    return j;
}

LoadedBiSimpSet bisimpset_from_json(const json& j) {
    LoadedBiSimpSet out;
    if (!j.is_object() || !j.contains("htrunc") || !j.contains("vtrunc") ||
        !j.contains("levels"))
        throw ParseError("bisimplicial document needs \"htrunc\", \"vtrunc\", \"levels\"");
    TruncBiSimpSet x;
    x.htrunc = j.at("htrunc").get<int>();
    x.vtrunc = j.at("vtrunc").get<int>();
    x.levels = j.at("levels").get<std::vector<std::vector<std::vector<std::string>>>>();

    std::vector<std::vector<std::unordered_map<std::string, Idx>>> index(x.htrunc + 1);
    for (int n = 0; n <= x.htrunc; ++n) {
        index[n].resize(x.vtrunc + 1);
        for (int l = 0; l <= x.vtrunc; ++l)
            for (Idx e = 0; e < x.levels[n][l].size(); ++e)
                index[n][l][x.levels[n][l][e]] = e;
    }
    auto shape = [&](auto& bank) {
        bank.assign(x.htrunc + 1, {});
        for (int n = 0; n <= x.htrunc; ++n) bank[n].resize(x.vtrunc + 1);
    };
    shape(x.hface);
    shape(x.hdegen);
    shape(x.vface);
    shape(x.vdegen);
    auto load_tables = [&](const char* key, bool horizontal, bool is_face) {
        if (!j.contains(key)) return;
        for (const auto& [slot, table] : j.at(key).items()) {
            auto c1 = slot.find(',');
            auto c2 = slot.find(',', c1 + 1);
            int n = std::stoi(slot.substr(0, c1));
            int l = std::stoi(slot.substr(c1 + 1, c2 - c1 - 1));
            int i = std::stoi(slot.substr(c2 + 1));
            int tn = n, tl = l;
            if (horizontal)
                tn = is_face ? n - 1 : n + 1;
            else
                tl = is_face ? l - 1 : l + 1;
            auto& bank = horizontal ? (is_face ? x.hface[n][l] : x.hdegen[n][l])
                                    : (is_face ? x.vface[n][l] : x.vdegen[n][l]);
            if (static_cast<int>(bank.size()) <= i) bank.resize(i + 1);
            bank[i].assign(x.levels[n][l].size(), npos);
            for (const auto& [name, img] : table.items()) {
                auto at = index[n][l].find(name);
                auto to = index[tn][tl].find(img.get<std::string>());
                if (at == index[n][l].end() || to == index[tn][tl].end()) {
                    out.report.issues.push_back({"structure", "dangling entry in " + slot});
                    continue;
                }
                bank[i][at->second] = to->second;
            }
        }
    };
    load_tables("hfaces", true, true);
    load_tables("hdegens", true, false);
    load_tables("vfaces", false, true);
    load_tables("vdegens", false, false);
    if (!out.report.ok()) return out;
    out.set = std::make_shared<const TruncBiSimpSet>(std::move(x));
    out.report = validate_bisimpset(*out.set);
    return out;
}

json functor_to_json(const Functor& f, const std::string& domain_ref,
                     const std::string& codomain_ref) {
    json j;
    j["domain"] = domain_ref;
    j["codomain"] = codomain_ref;
    json ob = json::object();
    for (Idx x = 0; x < f.ob_map.size(); ++x)
        ob[f.dom->objects[x]] = f.cod->objects[f.ob_map[x]];
    j["obMap"] = ob;
    json mor = json::object();
    for (Idx m = 0; m < f.mor_map.size(); ++m)
        mor[f.dom->morphisms[m]] = f.cod->morphisms[f.mor_map[m]];
    j["morMap"] = mor;
    return j;
}

Functor functor_from_json(const json& j, const CategoryResolver& resolve) {
    if (!j.contains("domain") || !j.contains("codomain"))
        throw ParseError("functor document needs \"domain\" and \"codomain\" references");
    Functor f{resolve(j.at("domain").get<std::string>()),
              resolve(j.at("codomain").get<std::string>()), {}, {}};
    f.ob_map.assign(f.dom->objects.size(), npos);
    f.mor_map.assign(f.dom->morphisms.size(), npos);
    for (const auto& [from, to] : j.at("obMap").items())
        f.ob_map[f.dom->object_of(from)] = f.cod->object_of(to.get<std::string>());
    for (const auto& [from, to] : j.at("morMap").items())
        f.mor_map[f.dom->morphism_of(from)] = f.cod->morphism_of(to.get<std::string>());
    for (Idx v : f.ob_map)
        if (v == npos) throw ParseError("functor object map not total");
    for (Idx v : f.mor_map)
        if (v == npos) throw ParseError("functor morphism map not total");
    auto rep = validate_functor(f);
    if (!rep.ok())
        throw ParseError("functor fails validation: " + rep.issues.front().axiom + " at " +
                         rep.issues.front().witness);
    return f;
}

json set_functor_to_json(const SetFunctor& f, const std::string& domain_ref) {
    json j;
    j["domain"] = domain_ref;
    j["obAssign"] = json::object();
    for (Idx x = 0; x < f.ob_elems.size(); ++x) j["obAssign"][f.dom->objects[x]] = f.ob_elems[x];
    json mor = json::object();
    for (Idx m = 0; m < f.mor_fn.size(); ++m) {
        json table = json::object();
        for (Idx e = 0; e < f.mor_fn[m].size(); ++e)
            table[f.ob_elems[f.dom->src[m]][e]] = f.ob_elems[f.dom->tgt[m]][f.mor_fn[m][e]];
        mor[f.dom->morphisms[m]] = table;
    }
    j["morAssign"] = mor;
    return j;
}

SetFunctor set_functor_from_json(const json& j, const CategoryResolver& resolve) {
    if (!j.contains("domain")) throw ParseError("set-functor document needs \"domain\"");
    SetFunctor f{resolve(j.at("domain").get<std::string>()), {}, {}};
    const FinCategory& C = *f.dom;
    f.ob_elems.assign(C.objects.size(), {});
    for (const auto& [obj, elems] : j.at("obAssign").items())
        f.ob_elems[C.object_of(obj)] = elems.get<std::vector<std::string>>();
    f.mor_fn.assign(C.morphisms.size(), {});
    for (const auto& [mor, table] : j.at("morAssign").items()) {
        Idx m = C.morphism_of(mor);
        const auto& dom_elems = f.ob_elems[C.src[m]];
        const auto& cod_elems = f.ob_elems[C.tgt[m]];
        f.mor_fn[m].assign(dom_elems.size(), npos);
        for (const auto& [from, to] : table.items()) {
            auto fp = std::find(dom_elems.begin(), dom_elems.end(), from);
            auto tp = std::find(cod_elems.begin(), cod_elems.end(), to.get<std::string>());
            if (fp == dom_elems.end() || tp == cod_elems.end())
                throw ParseError("set-functor table for " + mor + " references unknown element");
            f.mor_fn[m][fp - dom_elems.begin()] = static_cast<Idx>(tp - cod_elems.begin());
        }
        for (Idx v : f.mor_fn[m])
            if (v == npos) throw ParseError("set-functor table for " + mor + " not total");
    }
    auto rep = validate_set_functor(f);
    if (!rep.ok())
        throw ParseError("set functor fails validation: " + rep.issues.front().axiom);
    return f;
}

std::string canonical_dump(const json& j) { return j.dump(2); }

std::uint64_t content_hash(const json& j) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical_dump(j)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string category_to_dot(const FinCategory& c) {
    std::string out = "digraph category {\n";
    for (Idx x = 0; x < c.objects.size(); ++x)
        out += "  \"" + c.objects[x] + "\";\n";
    for (Idx m = 0; m < c.morphisms.size(); ++m) {
        if (c.is_identity(m)) continue;
        out += "  \"" + c.objects[c.src[m]] + "\" -> \"" + c.objects[c.tgt[m]] +
               "\" [label=\"" + c.morphisms[m] + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace sscat
