#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "sscat/colim_adj.hpp"
#include "sscat/fibrations.hpp"
#include "sscat/fixtures.hpp"
#include "sscat/json_io.hpp"

using namespace sscat;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;
constexpr int kExitBound = 3;

struct Options {
    int trunc = 2;
    int vtrunc = 1;
    int up_to = -1;  // default: the truncation
    std::uint64_t max_enum = kDefaultMaxEnum;
    std::string out_path;
};

void emit(const json& j, const Options& opt) {
    if (opt.out_path.empty()) {
        std::cout << canonical_dump(j) << "\n";
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw std::runtime_error("cannot open " + opt.out_path);
        out << canonical_dump(j) << "\n";
    }
}

json with_header(const std::string& kind) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = kind;
    return j;
}

json report_to_json(const ValidationReport& rep) {
    json issues = json::array();
    for (const auto& i : rep.issues)
        issues.push_back({{"axiom", i.axiom}, {"witness", i.witness}});
    return issues;
}

/// Named store of loaded objects; names stay unique, everything loaded from
/// disk passes its validator, and provenance is kept.
class Workspace {
public:
    explicit Workspace(const Options& opt) : opt_(opt) {}

    CatPtr category(const std::string& ref) {
        if (is_category_fixture(ref))
            return remember(ref, "fixture", fixture_category(ref));
        json doc = read_doc(ref);
        auto loaded = category_from_json(doc);
        if (!loaded.report.ok())
            throw std::runtime_error("category " + ref + " failed validation: " +
                                     loaded.report.issues.front().axiom + " at " +
                                     loaded.report.issues.front().witness);
        return remember(ref, "file", loaded.cat);
    }

    SimpSetPtr simpset(const std::string& ref) {
        if (is_simpset_fixture(ref))
            return remember(ref, "fixture", fixture_simpset(ref, opt_.trunc));
        json doc = read_doc(ref);
        auto loaded = simpset_from_json(doc);
        if (!loaded.report.ok())
            throw std::runtime_error("simplicial set " + ref + " failed validation: " +
                                     loaded.report.issues.front().axiom + " at " +
                                     loaded.report.issues.front().witness);
        return remember(ref, "file", loaded.set);
    }

    BiSetPtr bisimpset(const std::string& ref) {
        if (is_bisimpset_fixture(ref))
            return remember(
                ref, "fixture",
                fixture_bisimpset(ref, std::max(opt_.trunc, 2), opt_.vtrunc, opt_.max_enum));
        json doc = read_doc(ref);
        auto loaded = bisimpset_from_json(doc);
        if (!loaded.report.ok())
            throw std::runtime_error("bisimplicial set " + ref + " failed validation: " +
                                     loaded.report.issues.front().axiom + " at " +
                                     loaded.report.issues.front().witness);
        return remember(ref, "file", loaded.set);
    }

    Functor functor(const std::string& ref) {
        json doc = read_doc(ref);
        return functor_from_json(doc, [this](const std::string& r) { return category(r); });
    }

    SetFunctor set_functor(const std::string& ref) {
        json doc = read_doc(ref);
        return set_functor_from_json(doc,
                                     [this](const std::string& r) { return category(r); });
    }

    json read_doc(const std::string& ref) {
        std::string text;
        if (ref == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream in(ref);
            if (!in) throw std::runtime_error("cannot read " + ref);
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            throw ParseError(ref + ": " + e.what());
        }
    }

private:
    template <typename T>
    T remember(const std::string& name, const std::string& source, T value) {
        provenance_.emplace(name, source);
        return value;
    }

    Options opt_;
    std::map<std::string, std::string> provenance_;
};

int cmd_validate(Workspace& ws, const std::string& ref, const Options& opt) {
    json doc = ws.read_doc(ref);
    json out = with_header("validation");
    ValidationReport rep;
    auto resolve = [&](const std::string& r) { return ws.category(r); };
    if (doc.contains("htrunc")) {
        rep = bisimpset_from_json(doc).report;
        out["object"] = "bisimplicial-set";
    } else if (doc.contains("truncation")) {
        rep = simpset_from_json(doc).report;
        out["object"] = "simplicial-set";
    } else if (doc.contains("obMap")) {
        rep = validate_functor(functor_from_json(doc, resolve));
        out["object"] = "functor";
    } else if (doc.contains("obAssign")) {
        rep = validate_set_functor(set_functor_from_json(doc, resolve));
        out["object"] = "set-functor";
    } else if (doc.contains("objects")) {
        rep = category_from_json(doc).report;
        out["object"] = "category";
    } else {
        throw ParseError("unrecognized document shape in " + ref);
    }
    out["ok"] = rep.ok();
    out["issues"] = report_to_json(rep);
    emit(out, opt);
    return rep.ok() ? kExitPass : kExitFail;
}

int cmd_build(Workspace& ws, const std::string& constructor,
              const std::vector<std::string>& args, const Options& opt) {
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw std::runtime_error("constructor " + constructor + " expects " +
                                     std::to_string(n) + " argument(s)");
    };
    json out;
    if (constructor == "delta") {
        need(1);
        out = simpset_to_json(*delta(std::stoi(args[0]), opt.trunc));
    } else if (constructor == "boundary") {
        need(1);
        out = simpset_to_json(*boundary(std::stoi(args[0]), opt.trunc).object);
    } else if (constructor == "horn") {
        need(2);
        out = simpset_to_json(*horn(std::stoi(args[0]), std::stoi(args[1]), opt.trunc).object);
    } else if (constructor == "spine") {
        need(1);
        out = simpset_to_json(*spine_set(std::stoi(args[0]), opt.trunc).object);
    } else if (constructor == "poset") {
        need(1);
        out = category_to_json(*poset_category(std::stoi(args[0])));
    } else if (constructor == "iso") {
        need(1);
        out = category_to_json(*iso_category(std::stoi(args[0])));
    } else if (constructor == "nerve") {
        need(1);
        out = simpset_to_json(*nerve(ws.category(args[0]), opt.trunc));
    } else if (constructor == "F") {
        need(1);
        out = bisimpset_to_json(*bi_F(std::stoi(args[0]), opt.trunc, opt.vtrunc));
    } else if (constructor == "G") {
        need(1);
        out = bisimpset_to_json(
            *bi_spine(std::stoi(args[0]), opt.trunc, opt.vtrunc).spine_object);
    } else if (constructor == "E1") {
        need(0);
        out = bisimpset_to_json(*e_one(std::max(opt.trunc, 2), opt.vtrunc));
    } else if (constructor == "classify") {
        need(1);
        out = bisimpset_to_json(
            *classifying_diagram(ws.category(args[0]), opt.trunc, opt.vtrunc, opt.max_enum));
    } else if (constructor == "fixture") {
        need(1);
        const std::string& name = args[0];
        if (is_category_fixture(name))
            out = category_to_json(*fixture_category(name));
        else if (is_simpset_fixture(name))
            out = simpset_to_json(*fixture_simpset(name, opt.trunc));
        else if (is_bisimpset_fixture(name))
            out = bisimpset_to_json(
                *fixture_bisimpset(name, std::max(opt.trunc, 2), opt.vtrunc, opt.max_enum));
        else
            throw std::runtime_error("unknown fixture " + name);
    } else {
        throw std::runtime_error("unknown constructor " + constructor);
    }
    emit(out, opt);
    return kExitPass;
}

json segal_counts(const std::vector<SegalLevel>& levels) {
    json counts = json::object();
    for (const auto& lev : levels)
        counts["level" + std::to_string(lev.n)] =
            json::array({lev.level_card, lev.fiber_product_card});
    return counts;
}

json segal_space_counts(const SegalVerdict& verdict) {
    json counts = json::object();
    for (const auto& lev : verdict.per_n)
        counts["level" + std::to_string(lev.n)] =
            json::array({lev.cards[0].first, lev.cards[0].second});
    return counts;
}

int cmd_check(Workspace& ws, const std::string& kind, const std::string& ref,
              const Options& opt) {
    json out = with_header("check-" + kind);
    bool pass = false;

    if (kind == "category") {
        if (is_category_fixture(ref)) {
            auto rep = validate_category(*ws.category(ref));
            pass = rep.ok();
            out["issues"] = report_to_json(rep);
        } else {
            auto loaded = category_from_json(ws.read_doc(ref));
            pass = loaded.report.ok();
            out["issues"] = report_to_json(loaded.report);
        }
    } else if (kind == "segal") {
        if (is_bisimpset_fixture(ref)) {
            auto verdict = segal_space_check(*ws.bisimpset(ref));
            pass = verdict.pass();
            out["counts"] = segal_space_counts(verdict);
        } else if (is_simpset_fixture(ref)) {
            auto rep = segal_check(*ws.simpset(ref));
            pass = rep.pass();
            out["counts"] = segal_counts(rep.per_level);
        } else {
            json doc = ws.read_doc(ref);
            if (doc.contains("htrunc")) {
                auto loaded = bisimpset_from_json(doc);
                if (!loaded.report.ok()) throw std::runtime_error("input failed validation");
                auto verdict = segal_space_check(*loaded.set);
                pass = verdict.pass();
                out["counts"] = segal_space_counts(verdict);
            } else {
                auto loaded = simpset_from_json(doc);
                if (!loaded.report.ok()) throw std::runtime_error("input failed validation");
                auto rep = segal_check(*loaded.set);
                pass = rep.pass();
                out["counts"] = segal_counts(rep.per_level);
            }
        }
    } else if (kind == "kan") {
        auto x = ws.simpset(ref);
        int up_to = opt.up_to < 0 ? x->truncation : opt.up_to;
        auto rep = classify_fibration(map_to_point(x), up_to, opt.max_enum);
        pass = rep.kan_fibration;
        out["kan_fibration"] = rep.kan_fibration;
        out["trivial_fibration"] = rep.trivial_fibration;
        if (rep.kan_witness) {
            out["witness"] = {{"n", rep.kan_witness->n},
                              {"horn_index", rep.kan_witness->horn_index},
                              {"top", rep.kan_witness->top},
                              {"bottom", rep.kan_witness->bottom}};
        }
    } else if (kind == "complete") {
        auto rep = completeness_check(*ws.bisimpset(ref));
        out["strategy"] = to_string(rep.strategy);
        out["counts"] = {{"level0", json::array({rep.objects_card, rep.hoequiv_card})}};
        out["detail"] = rep.detail;
        if (!rep.verdict) {
            out["pass"] = "undecidable";
            emit(out, opt);
            return kExitFail;
        }
        pass = *rep.verdict;
    } else if (kind == "leftfib") {
        auto f = ws.functor(ref);
        pass = is_left_fibration(nerve_map(f, opt.trunc));
    } else if (kind == "cocart") {
        auto f = ws.functor(ref);
        auto res = is_cocartesian_fibration(f);
        pass = res.ok();
        if (res.failure)
            out["failure"] = {{"base_morphism", res.failure->base_morphism},
                              {"lift_object", res.failure->lift_object},
                              {"reason", res.failure->reason}};
    } else if (kind == "cofibered") {
        auto f = ws.functor(ref);
        auto rep = is_cofibered_in_sets(f);
        pass = rep.verdict;
        json fails = json::array();
        for (const auto& fl : rep.failures)
            fails.push_back({{"morphism", fl.base_morphism},
                             {"source_lift", fl.source_lift},
                             {"lift_count", fl.lift_count}});
        out["failures"] = fails;
    } else {
        throw std::runtime_error("unknown check kind " + kind);
    }
    out["pass"] = pass;
    emit(out, opt);
    return pass ? kExitPass : kExitFail;
}

int cmd_compute(Workspace& ws, const std::string& what, const std::string& ref,
                const Options& opt) {
    if (what == "nerve") {
        emit(simpset_to_json(*nerve(ws.category(ref), opt.trunc)), opt);
    } else if (what == "classify") {
        emit(bisimpset_to_json(
                 *classifying_diagram(ws.category(ref), opt.trunc, opt.vtrunc, opt.max_enum)),
             opt);
    } else if (what == "ho") {
        emit(category_to_json(*homotopy_category(*ws.bisimpset(ref))), opt);
    } else if (what == "grothendieck") {
        json doc = ws.read_doc(ref);
        auto f = set_functor_from_json(doc, [&](const std::string& r) { return ws.category(r); });
        auto g = grothendieck(f);
        json out = with_header("grothendieck");
        out["category"] = category_to_json(*g.total);
        out["projection"] =
            functor_to_json(g.projection, "<total>", doc.at("domain").get<std::string>());
        emit(out, opt);
    } else if (what == "colimit") {
        auto f = ws.functor(ref);
        auto col = colimit(f, opt.max_enum);
        json out = with_header("colimit");
        if (col) {
            json legs = json::object();
            for (Idx i = 0; i < col->legs.size(); ++i)
                legs[f.dom->objects[i]] = f.cod->morphisms[col->legs[i]];
            out["colimit"] = {{"vertex", f.cod->objects[col->vertex]}, {"legs", legs}};
        } else {
            out["colimit"] = nullptr;
        }
        emit(out, opt);
        return col ? kExitPass : kExitFail;
    } else if (what == "adjoint") {
        json doc = ws.read_doc(ref);
        auto f = functor_from_json(doc, [&](const std::string& r) { return ws.category(r); });
        auto search = left_adjoint_via_comma(f, opt.max_enum);
        auto consistency = adjunction_consistency(f, opt.max_enum);
        json out = with_header("adjoint");
        out["consistency"] = {{"collage_cocartesian", consistency.collage_cocartesian},
                              {"cartesian_route", consistency.cartesian_route},
                              {"comma_route", consistency.comma_route},
                              {"agree", consistency.agree()}};
        if (search.adjoint) {
            out["adjoint"] = functor_to_json(*search.adjoint,
                                             doc.at("codomain").get<std::string>(),
                                             doc.at("domain").get<std::string>());
            json bijections = json::object();
            for (const auto& [key, pairs] : search.certificate->hom_bijections) {
                json rows = json::array();
                for (const auto& [u, h] : pairs)
                    rows.push_back(json::array({f.cod->morphisms[u], f.dom->morphisms[h]}));
                bijections[f.dom->objects[key.first] + "|" + f.cod->objects[key.second]] = rows;
            }
            out["certificate"] = {{"natural", search.certificate->natural},
                                  {"hom_bijections", bijections}};
        } else {
            out["adjoint"] = nullptr;
            out["failing_object"] = search.failing_object;
        }
        emit(out, opt);
        return search.adjoint ? kExitPass : kExitFail;
    } else if (what == "initial") {
        auto c = ws.category(ref);
        auto init = initial_objects(c);
        auto fin = final_objects(c);
        json out = with_header("initial");
        json ji = json::array(), jf = json::array();
        for (Idx i : init) ji.push_back(c->objects[i]);
        for (Idx i : fin) jf.push_back(c->objects[i]);
        out["initial"] = ji;
        out["final"] = jf;
        emit(out, opt);
        return init.empty() ? kExitFail : kExitPass;
    } else {
        throw std::runtime_error("unknown compute target " + what);
    }
    return kExitPass;
}

int cmd_export(Workspace& ws, const std::string& format, const std::string& ref,
               const Options& opt) {
    if (format == "json") {
        if (is_category_fixture(ref)) {
            emit(category_to_json(*ws.category(ref)), opt);
        } else if (is_simpset_fixture(ref)) {
            emit(simpset_to_json(*ws.simpset(ref)), opt);
        } else if (is_bisimpset_fixture(ref)) {
            emit(bisimpset_to_json(*ws.bisimpset(ref)), opt);
        } else {
            emit(ws.read_doc(ref), opt);  // canonicalize a stored document
        }
        return kExitPass;
    }
    if (format == "dot") {
        std::string dot = category_to_dot(*ws.category(ref));
        if (opt.out_path.empty()) {
            std::cout << dot;
        } else {
            std::ofstream out(opt.out_path);
            out << dot;
        }
        return kExitPass;
    }
    throw std::runtime_error("unknown export format " + format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite complete-Segal-space toolkit"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("SSCAT_MAX_ENUM"))
        opt.max_enum = std::strtoull(env, nullptr, 10);

    std::string ref = "-";
    std::string kind, constructor, what, format;
    std::vector<std::string> build_args;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--trunc", opt.trunc, "horizontal/simplicial truncation");
        cmd->add_option("--vtrunc", opt.vtrunc, "vertical truncation");
        cmd->add_option("--upto", opt.up_to, "largest simplex dimension for lifting checks");
        cmd->add_option("--max-enum", opt.max_enum, "enumeration bound");
        cmd->add_option("--out", opt.out_path, "write the report/object to a file");
    };

    auto* validate = app.add_subcommand("validate", "validate a JSON document");
    validate->add_option("path", ref)->required();
    add_common(validate);

    auto* build = app.add_subcommand("build", "construct a named object");
    build->add_option("constructor", constructor)->required();
    build->add_option("args", build_args);
    add_common(build);

    auto* check = app.add_subcommand("check", "run a decision procedure");
    check->add_option("kind", kind)
        ->required()
        ->check(CLI::IsMember(
            {"category", "segal", "kan", "complete", "leftfib", "cocart", "cofibered"}));
    check->add_option("ref", ref);
    add_common(check);

    auto* compute = app.add_subcommand("compute", "construct derived objects");
    compute->add_option("what", what)
        ->required()
        ->check(CLI::IsMember(
            {"nerve", "classify", "ho", "grothendieck", "colimit", "adjoint", "initial"}));
    compute->add_option("ref", ref);
    add_common(compute);

    auto* exports = app.add_subcommand("export", "emit canonical JSON or DOT");
    exports->add_option("format", format)->required()->check(CLI::IsMember({"json", "dot"}));
    exports->add_option("ref", ref);
    add_common(exports);

    CLI11_PARSE(app, argc, argv);

    Workspace ws(opt);
    try {
        if (validate->parsed()) return cmd_validate(ws, ref, opt);
        if (build->parsed()) return cmd_build(ws, constructor, build_args, opt);
        if (check->parsed()) return cmd_check(ws, kind, ref, opt);
        if (compute->parsed()) return cmd_compute(ws, what, ref, opt);
        if (exports->parsed()) return cmd_export(ws, format, ref, opt);
    } catch (const EnumerationLimitError& e) {
        json out = with_header("error");
        out["error"] = "enumeration-bound";
        out["message"] = e.what();
        std::cout << canonical_dump(out) << "\n";
        return kExitBound;
    } catch (const ParseError& e) {
        json out = with_header("error");
        out["error"] = "parse";
        out["message"] = e.what();
        std::cout << canonical_dump(out) << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        json out = with_header("error");
        out["error"] = "failure";
        out["message"] = e.what();
        std::cout << canonical_dump(out) << "\n";
        return kExitError;
    }
    return kExitError;
}
