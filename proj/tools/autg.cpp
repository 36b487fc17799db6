// autg: command-line front end for automaton-group computations.
// Data goes to stdout (JSON/CSV/DOT per --format); diagnostics to stderr.
// Exit codes: 0 success, 1 analysis failure, 2 usage error.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "autg/classify.hpp"
#include "autg/group.hpp"
#include "autg/order.hpp"
#include "autg/spectra.hpp"

using namespace autg;
namespace fs = std::filesystem;

namespace {

struct SourceOpts {
    int preset = -1;
    std::string file;
    std::string inline_text;
    std::string registry_file;
};

void add_source(CLI::App* cmd, SourceOpts* src) {
    auto* p = cmd->add_option("--preset", src->preset, "paper automaton index (e.g. 741)");
    auto* f = cmd->add_option("--file", src->file, "wreath recursion file");
    auto* i = cmd->add_option("--inline", src->inline_text, "wreath recursion text");
    cmd->add_option("--registry", src->registry_file, "preset registry file (tsv)");
    p->excludes(f)->excludes(i);
    f->excludes(i);
}

MealyAutomaton load_source(const SourceOpts& src) {
    int given = (src.preset >= 0) + !src.file.empty() + !src.inline_text.empty();
    if (given != 1) throw CLI::ValidationError("exactly one of --preset/--file/--inline required");
    if (src.preset >= 0) {
        if (!src.registry_file.empty())
            return PresetRegistry::from_file(src.registry_file).automaton(src.preset);
        return PresetRegistry::builtin().automaton(src.preset);
    }
    if (!src.file.empty()) {
        std::ifstream in(src.file);
        if (!in) throw std::runtime_error("cannot open " + src.file);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_recursion(ss.str());
    }
    return parse_recursion(src.inline_text);
}

void write_output(const std::string& data, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << data;
        if (!data.empty() && data.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(out_path);
        f << data;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"automaton groups on the binary rooted tree"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "json|csv|dot")->capture_default_str();
    std::string out_path;
    app.add_option("--out", out_path, "write output to a file or directory");

    SourceOpts src;

    // info
    auto* info = app.add_subcommand("info", "automaton and group summary");
    add_source(info, &src);
    int info_sf = 6, info_gr = 5;
    info->add_option("--levels", info_sf, "SF levels")->capture_default_str();
    info->add_option("--radius", info_gr, "growth radius")->capture_default_str();

    // act
    auto* act = app.add_subcommand("act", "apply a word to a vertex or ray");
    add_source(act, &src);
    std::string act_word_s, act_input;
    act->add_option("--word", act_word_s, "group word")->required();
    act->add_option("--input", act_input, "finite word, or ray head:period")->required();

    // mul
    auto* mul = app.add_subcommand("mul", "multiply words, print canonical element");
    add_source(mul, &src);
    std::vector<std::string> mul_words;
    mul->add_option("--word", mul_words, "group words (product, left to right)")->required();

    // order
    auto* ord = app.add_subcommand("order", "order of an element with certificate");
    add_source(ord, &src);
    std::string ord_word;
    ord->add_option("--word", ord_word)->required();
    OrderBudget ob;
    ord->add_option("--budget-pow2", ob.max_pow2_log)->capture_default_str();
    ord->add_option("--budget-nodes", ob.max_nodes)->capture_default_str();
    ord->add_option("--budget-depth", ob.max_depth)->capture_default_str();

    // transitive
    auto* trans = app.add_subcommand("transitive", "spherical transitivity of an element");
    add_source(trans, &src);
    std::string trans_word;
    trans->add_option("--word", trans_word)->required();

    // growth
    auto* gr = app.add_subcommand("growth", "ball sizes over S u S^-1");
    add_source(gr, &src);
    int gr_radius = 6;
    gr->add_option("--radius", gr_radius)->capture_default_str();

    // sf
    auto* sf = app.add_subcommand("sf", "level quotient orders |G / St(n)|");
    add_source(sf, &src);
    int sf_levels = 8;
    sf->add_option("--levels", sf_levels)->capture_default_str();

    // relators
    auto* rels = app.add_subcommand("relators", "enumerate short relators");
    add_source(rels, &src);
    int rel_len = 8;
    rels->add_option("--max-len", rel_len)->capture_default_str();

    // nucleus
    auto* nuc = app.add_subcommand("nucleus", "contraction verdict");
    add_source(nuc, &src);
    NucleusCaps caps;
    nuc->add_option("--budget-size", caps.max_size)->capture_default_str();
    nuc->add_option("--budget-witness-len", caps.witness_word_len)->capture_default_str();

    // selfrep
    auto* srep = app.add_subcommand("selfrep", "self-replication verdict");
    add_source(srep, &src);

    // finite
    auto* fin = app.add_subcommand("finite", "finiteness verdict");
    add_source(fin, &src);
    size_t fin_cap = 100000;
    fin->add_option("--budget-cap", fin_cap)->capture_default_str();

    // schreier
    auto* sch = app.add_subcommand("schreier", "level-n Schreier graph");
    add_source(sch, &src);
    int sch_level = 4;
    sch->add_option("--levels", sch_level)->capture_default_str();

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "Markov operator spectra");
    add_source(spec, &src);
    int spec_level = 6;
    spec->add_option("--levels", spec_level)->capture_default_str();

    // dual
    auto* du = app.add_subcommand("dual", "dual automaton and bireversibility");
    add_source(du, &src);

    // dot
    auto* dot = app.add_subcommand("dot", "Moore diagram in DOT");
    add_source(dot, &src);

    // classify
    auto* cls = app.add_subcommand("classify", "full 3-state classification");
    ClassifyBudgets budgets;
    cls->add_option("--jobs", budgets.jobs)->capture_default_str();
    cls->add_option("--budget-finiteness", budgets.finiteness_cap)->capture_default_str();

    // regress
    auto* reg = app.add_subcommand("regress", "regression against the published tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (info->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            ReportBudget rb;
            rb.sf_levels = info_sf;
            rb.gr_radius = info_gr;
            nlohmann::json j = nlohmann::json::parse(group_report_json(g, rb));
            j["states"] = a.names();
            j["d"] = a.d();
            j["recursion"] = a.to_recursion_text();
            write_output(j.dump(2), out_path);
        } else if (act->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupWord w = parse_word(a, act_word_s);
            nlohmann::json j;
            if (act_input.find(':') != std::string::npos) {
                Ray r = Ray::parse(act_input);
                Ray img = act_ray(Element::of_word(a, w), r);
                j["ray"] = img.to_string();
                j["prefix"] = img.prefix(32);
            } else {
                j["image"] = act_word(a, w, act_input);
            }
            write_output(j.dump(2), out_path);
        } else if (mul->parsed()) {
            MealyAutomaton a = load_source(src);
            Element e = Element::identity(a.d());
            for (const std::string& ws : mul_words) e = e * Element::of_word(a, parse_word(a, ws));
            nlohmann::json j;
            j["root_perm"] = e.root_perm().to_string();
            j["state_count"] = e.size();
            j["trivial"] = e.is_identity();
            std::vector<std::string> secs;
            for (int x = 0; x < e.d(); ++x) {
                Element s = e.section(std::string(1, static_cast<char>('0' + x)));
                secs.push_back(s.is_identity() ? "1" : ("states:" + std::to_string(s.size())));
            }
            j["sections"] = secs;
            write_output(j.dump(2), out_path);
        } else if (ord->parsed()) {
            MealyAutomaton a = load_source(src);
            Element e = Element::of_word(a, parse_word(a, ord_word));
            OrderVerdict v = order_of(e, ob);
            nlohmann::json j;
            j["verdict"] = v.to_string();
            write_output(j.dump(2), out_path);
            if (v.kind == OrderVerdict::Kind::kUnknown) return 1;
        } else if (trans->parsed()) {
            MealyAutomaton a = load_source(src);
            Element e = Element::of_word(a, parse_word(a, trans_word));
            nlohmann::json j;
            j["spherically_transitive"] = is_spherically_transitive(e);
            write_output(j.dump(2), out_path);
        } else if (gr->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            nlohmann::json j;
            j["gr"] = growth_series(g, gr_radius);
            write_output(j.dump(2), out_path);
        } else if (sf->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            nlohmann::json j;
            std::vector<int> exps;
            std::vector<std::string> decimals;
            for (int n = 0; n <= sf_levels; ++n) {
                LevelQuotient q = level_quotient_order(g, n);
                exps.push_back(q.log2_order);
                decimals.push_back(q.order_decimal());
            }
            j["log2"] = exps;
            j["orders"] = decimals;
            write_output(j.dump(2), out_path);
        } else if (rels->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            std::vector<std::string> out;
            for (const GroupWord& w : find_relators(g, rel_len))
                out.push_back(word_to_string(a, w));
            nlohmann::json j;
            j["relators"] = out;
            write_output(j.dump(2), out_path);
        } else if (nuc->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            NucleusResult r = nucleus(g, caps);
            nlohmann::json j;
            j["verdict"] = r.to_string();
            if (r.kind == NucleusResult::Kind::kContracting) j["nucleus_size"] = r.nucleus.size();
            if (r.kind == NucleusResult::Kind::kNonContracting) {
                j["witness_word"] = r.witness_word;
                j["witness_vertex"] = r.witness_vertex;
                j["order_certificate"] = r.witness_order->describe();
            }
            write_output(j.dump(2), out_path);
            if (r.kind == NucleusResult::Kind::kCapExceeded) return 1;
        } else if (srep->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            SelfReplicationVerdict v = self_replicating(g);
            nlohmann::json j;
            j["verdict"] = v.to_string();
            write_output(j.dump(2), out_path);
            if (v.kind == SelfReplicationVerdict::Kind::kUnknown) return 1;
        } else if (fin->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            FinitenessResult r = finiteness(g, fin_cap);
            nlohmann::json j;
            j["verdict"] = r.to_string();
            if (r.kind == FinitenessResult::Kind::kFinite) j["order"] = r.order;
            write_output(j.dump(2), out_path);
            if (r.kind == FinitenessResult::Kind::kUnknown) return 1;
        } else if (sch->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            SchreierGraph graph = schreier_graph(g, sch_level);
            if (format == "dot") {
                write_output(graph.to_dot(), out_path);
            } else if (format == "csv") {
                write_output(graph.to_edge_list(), out_path);
            } else {
                nlohmann::json j;
                j["level"] = graph.level;
                j["vertices"] = graph.vertices;
                j["edges"] = graph.edges.size();
                j["components"] = graph.component_count();
                write_output(j.dump(2), out_path);
            }
        } else if (spec->parsed()) {
            MealyAutomaton a = load_source(src);
            GroupHandle g(a);
            SpectrumUnion u = spectrum_union(g, spec_level);
            if (format == "csv") {
                write_output(histogram_csv(u.histogram), out_path);
            } else {
                nlohmann::json j = nlohmann::json::array();
                for (const SpectrumResult& s : u.per_level)
                    j.push_back(nlohmann::json::parse(spectrum_json(s)));
                write_output(j.dump(2), out_path);
            }
        } else if (du->parsed()) {
            MealyAutomaton a = load_source(src);
            DualResult r = dual_automaton(a);
            nlohmann::json j;
            j["dual"] = r.dual.to_recursion_text();
            j["dual_invertible"] = r.dual_invertible;
            j["bireversible"] = r.bireversible;
            write_output(j.dump(2), out_path);
        } else if (dot->parsed()) {
            MealyAutomaton a = load_source(src);
            write_output(moore_dot(a), out_path);
        } else if (cls->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            ClassificationResult result = run_classification(budgets);
            RunManifest manifest;
            manifest.budgets = budgets;
            manifest.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (!out_path.empty()) {
                fs::create_directories(out_path);
                std::ofstream(fs::path(out_path) / "summary.json") << result.summary.to_json();
                std::ofstream(fs::path(out_path) / "classes.csv") << result.classes_csv();
                std::ofstream(fs::path(out_path) / "manifest.json") << manifest.to_json();
                for (const ClassRecord& rec : result.classes) {
                    nlohmann::json j;
                    j["representative"] = rec.representative;
                    j["member_count"] = rec.member_count;
                    j["minimized_states"] = rec.minimized_states;
                    j["fingerprint"] = rec.fingerprint.key();
                    j["status"] = rec.status;
                    std::ofstream(fs::path(out_path) /
                                  ("class_" + std::to_string(rec.representative) + ".json"))
                        << j.dump(2);
                }
                std::cerr << "wrote " << result.classes.size() << " class reports to " << out_path
                          << "\n";
            } else {
                std::cout << result.summary.to_json() << "\n";
            }
        } else if (reg->parsed()) {
            TableRegression r = regression_against_tables();
            write_output(r.to_json(), out_path);
            if (!r.all_ok) return 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error (line " << e.line << ", col " << e.column << "): " << e.what()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
