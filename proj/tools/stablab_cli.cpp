// Batch front end: deterministic generators, verification reports and page
// dumps, all emitted as JSON/CSV files with a manifest describing the run.
//
// Exit codes: 0 success, 1 a verification ran and reported failure, 2 bad
// usage or malformed input, 3 budget overrun, 4 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablab/errors.hpp"
#include "stablab/homology.hpp"
#include "stablab/io.hpp"
#include "stablab/models.hpp"
#include "stablab/specseq.hpp"
#include "stablab/toolbox.hpp"

using nlohmann::json;
using namespace stablab;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;
constexpr int kInternal = 4;

struct Options {
    int n = 0, d = 1, m = 0, g = 0, k = 0;
    std::int64_t bound = -1;
    int words = -1;
    int qmax = 4;
    std::int64_t imax = 8;
    std::string cx;
    std::int64_t seed = 0;
    std::size_t budget_faces = 0;
    std::string out;
    bool coconnected = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw malformed_input("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw malformed_input("cannot write " + path);
    out << text;
}

json manifest_json(const std::string& command, const json& parameters, const json& budgets,
                   std::int64_t seed, const std::vector<std::string>& artifacts) {
    json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["budgets"] = budgets;
    m["seed"] = seed;
    m["artifacts"] = artifacts;
    return m;
}

// Writes the run products: <out> gets the payload with the provenance block
// spliced in, <out>.manifest.json the manifest.
void emit(const std::string& out_path, json payload, const std::string& command,
          const json& parameters, const json& budgets, std::int64_t seed) {
    json prov;
    prov["generator"] = command;
    prov["parameters"] = parameters;
    prov["budgets"] = budgets;
    payload["provenance"] = prov;
    spill(out_path, payload.dump() + "\n");
    json m = manifest_json(command, parameters, budgets, seed, {out_path});
    spill(out_path + ".manifest.json", m.dump() + "\n");
    std::cout << out_path << "\n";
}

json default_budgets(const Options& o) {
    json b;
    b["faces"] = active_face_budget();
    if (o.words >= 0) b["word_length"] = o.words;
    if (o.bound >= 0) b["crossing_bound"] = o.bound;
    return b;
}

int run_gen(const std::string& which, const Options& o) {
    std::string out = o.out.empty() ? which + ".json" : o.out;
    if (which == "quotient-simplex") {
        if (o.n < 1) throw malformed_input("quotient-simplex needs --n >= 1");
        json params = {{"n", o.n}};
        emit(out, json::parse(semi_complex_json(quotient_simplex_mod_order(o.n))),
             which, params, default_budgets(o), o.seed);
        return kOk;
    }
    if (which == "polygon-arcs") {
        if (o.m < 4) throw malformed_input("polygon-arcs needs --m >= 4");
        json params = {{"m", o.m}};
        emit(out, json::parse(complex_json(polygon_arc_complex(o.m))), which, params,
             default_budgets(o), o.seed);
        return kOk;
    }
    if (which == "wedge") {
        if (o.g < 1 || o.k < 1) throw malformed_input("wedge needs --g and --k");
        json params = {{"g", o.g}, {"k", o.k}};
        emit(out, json::parse(complex_json(wedge_join_model(o.g, o.k))), which, params,
             default_budgets(o), o.seed);
        return kOk;
    }
    if (which == "chain") {
        if (o.g < 1 || o.bound < 0) throw malformed_input("chain needs --g and --bound");
        json params = {{"g", o.g}, {"bound", o.bound}};
        auto t = chain_truncation(o.g, static_cast<int>(o.bound));
        json payload = json::parse(complex_json(t.complex));
        payload["part_sizes"] = {t.part_a.size(), t.part_b.size()};
        emit(out, std::move(payload), which, params, default_budgets(o), o.seed);
        return kOk;
    }
    if (which == "tether") {
        if (o.n < 1 || o.bound < 0 || o.words < 0)
            throw malformed_input("tether needs --n, --bound and --words");
        json params = {{"n", o.n}, {"d", o.d}, {"bound", o.bound}, {"words", o.words},
                       {"coconnected", o.coconnected}};
        auto R = tether_complex(punctured_disk(o.n, o.d), o.bound, o.coconnected, o.words);
        json payload = json::parse(complex_json(R.complex));
        payload["vertex_count"] = R.vertex_tethers.size();
        emit(out, std::move(payload), which, params, default_budgets(o), o.seed);
        return kOk;
    }
    std::cerr << "unknown generator: " << which << "\n";
    return kUsage;
}

AffineFormula parse_cx(const std::string& text) {
    // accepted: "n-k" and "(n-k)/m"
    auto fail = [&] { throw malformed_input("cannot parse connectivity formula: " + text); };
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    std::int64_t k = 0, m = 1;
    if (s.rfind("(n-", 0) == 0) {
        auto close = s.find(')');
        if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '/') fail();
        try {
            k = std::stoll(s.substr(3, close - 3));
            m = std::stoll(s.substr(close + 2));
        } catch (...) {
            fail();
        }
        if (m < 1) fail();
        if (m == 2) return AffineFormula::half_parameter_minus(k);
        return AffineFormula::custom(Rat(1, m), Rat(-k, m), s);
    }
    if (s.rfind("n-", 0) == 0) {
        try {
            k = std::stoll(s.substr(2));
        } catch (...) {
            fail();
        }
        return AffineFormula::parameter_minus(k);
    }
    fail();
    return AffineFormula::parameter_minus(2);  // unreachable
}

int run_verify(const std::string& which, const std::vector<std::string>& inputs,
               const Options& o) {
    if (which == "homology") {
        if (inputs.size() != 1) throw malformed_input("verify homology wants one complex file");
        auto parsed = any_complex_from_json(slurp(inputs[0]));
        HomologyProfile prof = parsed.is_simplicial ? reduced_homology(parsed.simplicial)
                                                    : reduced_homology(parsed.semi);
        std::string csv = betti_csv(prof);
        if (o.out.empty())
            std::cout << csv;
        else
            spill(o.out, csv);
        return kOk;
    }
    if (which == "ordered-connectivity") {
        if (inputs.size() != 1 || o.n < 1)
            throw malformed_input("verify ordered-connectivity wants a complex file and --n");
        auto parsed = any_complex_from_json(slurp(inputs[0]));
        if (!parsed.is_simplicial)
            throw malformed_input("ordered-connectivity wants a simplicial complex");
        Report r = ordered_connectivity_test(parsed.simplicial, o.n);
        std::string text = r.to_json();
        if (o.out.empty())
            std::cout << text << "\n";
        else
            spill(o.out, text + "\n");
        return r.ok() ? kOk : kCheckFailed;
    }
    if (which == "stability") {
        if (o.cx.empty()) throw malformed_input("verify stability wants --cx");
        auto h = StabilityHypotheses::standard(parse_cx(o.cx));
        auto report = stability_ranges(h, o.imax);
        std::string text = report.to_json();
        if (o.out.empty())
            std::cout << text << "\n";
        else
            spill(o.out, text + "\n");
        return report.feasible ? kOk : kCheckFailed;
    }
    std::cerr << "unknown check: " << which << "\n";
    return kUsage;
}

int run_specseq(const std::string& which, const Options& o) {
    if (which == "braid") {
        if (o.n < 1) throw malformed_input("specseq braid needs --n >= 1");
        auto res = braid_pattern(o.n, static_cast<int>(o.imax));
        std::string text = page_json(res.page, {res.report});
        if (o.out.empty())
            std::cout << text << "\n";
        else
            spill(o.out, text + "\n");
        return res.report.ok() ? kOk : kCheckFailed;
    }
    if (which == "mcg") {
        json rows = json::array();
        for (std::int64_t i = 0; i <= o.imax; ++i) {
            for (const auto& r : mcg_ranges(i)) {
                json row;
                row["i"] = i;
                row["map"] = r.map_name;
                row["description"] = r.description;
                row["iso_from"] = r.iso_from;
                if (r.surjective_from) row["surjective_from"] = *r.surjective_from;
                if (!r.note.empty()) row["note"] = r.note;
                rows.push_back(std::move(row));
            }
        }
        std::string text = rows.dump();
        if (o.out.empty())
            std::cout << text << "\n";
        else
            spill(o.out, text + "\n");
        return kOk;
    }
    std::cerr << "unknown specseq command: " << which << "\n";
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generators, homology checks and stability bookkeeping"};
    app.require_subcommand(1);

    Options o;
    std::string target;
    std::vector<std::string> inputs;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", o.n);
        cmd->add_option("--d", o.d);
        cmd->add_option("--m", o.m);
        cmd->add_option("--g", o.g);
        cmd->add_option("--k", o.k);
        cmd->add_option("--bound", o.bound);
        cmd->add_option("--words", o.words);
        cmd->add_option("--qmax", o.qmax);
        cmd->add_option("--imax", o.imax);
        cmd->add_option("--cx", o.cx);
        cmd->add_option("--seed", o.seed);
        cmd->add_option("--budget-faces", o.budget_faces);
        cmd->add_option("--out", o.out);
        cmd->add_flag("--coconnected", o.coconnected);
    };

    CLI::App* gen = app.add_subcommand("gen", "write a generated complex and its manifest");
    gen->add_option("generator", target)->required();
    add_common(gen);

    CLI::App* verify = app.add_subcommand("verify", "run a named check and report");
    verify->add_option("check", target)->required();
    verify->add_option("inputs", inputs);
    add_common(verify);

    CLI::App* specseq = app.add_subcommand("specseq", "page dumps and range arithmetic");
    specseq->add_option("what", target)->required();
    add_common(specseq);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kUsage : kOk;
    }

    if (const char* env = std::getenv("STABLAB_BUDGET_FACES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) set_face_budget(static_cast<std::size_t>(v));
    }
    if (o.budget_faces > 0) set_face_budget(o.budget_faces);

    try {
        if (gen->parsed()) return run_gen(target, o);
        if (verify->parsed()) return run_verify(target, inputs, o);
        if (specseq->parsed()) return run_specseq(target, o);
        return kUsage;
    } catch (const budget_exceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const malformed_input& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kUsage;
    } catch (const unsupported_input& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal: " << e.what() << "\n";
        return kInternal;
    }
}
