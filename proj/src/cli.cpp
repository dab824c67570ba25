#include "finabel/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "finabel/error.hpp"
#include "finabel/json_io.hpp"

namespace finabel {

namespace {

Group parse_group_arg(const std::string& s) {
    std::vector<std::int64_t> moduli;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        const std::string piece = s.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            moduli.push_back(std::stoll(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            fail(Errc::parse_error, "bad group \"" + s +
                                        "\": expected comma-separated moduli "
                                        "like \"2,4\"");
        }
        pos = comma + 1;
    }
    return make_group(moduli);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot read \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::parse_error, what + " is not valid JSON: " + e.what());
    }
}

/// The one JSON document of a command, from --json or --input.
Json load_document(const std::string& inline_json, const std::string& input_path) {
    if (!inline_json.empty() && !input_path.empty())
        fail(Errc::invalid_parameters, "--json and --input are mutually exclusive");
    if (!inline_json.empty()) return parse_json_text(inline_json, "--json");
    if (!input_path.empty())
        return parse_json_text(read_file(input_path), "\"" + input_path + "\"");
    fail(Errc::invalid_parameters, "expected a document via --json or --input");
}

/// A distribution from the command's document; --group resolves bare pmf
/// arrays (and double-checks embedded groups).
Distribution load_distribution(const std::string& group_arg, const Json& doc) {
    if (!group_arg.empty())
        return distribution_from_json(parse_group_arg(group_arg), doc);
    return distribution_from_json(doc);
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CommandResult res;
    std::string report;

    CLI::App app{"exact probability on finite abelian groups"};
    app.require_subcommand(1);

    std::string group_arg, input_path, inline_json, output_path;
    std::string method = "both";
    std::string mode = "exhaustive";
    std::string weight = "1/2";
    std::int64_t n = 2, trials = 200, max_den = 12, cap = 0;
    std::int64_t t2_p = 0, t2_n = 0, t2_k = 0;
    std::uint64_t seed = 0;

    CLI::App* classify = app.add_subcommand(
        "classify", "classify a distribution as a shifted Haar distribution or not");
    CLI::App* charfn =
        app.add_subcommand("charfn", "characteristic function of a distribution");
    CLI::App* indep = app.add_subcommand(
        "check-independence",
        "decide independence of linear forms over a request document");
    CLI::App* thm1 = app.add_subcommand(
        "verify-thm1",
        "sweep coefficient tuples and input distributions, confirming that "
        "independent forms force shifted-Haar inputs");
    CLI::App* counter = app.add_subcommand(
        "counterexample", "reproduce a published counterexample construction");
    counter->require_subcommand(1);
    CLI::App* thm2 = counter->add_subcommand(
        "thm2", "independent forms with non-idempotent inputs on Z(p)^n");
    CLI::App* prop1 = counter->add_subcommand(
        "prop1", "a mixture with full support kept independent by two forms");
    CLI::App* subgroups =
        app.add_subcommand("subgroups", "enumerate all subgroups of a group");
    CLI::App* automorphisms =
        app.add_subcommand("automorphisms", "enumerate all automorphisms of a group");

    for (CLI::App* cmd : {classify, charfn, indep, thm1, thm2, prop1, subgroups,
                          automorphisms})
        cmd->add_option("--output", output_path, "write the report to this file");
    for (CLI::App* cmd : {classify, charfn, indep}) {
        cmd->add_option("--json", inline_json, "inline JSON document");
        cmd->add_option("--input", input_path, "path to a JSON document");
    }
    for (CLI::App* cmd : {classify, charfn})
        cmd->add_option("--group", group_arg,
                        "group moduli, comma separated (resolves bare pmf arrays)");
    CLI::Option* method_opt =
        indep->add_option("--method", method, "pmf, charfn, or both")
            ->check(CLI::IsMember({"pmf", "charfn", "both"}));
    indep->add_option("--cap", cap, "override the enumeration step cap");

    thm1->add_option("--group", group_arg, "group moduli, comma separated")
        ->required();
    thm1->add_option("--n", n, "number of forms (and of input variables)");
    thm1->add_option("--mode", mode, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    thm1->add_option("--trials", trials, "distribution tuples per coefficient tuple");
    thm1->add_option("--seed", seed, "seed for the sampled distributions");
    thm1->add_option("--max-denominator", max_den,
                     "largest denominator drawn for random masses");
    thm1->add_option("--cap", cap, "override the step and tuple caps");

    thm2->add_option("--p", t2_p, "odd prime, the cyclic factor")->required();
    thm2->add_option("--n", t2_n, "number of factors and of inputs")->required();
    thm2->add_option("--k", t2_k, "number of forms")->required();

    prop1->add_option("--group", group_arg, "group moduli, comma separated")
        ->required();
    prop1->add_option("--b", weight, "mixture weight in (0,1), e.g. 1/2");

    subgroups->add_option("--group", group_arg, "group moduli, comma separated")
        ->required();
    subgroups->add_option("--cap", cap, "largest group order to enumerate");
    automorphisms->add_option("--group", group_arg, "group moduli, comma separated")
        ->required();
    automorphisms->add_option("--cap", cap, "largest group order to enumerate");

    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            const CLI::App* target = &app;
            while (!target->get_subcommands().empty())
                target = target->get_subcommands().front();
            res.out = target->help();
            return res;
        } catch (const CLI::ParseError& e) {
            res.err = std::string(e.what()) + "\n";
            res.exit_code = 2;
            return res;
        }
    }

    try {
        if (classify->parsed()) {
            Distribution d =
                load_distribution(group_arg, load_document(inline_json, input_path));
            report = dump_pretty(to_json(classify_idempotent(d)));
        } else if (charfn->parsed()) {
            Distribution d =
                load_distribution(group_arg, load_document(inline_json, input_path));
            report = dump_pretty(to_json(char_fn(d)));
        } else if (indep->parsed()) {
            Json doc = load_document(inline_json, input_path);
            Group g = group_from_json(doc.contains("group") ? doc["group"] : doc,
                                      "group");
            if (!doc.contains("dists"))
                fail(Errc::parse_error, "dists: missing field");
            std::vector<Distribution> dists;
            for (std::size_t i = 0; i < doc["dists"].size(); ++i)
                dists.push_back(distribution_from_json(
                    g, doc["dists"][i], "dists[" + std::to_string(i) + "]"));
            if (!doc.contains("forms"))
                fail(Errc::parse_error, "forms: missing field");
            FormSystem fs = form_system_from_json(g, doc["forms"]);
            if (method_opt->count() == 0 && doc.contains("method")) {
                if (!doc["method"].is_string())
                    fail(Errc::parse_error, "method: expected a string");
                method = doc["method"].get<std::string>();
                if (method != "pmf" && method != "charfn" && method != "both")
                    fail(Errc::parse_error,
                         "method: expected pmf, charfn, or both, got \"" + method +
                             "\"");
            }
            const std::int64_t step_cap = cap > 0 ? cap : default_step_cap;
            Json out = Json::object();
            bool agree = true;
            if (method == "pmf") {
                out = to_json(are_independent_pmf(dists, fs, step_cap));
            } else if (method == "charfn") {
                out = to_json(are_independent_charfn(dists, fs, step_cap));
            } else {
                IndependenceReport by_pmf = are_independent_pmf(dists, fs, step_cap);
                IndependenceReport by_charfn =
                    are_independent_charfn(dists, fs, step_cap);
                agree = by_pmf.independent == by_charfn.independent;
                out["pmf"] = to_json(by_pmf);
                out["charfn"] = to_json(by_charfn);
                out["agree"] = agree;
            }
            report = dump_pretty(out);
            if (!agree) {
                res.err = "the two methods disagree\n";
                res.exit_code = 1;
            }
        } else if (thm1->parsed()) {
            Group g = parse_group_arg(group_arg);
            Thm1Config cfg;
            cfg.mode = mode == "sampled" ? Thm1Mode::sampled : Thm1Mode::exhaustive;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.max_denominator = max_den;
            if (cap > 0) {
                cfg.step_cap = cap;
                cfg.tuple_cap = cap;
            }
            VerificationReport rep = verify_theorem1(g, n, cfg);
            report = dump_pretty(to_json(rep));
            if (!rep.violations.empty() || rep.remark1_failures > 0) {
                res.err = "violations found\n";
                res.exit_code = 1;
            }
        } else if (thm2->parsed() || prop1->parsed()) {
            CounterexampleBundle b =
                thm2->parsed() ? thm2_counterexample(t2_p, t2_n, t2_k)
                               : prop1_counterexample(parse_group_arg(group_arg),
                                                      Rat::parse(weight));
            report = dump_pretty(to_json(b));
            const bool claims_ok = b.forms_independent && b.all_nonidempotent &&
                                   b.full_support &&
                                   (!b.pmf_checked || b.pmf_independent);
            if (!claims_ok) {
                res.err = "a recomputed claim failed\n";
                res.exit_code = 1;
            }
        } else if (subgroups->parsed()) {
            Group g = parse_group_arg(group_arg);
            std::vector<Subgroup> subs =
                cap > 0 ? enumerate_subgroups(g, cap) : enumerate_subgroups(g);
            Json out = Json::object();
            out["group"] = to_json(g);
            out["count"] = subs.size();
            Json arr = Json::array();
            for (const Subgroup& s : subs) arr.push_back(to_json(s));
            out["subgroups"] = std::move(arr);
            report = dump_pretty(out);
        } else if (automorphisms->parsed()) {
            Group g = parse_group_arg(group_arg);
            std::vector<Homomorphism> autos = cap > 0
                                                  ? enumerate_automorphisms(g, cap)
                                                  : enumerate_automorphisms(g);
            Json out = Json::object();
            out["group"] = to_json(g);
            out["count"] = autos.size();
            Json arr = Json::array();
            for (const Homomorphism& h : autos) arr.push_back(to_json(h));
            out["automorphisms"] = std::move(arr);
            report = dump_pretty(out);
        }
    } catch (const Error& e) {
        res.err = std::string(e.what()) + "\n";
        res.exit_code = 2;
        return res;
    } catch (const std::exception& e) {
        res.err = std::string("internal error: ") + e.what() + "\n";
        res.exit_code = 2;
        return res;
    }

    if (!output_path.empty()) {
        std::ofstream outf(output_path, std::ios::binary);
        if (!outf || !(outf << report)) {
            res.err = "cannot write \"" + output_path + "\"\n";
            res.exit_code = 2;
            return res;
        }
    } else {
        res.out = report;
    }
    return res;
}

}  // namespace finabel
