// Command-line front end: exact torus-equivariant Schubert calculus on
// generalized flag varieties via fixed-point localization.
//
// Subcommands: billey, schubert, expand, basis, character, verify <check>,
// catalogue.  All output is plain text or JSON on stdout (or --output FILE);
// exit status 0 = success / all hard checks pass, 1 = a hard check failed,
// 2 = malformed input or environment failure.

#include <CLI11.hpp>
#include <gkm.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gkm;

// ------------------------------------------------------------- utilities --

// Parabolic subsets on the command line are comma-separated 1-based simple
// generator indices; the empty string denotes the empty subset (P = B).
ParabolicSubset parse_subset(const std::string& text, const WeylGroup& W) {
    return normalize_parabolic(word_from_string(text), W.rank());
}

// Expression grammar: factors are generator words ("1,2", "e"), separated by
// '|' or '*'; the empty product is the identity class.
std::vector<Word> parse_expression(const std::string& text) {
    std::vector<Word> factors;
    std::string current;
    auto flush = [&] {
        if (current.find_first_not_of(" \t") == std::string::npos)
            throw spec_error("empty factor in expression: \"" + text + "\"");
        factors.push_back(word_from_string(current));
        current.clear();
    };
    for (char ch : text) {
        if (ch == '|' || ch == '*')
            flush();
        else
            current += ch;
    }
    flush();
    return factors;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw spec_error("cannot open output file: " + output_path);
    out << text;
    if (!out) throw spec_error("failed writing output file: " + output_path);
}

// Optional disk cache for localization columns; disabled by --no-cache.
struct CacheSession {
    std::optional<BilleyDiskCache> cache;

    explicit CacheSession(bool enabled) {
        if (enabled) cache.emplace();
    }
    void load_column(BilleyTable& table, int u_idx) {
        if (cache) cache->load_column(table, u_idx);
    }
    void preload(BilleyTable& table) {
        if (cache) cache->preload(table);
    }
    void store(BilleyTable& table) {
        if (cache) cache->store_ready(table);
    }
    const BilleyDiskCache* ptr() const { return cache ? &*cache : nullptr; }
};

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        const auto a = tok.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        const auto b = tok.find_last_not_of(" \t");
        out.push_back(tok.substr(a, b - a + 1));
    }
    return out;
}

// ------------------------------------------------------------- commands ---

struct BilleyOpts {
    std::string type, v, u;
    bool json = false;
    bool no_cache = false;
};

int run_billey(const BilleyOpts& o) {
    auto W = group_for_spec(o.type);
    const int v_idx = W->from_word_index(word_from_string(o.v));
    const int u_idx = W->from_word_index(word_from_string(o.u));
    BilleyTable table(W);
    CacheSession cache(!o.no_cache);
    cache.load_column(table, u_idx);
    const Poly value = table.sigma(v_idx, u_idx);
    if (o.json) {
        Json j;
        j[word_to_string(W->word(u_idx))] = poly_to_string(value);
        emit(json_to_text(j), "");
    } else {
        std::cout << poly_to_string(value) << "\n";
    }
    cache.store(table);
    return 0;
}

struct SchubertOpts {
    std::string type, w, flavor = "GB", parabolic, output;
    bool json = false;
    bool no_cache = false;
};

int run_schubert(const SchubertOpts& o) {
    auto W = group_for_spec(o.type);
    const Flavor f = flavor_from_code(o.flavor);
    auto sp = space_for(W, f, parse_subset(o.parabolic, *W));
    const int w_idx = W->from_word_index(word_from_string(o.w));
    BilleyTable table(W);
    CacheSession cache(!o.no_cache);
    cache.preload(table);
    const EquivariantClass cls = schubert_class(sp, w_idx, table);
    if (o.json) {
        emit(json_to_text(class_to_json(cls)), o.output);
    } else {
        std::ostringstream out;
        for (int k = 0; k < sp->size(); ++k)
            out << word_to_string(W->word(sp->points[k])) << ": "
                << poly_to_string(cls.value_at_position(k)) << "\n";
        emit(out.str(), o.output);
    }
    cache.store(table);
    return 0;
}

struct ExpandOpts {
    std::string type, expr, basis = "schubert", parabolic, output;
    bool json = false;
    bool no_cache = false;
};

int run_expand(const ExpandOpts& o) {
    auto W = group_for_spec(o.type);
    if (o.basis != "schubert" && o.basis != "parabolic")
        throw spec_error("unknown expansion basis: " + o.basis);
    auto full = Space::full_flag(W);
    BilleyTable table(W);
    CacheSession cache(!o.no_cache);
    cache.preload(table);
    EquivariantClass product = schubert_class(full, W->identity_index(), table);
    for (const Word& factor : parse_expression(o.expr))
        product = product * schubert_class(full, W->from_word_index(factor), table);

    Json j;
    j["root_system"] = W->root_system_ptr()->spec_string();
    j["basis"] = o.basis;
    Json coeffs = Json::object();
    std::ostringstream lines;
    if (o.basis == "schubert") {
        for (const auto& [u, coeff] : expand_in_schubert(product, table)) {
            const std::string key = word_to_string(W->word(u));
            const std::string val = poly_to_string(coeff);
            coeffs[key] = val;
            lines << key << ": " << val << "\n";
        }
    } else {
        const ParabolicSubset p = parse_subset(o.parabolic, *W);
        j["parabolic"] = p;
        ParabolicBasis basis(W, p, table);
        for (const auto& [vw, coeff] : expand_in_parabolic_basis(product, basis, table)) {
            const std::string key =
                word_to_string(W->word(vw.first)) + "|" + word_to_string(W->word(vw.second));
            const std::string val = poly_to_string(coeff);
            coeffs[key] = val;
            lines << key << ": " << val << "\n";
        }
    }
    j["coefficients"] = std::move(coeffs);
    emit(o.json ? json_to_text(j) : lines.str(), o.output);
    cache.store(table);
    return 0;
}

struct BasisOpts {
    std::string type, parabolic, output;
    bool json = false;
    bool no_cache = false;
};

int run_basis(const BasisOpts& o) {
    auto W = group_for_spec(o.type);
    const ParabolicSubset p = parse_subset(o.parabolic, *W);
    BilleyTable table(W);
    CacheSession cache(!o.no_cache);
    cache.preload(table);
    const ParabolicBasis basis(W, p, table);
    if (o.json) {
        Json j;
        j["root_system"] = W->root_system_ptr()->spec_string();
        j["parabolic"] = p;
        Json pairs = Json::array();
        for (const BasisPair& pr : basis.pairs()) {
            Json e;
            e["v"] = word_to_string(W->word(pr.v));
            e["w"] = word_to_string(W->word(pr.w));
            e["product"] = word_to_string(W->word(pr.product));
            pairs.push_back(std::move(e));
        }
        j["pairs"] = std::move(pairs);
        emit(json_to_text(j), o.output);
    } else {
        std::ostringstream lines;
        for (const BasisPair& pr : basis.pairs())
            lines << word_to_string(W->word(pr.v)) << "|" << word_to_string(W->word(pr.w))
                  << " -> " << word_to_string(W->word(pr.product)) << "\n";
        emit(lines.str(), o.output);
    }
    cache.store(table);
    return 0;
}

struct CharacterOpts {
    std::string type, parabolic, space, output;
    bool json = false;
    bool no_cache = false;
};

int run_character(const CharacterOpts& o) {
    auto W = group_for_spec(o.type);
    const ParabolicSubset p = parse_subset(o.parabolic, *W);
    const Flavor f = flavor_from_code(o.space);
    BilleyTable table(W);
    CacheSession cache(!o.no_cache);
    cache.preload(table);
    const CharacterTable t = character(W, p, f, table);
    if (o.json) {
        emit(json_to_text(character_to_json(*W, p, f, t)), o.output);
    } else {
        std::ostringstream lines;
        for (int w : t.subgroup)
            lines << word_to_string(W->word(w)) << ": " << poly_to_string(t.value(w)) << "\n";
        emit(lines.str(), o.output);
    }
    cache.store(table);
    return 0;
}

struct VerifyOpts {
    std::string type, parabolic, p, q, output;
    int det_cap = default_det_cap;
    bool no_cache = false;
};

int run_verify(const std::string& check, const VerifyOpts& o) {
    auto W = group_for_spec(o.type);
    const std::string spec = W->root_system_ptr()->spec_string();
    BilleyTable table(W);
    CacheSession cache(!o.no_cache);
    cache.preload(table);

    Json report;
    report["check"] = check;
    bool hard_ok = true;

    if (check == "billey") {
        report["root_system"] = spec;
        report.update(detail::run_billey_check(W, table, hard_ok));
    } else if (check == "leray-hirsch") {
        const ParabolicSubset p = parse_subset(o.parabolic, *W);
        const ParabolicBasis basis(W, p, table);
        Json entry = detail::leray_hirsch_subset_entry(W, table, basis, p, o.det_cap);
        hard_ok = entry["status"] == "ok";
        report["root_system"] = spec;
        report.update(entry);
    } else if (check == "blocks") {
        const ParabolicSubset p = parse_subset(o.parabolic, *W);
        const ParabolicBasis basis(W, p, table);
        Json entry = detail::blocks_subset_entry(basis, table, p);
        hard_ok = entry["status"] == "ok";
        report["root_system"] = spec;
        report.update(entry);
    } else if (check == "springer") {
        const ParabolicSubset p = parse_subset(o.parabolic, *W);
        Json entry = detail::springer_subset_entry(W, table, p);
        hard_ok = entry["status"] == "ok";
        report.update(entry);
    } else if (check == "lemma43") {
        const ParabolicSubset p = parse_subset(o.parabolic, *W);
        const ParabolicBasis basis(W, p, table);
        Json entry = detail::lemma43_subset_entry(basis, table, p);
        hard_ok = entry["status"] == "ok";
        report["root_system"] = spec;
        report.update(entry);
    } else if (check == "distinct" || check == "distinct-ordinary") {
        const ParabolicSubset p = parse_subset(o.p, *W);
        const ParabolicSubset q = parse_subset(o.q, *W);
        const bool ordinary = check == "distinct-ordinary";
        const BasisComparisonReport rep = bases_distinct(
            W, p, q, ordinary ? BasisComparisonMode::ordinary : BasisComparisonMode::equivariant,
            table);
        report.update(comparison_to_json(spec, p, q, rep));
        std::vector<std::string> witness;
        if (ordinary) {
            // Ordinary-mode findings are evidence, never assertions.
            report["status"] = "info";
        } else {
            hard_ok = rep.agrees_with_prediction;
            if (!hard_ok) witness.push_back("verdict contradicts the prediction");
            Json dynkin = Json::array();
            if (W->root_system_ptr()->spec().irreducible() && rep.predicted_distinct) {
                try {
                    const DynkinPathWitness pw = dynkin_path_witness(W, p, q, table);
                    dynkin.push_back(dynkin_witness_to_json(spec, p, q, pw));
                    if (!pw.distinct || !rep.observed_distinct) {
                        hard_ok = false;
                        witness.push_back("path witness disagrees with the set comparison");
                    }
                } catch (const std::exception& e) {
                    hard_ok = false;
                    witness.push_back(std::string("path witness failed: ") + e.what());
                }
            }
            report["dynkin_witnesses"] = std::move(dynkin);
            report["status"] = hard_ok ? "ok" : "fail";
            if (!witness.empty()) report["failure_witness"] = witness;
        }
    } else {
        throw spec_error("unknown verify check: " + check);
    }

    emit(json_to_text(report), o.output);
    cache.store(table);
    return hard_ok ? 0 : 1;
}

struct CatalogueOpts {
    std::string config_path, systems, checks, output;
    int max_group_order = -1;
    int det_cap = -1;
    bool systems_set = false, checks_set = false, output_set = false;
    bool no_cache = false;
};

int run_catalogue(const CatalogueOpts& o) {
    CatalogueConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path, std::ios::binary);
        if (!in) throw spec_error("cannot open config file: " + o.config_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        Json j;
        try {
            j = Json::parse(buf.str());
        } catch (const Json::parse_error& e) {
            throw spec_error("config file is not valid JSON: " + std::string(e.what()));
        }
        cfg = catalogue_config_from_json(j);
    }
    if (o.systems_set) cfg.systems = split_commas(o.systems);
    if (o.checks_set) cfg.checks = split_commas(o.checks);
    if (o.max_group_order >= 0) cfg.max_group_order = o.max_group_order;
    if (o.det_cap >= 0) cfg.det_cap = o.det_cap;
    if (o.output_set) cfg.output = o.output;

    CacheSession cache(!o.no_cache);
    const CatalogueOutcome outcome = gkm::run_catalogue(cfg, cache.ptr());
    emit(json_to_text(outcome.report), cfg.output);
    return outcome.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact torus-equivariant Schubert calculus via fixed-point localization"};
    app.require_subcommand(1);
    int rc = 0;

    BilleyOpts billey;
    auto* cmd_billey = app.add_subcommand(
        "billey", "Evaluate one localization: the restriction of a Schubert class to a fixed point");
    cmd_billey->add_option("--type", billey.type, "Root system, e.g. A2 or A1xA1")->required();
    cmd_billey->add_option("--v", billey.v, "Schubert class word (e.g. 1,2 or e)")->required();
    cmd_billey->add_option("--u", billey.u, "Fixed-point word")->required();
    cmd_billey->add_flag("--json", billey.json, "Emit a one-entry localizations fragment");
    cmd_billey->add_flag("--no-cache", billey.no_cache, "Skip the localization disk cache");
    cmd_billey->callback([&] { rc = run_billey(billey); });

    SchubertOpts schubert;
    auto* cmd_schubert = app.add_subcommand(
        "schubert", "Print a full Schubert class as its table of fixed-point restrictions");
    cmd_schubert->add_option("--type", schubert.type, "Root system")->required();
    cmd_schubert->add_option("--w", schubert.w, "Schubert class word")->required();
    cmd_schubert->add_option("--flavor", schubert.flavor,
                             "Space: GB (full flag), GP (partial flag), PB (fiber)");
    cmd_schubert->add_option("--parabolic", schubert.parabolic,
                             "Parabolic generators for GP/PB, e.g. 1,3 (empty = none)");
    cmd_schubert->add_flag("--json", schubert.json, "Emit the class as JSON");
    cmd_schubert->add_option("--output", schubert.output, "Write to file instead of stdout");
    cmd_schubert->add_flag("--no-cache", schubert.no_cache, "Skip the localization disk cache");
    cmd_schubert->callback([&] { rc = run_schubert(schubert); });

    ExpandOpts expand;
    auto* cmd_expand = app.add_subcommand(
        "expand", "Multiply Schubert classes and expand the product in a module basis");
    cmd_expand->add_option("--type", expand.type, "Root system")->required();
    cmd_expand->add_option("--expr", expand.expr,
                           "Product of class words separated by | or *, e.g. \"1|2\"")
        ->required();
    cmd_expand->add_option("--basis", expand.basis, "Expansion basis: schubert or parabolic");
    cmd_expand->add_option("--parabolic", expand.parabolic,
                           "Parabolic generators for --basis parabolic");
    cmd_expand->add_flag("--json", expand.json, "Emit the coefficients as JSON");
    cmd_expand->add_option("--output", expand.output, "Write to file instead of stdout");
    cmd_expand->add_flag("--no-cache", expand.no_cache, "Skip the localization disk cache");
    cmd_expand->callback([&] { rc = run_expand(expand); });

    BasisOpts basis;
    auto* cmd_basis = app.add_subcommand(
        "basis", "List the coset-representative/subgroup pair basis for a parabolic subset");
    cmd_basis->add_option("--type", basis.type, "Root system")->required();
    cmd_basis->add_option("--parabolic", basis.parabolic,
                          "Parabolic generators, e.g. 1,3 (empty = none)");
    cmd_basis->add_flag("--json", basis.json, "Emit the pair list as JSON");
    cmd_basis->add_option("--output", basis.output, "Write to file instead of stdout");
    cmd_basis->add_flag("--no-cache", basis.no_cache, "Skip the localization disk cache");
    cmd_basis->callback([&] { rc = run_basis(basis); });

    CharacterOpts character;
    auto* cmd_character = app.add_subcommand(
        "character", "Polynomial-valued character of the parabolic subgroup's relabeling action");
    cmd_character->add_option("--type", character.type, "Root system")->required();
    cmd_character->add_option("--parabolic", character.parabolic,
                              "Parabolic generators, e.g. 2 (empty = none)");
    cmd_character->add_option("--space", character.space, "Module: GB (full flag) or PB (fiber)")
        ->required();
    cmd_character->add_flag("--json", character.json, "Emit the character table as JSON");
    cmd_character->add_option("--output", character.output, "Write to file instead of stdout");
    cmd_character->add_flag("--no-cache", character.no_cache, "Skip the localization disk cache");
    cmd_character->callback([&] { rc = run_character(character); });

    auto* cmd_verify = app.add_subcommand(
        "verify", "Run one verification check and emit a JSON report (exit 0 iff it passes)");
    cmd_verify->require_subcommand(1);
    VerifyOpts verify;
    const struct {
        const char* name;
        const char* help;
        bool takes_parabolic;
        bool takes_pair;
    } verify_checks[] = {
        {"billey", "Localization property suite: homogeneity, support, positivity, word independence,"
                   " brute-force agreement", false, false},
        {"leray-hirsch", "Certify the pair basis: block structure, factorization, determinant,"
                         " and full expansion round trips", true, false},
        {"blocks", "Block triangularity and diagonal factorization of the basis matrix", true, false},
        {"springer", "Restricted-character multiple identity and action-matrix structure", true, false},
        {"lemma43", "Single-class products multiply by word concatenation", true, false},
        {"distinct", "Compare two pair bases as sets of equivariant classes against the predicted"
                     " verdict", false, true},
        {"distinct-ordinary", "Compare two pair bases after the ordinary-cohomology projection"
                              " (informational)", false, true},
    };
    for (const auto& vc : verify_checks) {
        auto* sub = cmd_verify->add_subcommand(vc.name, vc.help);
        sub->add_option("--type", verify.type, "Root system")->required();
        if (vc.takes_parabolic)
            sub->add_option("--parabolic", verify.parabolic,
                            "Parabolic generators (empty = none)");
        if (vc.takes_pair) {
            sub->add_option("--p", verify.p, "First parabolic subset (empty = none)");
            sub->add_option("--q", verify.q, "Second parabolic subset (empty = none)");
        }
        sub->add_option("--det-cap", verify.det_cap,
                        "Largest group order for the direct determinant route");
        sub->add_option("--output", verify.output, "Write the report to a file");
        sub->add_flag("--no-cache", verify.no_cache, "Skip the localization disk cache");
        const std::string name = vc.name;
        sub->callback([&, name] { rc = run_verify(name, verify); });
    }

    CatalogueOpts catalogue;
    auto* cmd_catalogue = app.add_subcommand(
        "catalogue", "Run the requested checks over a catalogue of root systems; one JSON report");
    cmd_catalogue->add_option("--config", catalogue.config_path, "JSON config file");
    auto* opt_systems = cmd_catalogue->add_option(
        "--systems", catalogue.systems, "Comma-separated root systems (overrides config)");
    auto* opt_checks = cmd_catalogue->add_option(
        "--checks", catalogue.checks, "Comma-separated checks (overrides config)");
    cmd_catalogue->add_option("--max-group-order", catalogue.max_group_order,
                              "Skip systems with larger Weyl groups (overrides config)");
    cmd_catalogue->add_option("--det-cap", catalogue.det_cap,
                              "Largest group order for direct determinants (overrides config)");
    auto* opt_output = cmd_catalogue->add_option("--output", catalogue.output,
                                                 "Report file (overrides config; empty = stdout)");
    cmd_catalogue->add_flag("--no-cache", catalogue.no_cache, "Skip the localization disk cache");
    cmd_catalogue->callback([&] {
        catalogue.systems_set = opt_systems->count() > 0;
        catalogue.checks_set = opt_checks->count() > 0;
        catalogue.output_set = opt_output->count() > 0;
        rc = run_catalogue(catalogue);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const check_error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const gkm::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
