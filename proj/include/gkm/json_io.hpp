#ifndef GKM_JSON_IO_HPP
#define GKM_JSON_IO_HPP

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gkm/billey.hpp"
#include "gkm/cohomology.hpp"
#include "gkm/parabolic.hpp"
#include "gkm/springer.hpp"

// JSON surfaces for every durable object -- localization tables, basis
// certificates, characters, comparison and verification reports -- plus the
// on-disk cache of restriction columns.  Serializers emit keys in a fixed
// order and rows in canonical element order, so for canonical input
// serialize(parse(text)) == text, byte for byte.

namespace gkm {

using Json = nlohmann::ordered_json;

inline std::string json_to_text(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- spaces --

inline const char* flavor_code(Flavor f) {
    switch (f) {
        case Flavor::full_flag: return "GB";
        case Flavor::partial_flag: return "GP";
        case Flavor::fiber: return "PB";
    }
    throw spec_error("unknown flavor");
}

inline Flavor flavor_from_code(std::string_view code) {
    if (code == "GB") return Flavor::full_flag;
    if (code == "GP") return Flavor::partial_flag;
    if (code == "PB") return Flavor::fiber;
    throw spec_error("unknown space code: " + std::string(code));
}

// Reuses the supplied group when it matches the named root system, otherwise
// builds a fresh one.
inline std::shared_ptr<const WeylGroup> group_for_spec(const std::string& spec,
                                                       std::shared_ptr<const WeylGroup> W = nullptr) {
    const std::string canonical = RootSystemSpec::parse(spec).str();
    if (!W) return std::make_shared<const WeylGroup>(RootSystem::build(canonical));
    if (W->root_system_ptr()->spec_string() != canonical)
        throw spec_error("root system mismatch: expected " + canonical + ", got " +
                         W->root_system_ptr()->spec_string());
    return W;
}

inline std::shared_ptr<const Space> space_for(std::shared_ptr<const WeylGroup> W, Flavor f,
                                              const ParabolicSubset& p) {
    switch (f) {
        case Flavor::full_flag: return Space::full_flag(std::move(W));
        case Flavor::partial_flag: return Space::partial_flag(std::move(W), p);
        case Flavor::fiber: return Space::fiber(std::move(W), p);
    }
    throw spec_error("unknown flavor");
}

// --------------------------------------------------------------- classes --

inline Json class_to_json(const EquivariantClass& c) {
    const Space& sp = *c.space_ptr();
    const WeylGroup& W = *sp.W;
    Json j;
    j["root_system"] = W.root_system_ptr()->spec_string();
    j["flavor"] = flavor_code(sp.flavor);
    j["parabolic"] = sp.parabolic;
    Json loc = Json::object();
    for (int k = 0; k < sp.size(); ++k)
        loc[word_to_string(W.word(sp.points[k]))] = poly_to_string(c.value_at_position(k));
    j["localizations"] = std::move(loc);
    return j;
}

inline EquivariantClass class_from_json(const Json& j,
                                        std::shared_ptr<const WeylGroup> W = nullptr) {
    W = group_for_spec(j.at("root_system").get<std::string>(), std::move(W));
    const Flavor flavor = flavor_from_code(j.at("flavor").get<std::string>());
    const auto parabolic = j.at("parabolic").get<ParabolicSubset>();
    auto sp = space_for(W, flavor, parabolic);
    const Json& loc = j.at("localizations");
    if (!loc.is_object()) throw spec_error("localizations must be a JSON object");
    if (static_cast<int>(loc.size()) != sp->size())
        throw spec_error("localization table has " + std::to_string(loc.size()) +
                         " entries but the space has " + std::to_string(sp->size()) + " points");
    EquivariantClass c = EquivariantClass::zero(sp);
    std::vector<bool> seen(static_cast<std::size_t>(sp->size()), false);
    for (const auto& [key, val] : loc.items()) {
        const int idx = W->from_word_index(word_from_string(key));
        if (!sp->has_point(idx))
            throw spec_error("localization at a point outside the space: " + key);
        const int pos = sp->position_of(idx);
        if (seen[static_cast<std::size_t>(pos)])
            throw spec_error("duplicate localization point: " + key);
        seen[static_cast<std::size_t>(pos)] = true;
        c.set_value_at_position(pos, poly_from_string(W->rank(), val.get<std::string>()));
    }
    return c;
}

// -------------------------------------------------------- factored forms --

// Inverse of FactoredForm::str().  Grammar:
//   form   := ["-"] ("1" | factor ("*" factor)*)
//   factor := "(" polynomial ")" ["^" integer]
inline FactoredForm factored_form_from_string(int nvars, const std::string& text) {
    std::string_view s = text;
    if (s.empty()) throw spec_error("empty factored form");
    int sign = 1;
    if (s.front() == '-') {
        sign = -1;
        s.remove_prefix(1);
    }
    FactoredForm form;
    if (s == "1") {
        form.sign = sign;
        return form;
    }
    std::size_t pos = 0;
    for (;;) {
        if (pos >= s.size() || s[pos] != '(')
            throw spec_error("expected '(' in factored form: " + text);
        const std::size_t close = s.find(')', pos + 1);
        if (close == std::string_view::npos)
            throw spec_error("unbalanced '(' in factored form: " + text);
        const Poly factor = poly_from_string(nvars, s.substr(pos + 1, close - pos - 1));
        pos = close + 1;
        long mult = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            const std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) throw spec_error("missing exponent in factored form: " + text);
            mult = std::stol(std::string(s.substr(start, pos - start)));
        }
        form.add(factor, mult);
        if (pos == s.size()) break;
        if (s[pos] != '*') throw spec_error("expected '*' between factors in: " + text);
        ++pos;
    }
    form.sign *= sign;
    return form;
}

// ---------------------------------------------------------- certificates --

inline Json certificate_to_json(const BasisCertificate& cert) {
    Json j;
    j["root_system"] = cert.root_system;
    j["parabolic"] = cert.parabolic;
    j["det_A"] = cert.det_direct ? Json(poly_to_string(*cert.det_direct)) : Json(nullptr);
    j["closed_form"] = cert.closed_form.str();
    j["blocks"] = cert.block_status;
    j["status"] = cert.ok ? "ok" : "fail";
    j["witness"] = cert.failures;
    return j;
}

// The wire format records the verdict, the determinant values, and the
// per-block statuses; flags about which internal cross-checks ran are not
// serialized and come back defaulted.
inline BasisCertificate certificate_from_json(const Json& j) {
    BasisCertificate cert;
    cert.root_system = RootSystemSpec::parse(j.at("root_system").get<std::string>()).str();
    const int nv = RootSystemSpec::parse(cert.root_system).rank();
    cert.parabolic = normalize_parabolic(j.at("parabolic").get<ParabolicSubset>(), nv);
    if (!j.at("det_A").is_null())
        cert.det_direct = poly_from_string(nv, j.at("det_A").get<std::string>());
    cert.closed_form = factored_form_from_string(nv, j.at("closed_form").get<std::string>());
    cert.block_status = j.at("blocks").get<std::vector<std::vector<std::string>>>();
    const std::string status = j.at("status").get<std::string>();
    if (status != "ok" && status != "fail")
        throw spec_error("certificate status must be \"ok\" or \"fail\"");
    cert.ok = status == "ok";
    cert.failures = j.at("witness").get<std::vector<std::string>>();
    return cert;
}

// ------------------------------------------------------------ characters --

struct CharacterDocument {
    std::string root_system;
    ParabolicSubset parabolic;
    Flavor space = Flavor::fiber; // fiber ("PB") or full flag ("GB")
    CharacterTable table;
};

inline Json character_to_json(const WeylGroup& W, const ParabolicSubset& parabolic, Flavor space,
                              const CharacterTable& table) {
    if (space == Flavor::partial_flag)
        throw spec_error("characters live on the fiber or the full flag space");
    Json j;
    j["root_system"] = W.root_system_ptr()->spec_string();
    j["parabolic"] = normalize_parabolic(parabolic, W.rank());
    j["space"] = flavor_code(space);
    Json values = Json::object();
    for (int w : table.subgroup)
        values[word_to_string(W.word(w))] = poly_to_string(table.value(w));
    j["values"] = std::move(values);
    return j;
}

inline CharacterDocument character_from_json(const Json& j,
                                             std::shared_ptr<const WeylGroup> W = nullptr) {
    CharacterDocument doc;
    doc.root_system = j.at("root_system").get<std::string>();
    W = group_for_spec(doc.root_system, std::move(W));
    doc.root_system = W->root_system_ptr()->spec_string();
    doc.parabolic = normalize_parabolic(j.at("parabolic").get<ParabolicSubset>(), W->rank());
    doc.space = flavor_from_code(j.at("space").get<std::string>());
    if (doc.space == Flavor::partial_flag)
        throw spec_error("characters live on the fiber or the full flag space");
    const Json& values = j.at("values");
    if (!values.is_object()) throw spec_error("character values must be a JSON object");
    CharacterTable& t = doc.table;
    for (const auto& [key, val] : values.items()) {
        const int idx = W->from_word_index(word_from_string(key));
        if (!t.values.emplace(idx, poly_from_string(W->rank(), val.get<std::string>())).second)
            throw spec_error("duplicate character value at " + key);
        t.subgroup.push_back(idx);
    }
    std::sort(t.subgroup.begin(), t.subgroup.end());
    const auto it = t.values.find(W->identity_index());
    if (it == t.values.end()) throw spec_error("character table lacks the identity element");
    const Poly& at_id = it->second;
    Rational rank_value = 0;
    if (!at_id.is_zero()) {
        if (at_id.terms().size() != 1 || at_id.terms().front().m.deg() != 0)
            throw spec_error("character of the identity must be a constant");
        rank_value = at_id.terms().front().c;
    }
    if (rank_value.get_den() != 1 || rank_value < 0 || !rank_value.get_num().fits_sint_p())
        throw spec_error("character of the identity must be a nonnegative integer");
    t.module_rank = static_cast<int>(rank_value.get_num().get_si());
    return doc;
}

// ----------------------------------------------- comparisons & witnesses --

inline Json comparison_to_json(const std::string& root_system, const ParabolicSubset& p,
                               const ParabolicSubset& q, const BasisComparisonReport& r) {
    Json j;
    j["root_system"] = root_system;
    j["first"] = p;
    j["second"] = q;
    j["mode"] = r.mode == BasisComparisonMode::equivariant ? "equivariant" : "ordinary";
    j["verdict"] = r.observed_distinct ? "distinct" : "equal";
    j["predicted_distinct"] = r.predicted_distinct;
    j["observed_distinct"] = r.observed_distinct;
    j["agrees_with_prediction"] = r.agrees_with_prediction;
    if (r.witness) {
        Json w;
        w["side"] = r.witness->side;
        w["v"] = word_to_string(r.witness->v_word);
        w["w"] = word_to_string(r.witness->w_word);
        w["serialization"] = r.witness->serialization;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline Json dynkin_witness_to_json(const std::string& root_system, const ParabolicSubset& p,
                                   const ParabolicSubset& q, const DynkinPathWitness& w) {
    Json j;
    j["root_system"] = root_system;
    j["first"] = p;
    j["second"] = q;
    j["case"] = w.case_label;
    j["swapped"] = w.swapped;
    j["i"] = w.i;
    j["j"] = w.j;
    j["interior"] = w.interior;
    j["witness_class"] = word_to_string(w.witness_word);
    j["evaluation_point"] = word_to_string(w.eval_word);
    j["single_value"] = poly_to_string(w.single_value);
    j["product_value"] = poly_to_string(w.product_value);
    j["distinct"] = w.distinct;
    return j;
}

// ----------------------------------------------------------- verification --

inline Json springer_report_to_json(const SpringerReport& r, const WeylGroup& W) {
    Json j;
    j["root_system"] = r.root_system;
    j["parabolic"] = r.parabolic;
    j["rep_count"] = r.rep_count;
    j["subgroup_order"] = r.subgroup_order;
    j["status"] = r.ok ? "ok" : "fail";
    Json checks;
    checks["hard_multiple"] = r.hard_multiple_holds;
    checks["mixing_identity"] = r.mixing_identity_holds;
    checks["diagonal_matches_fiber"] = r.diagonal_matches_fiber;
    checks["fiber_submatrix"] = r.fiber_submatrix_agrees;
    checks["length_filtered"] = r.length_filtered;
    checks["schubert_trace"] = r.schubert_trace_agrees;
    checks["rep_classes_fixed"] = r.rep_classes_fixed;
    checks["character_invariants"] = r.invariants_hold;
    j["checks"] = std::move(checks);
    Json observed;
    observed["literal_multiple_holds"] = r.literal_multiple_holds;
    observed["pair_matrix_block_diagonal"] = r.pair_matrix_block_diagonal;
    j["observed"] = std::move(observed);
    j["fiber_character"] = character_to_json(W, r.parabolic, Flavor::fiber, r.fiber_character)["values"];
    j["full_character"] =
        character_to_json(W, r.parabolic, Flavor::full_flag, r.full_character)["values"];
    j["witness"] = r.failures;
    return j;
}

// --------------------------------------------- restriction-column cache --

inline std::filesystem::path billey_cache_directory() {
    if (const char* env = std::getenv("GKM_CACHE_DIR"); env && *env) return env;
    return ".gkm-cache";
}

// One JSON file per (root system, element) under the cache directory, holding
// that element's full restriction column in canonical order.  Loads validate
// the shape and two pinned values -- the identity restriction is 1 and the
// top restriction equals the product of inversion roots -- so a stale or
// corrupted file costs a recompute instead of poisoning results.
class BilleyDiskCache {
public:
    BilleyDiskCache() : dir_(billey_cache_directory()) {}
    explicit BilleyDiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& directory() const { return dir_; }

    std::filesystem::path column_path(const WeylGroup& W, int u_idx) const {
        std::string name = W.root_system_ptr()->spec_string();
        name += "__";
        name += file_token(W.word(u_idx));
        name += ".json";
        return dir_ / name;
    }

    // True when the table now holds a column for u: it was already computed,
    // or a valid cache file was loaded.  Invalid files are skipped.
    bool load_column(BilleyTable& table, int u_idx) const {
        const WeylGroup& W = table.group();
        if (table.column_ready(u_idx)) return true;
        std::error_code ec;
        const auto path = column_path(W, u_idx);
        if (!std::filesystem::is_regular_file(path, ec)) return false;
        Json j;
        {
            std::ifstream in(path);
            if (!in) return false;
            try {
                j = Json::parse(in);
            } catch (const Json::exception&) {
                return false;
            }
        }
        try {
            if (j.at("root_system").get<std::string>() != W.root_system_ptr()->spec_string())
                return false;
            if (j.at("u").get<std::string>() != word_to_string(W.word(u_idx))) return false;
            const Json& values = j.at("values");
            if (!values.is_object() || static_cast<int>(values.size()) != W.size()) return false;
            std::vector<Poly> col(static_cast<std::size_t>(W.size()), Poly(W.rank()));
            std::vector<bool> seen(static_cast<std::size_t>(W.size()), false);
            for (const auto& [key, val] : values.items()) {
                const int x = W.from_word_index(word_from_string(key));
                if (seen[static_cast<std::size_t>(x)]) return false;
                seen[static_cast<std::size_t>(x)] = true;
                col[static_cast<std::size_t>(x)] = poly_from_string(W.rank(), val.get<std::string>());
            }
            if (!(col[static_cast<std::size_t>(W.identity_index())] == Poly::one(W.rank())))
                return false;
            if (!(col[static_cast<std::size_t>(u_idx)] == schubert_point(W.element(u_idx))))
                return false;
            table.prime_column(u_idx, std::move(col));
            return true;
        } catch (const std::exception&) {
            return false;
        }
    }

    // Serializes the column for u, computing it first if necessary.
    void store_column(BilleyTable& table, int u_idx) const {
        const WeylGroup& W = table.group();
        const std::vector<Poly>& col = table.column(u_idx);
        Json j;
        j["root_system"] = W.root_system_ptr()->spec_string();
        j["u"] = word_to_string(W.word(u_idx));
        Json values = Json::object();
        for (int x = 0; x < W.size(); ++x)
            values[word_to_string(W.word(x))] = poly_to_string(col[static_cast<std::size_t>(x)]);
        j["values"] = std::move(values);
        std::filesystem::create_directories(dir_);
        const auto path = column_path(W, u_idx);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) throw spec_error("cannot write cache file " + tmp.string());
            out << json_to_text(j);
        }
        std::filesystem::rename(tmp, path);
    }

    // Loads every available column; returns the number of cache hits.
    int preload(BilleyTable& table) const {
        int hits = 0;
        for (int u = 0; u < table.group().size(); ++u)
            if (!table.column_ready(u) && load_column(table, u)) ++hits;
        return hits;
    }

    // Writes every computed column back out; returns the number written.
    int store_ready(BilleyTable& table) const {
        int stored = 0;
        for (int u = 0; u < table.group().size(); ++u) {
            if (!table.column_ready(u)) continue;
            store_column(table, u);
            ++stored;
        }
        return stored;
    }

private:
    // Filenames join letters with '-' so they stay shell-friendly.
    static std::string file_token(const Word& w) {
        if (w.empty()) return "e";
        std::string out;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (k) out += '-';
            out += std::to_string(w[k]);
        }
        return out;
    }

    std::filesystem::path dir_;
};

} // namespace gkm

#endif
