#pragma once
// Scenario configuration: a JSON description of one complete experiment --
// ring and model, interior classes and class generators, where the operator
// store comes from (empty, generated from a seed, or a text file), the solve
// parameters, and the cutoffs.  Everything numeric that is not a true integer
// is written as an exact rational string ("5/2"); floating-point tokens are
// rejected outright so no config can smuggle in rounding.
//
// Series literals use a small exact grammar,
//
//     3/2*s^2*t(g1)*T(b1) + -1*s
//
// with factors s, t(<interior id>) and T(<class id>), optional ^<exponent>,
// and a leading rational coefficient per term.
//
// instantiate() turns a parsed scenario into live engine objects.  The store
// object keeps pointers to the ring and model, so the bundle is allocated
// once and never copied or moved.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ogw/superpotential.hpp"
#include "ogw/synth.hpp"

namespace ogw {

struct StoreSpec {
    enum class Kind { empty, synth, file };
    Kind kind = Kind::empty;
    std::uint64_t seed = 0;
    bool real = false;  // impose input-reversal symmetry on generated rows
    std::string path;
};

struct Scenario {
    std::string name;
    std::string model;
    std::vector<InteriorClass> interior;
    std::vector<ClassGenerator> classes;
    std::vector<std::string> gamma;  // empty means every interior class
    StoreSpec store;
    Rational store_cutoff;
    PolicyVariant policy = PolicyVariant::plain;
    std::string gauge = "pivot";
    std::string seed_series;
    Rational solve_cutoff;
    Rational extraction_cutoff;
    std::string format = "text";
};

// Exact rational literal: optional sign, digits, optional /digits.
inline Rational parse_rational_literal(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0)
        throw ConfigError("bad rational literal '" + text + "'");
    if (i < text.size()) {
        if (text[i] != '/')
            throw ConfigError("bad rational literal '" + text +
                              "' (no floats accepted)");
        ++i;
        std::size_t denom = 0;
        while (i < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++denom;
        }
        if (denom == 0 || i != text.size())
            throw ConfigError("bad rational literal '" + text + "'");
        if (Rational(text.substr(text.find('/') + 1)) == 0)
            throw ConfigError("bad rational literal '" + text +
                              "' (zero denominator)");
    }
    if (i != text.size())
        throw ConfigError("bad rational literal '" + text + "'");
    return text[0] == '+' ? Rational(text.substr(1)) : Rational(text);
}

// Series literal parser.  Terms are separated by '+', factors by '*'; a term
// whose monomial lies beyond the cutoff is a configuration error rather than
// a silent truncation.
inline Series parse_series_literal(const NovikovRing& ring, std::string text,
                                   const Rational& cutoff) {
    text.erase(std::remove_if(text.begin(), text.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               text.end());
    if (text.empty())
        throw ConfigError("empty series literal");
    Series out = ring.zero(cutoff);
    if (text == "0") return out;

    auto interior_index = [&](const std::string& id) {
        for (std::size_t j = 0; j < ring.interior().size(); ++j)
            if (ring.interior()[j].id == id) return j;
        throw ConfigError("series literal names unknown interior class '" +
                          id + "'");
    };
    auto class_index = [&](const std::string& id) {
        for (std::size_t j = 0; j < ring.classes().size(); ++j)
            if (ring.classes()[j].id == id) return j;
        throw ConfigError("series literal names unknown class '" + id + "'");
    };

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('+', pos);
        if (end == std::string::npos) end = text.size();
        std::string term = text.substr(pos, end - pos);
        if (term.empty())
            throw ConfigError("empty term in series literal '" + text + "'");
        pos = end + 1;
        if (pos == text.size() && end != text.size())
            throw ConfigError("trailing '+' in series literal '" + text +
                              "'");

        Rational coeff(1);
        int s_exp = 0;
        std::vector<int> t_exp(ring.interior().size(), 0);
        std::vector<int> beta(ring.classes().size(), 0);

        std::size_t fpos = 0;
        while (fpos < term.size()) {
            std::size_t fend = term.find('*', fpos);
            if (fend == std::string::npos) fend = term.size();
            std::string factor = term.substr(fpos, fend - fpos);
            if (factor.empty())
                throw ConfigError("empty factor in series term '" + term +
                                  "'");
            fpos = fend + 1;

            int exponent = 1;
            std::size_t caret = factor.find('^');
            std::string head = factor;
            if (caret != std::string::npos) {
                head = factor.substr(0, caret);
                std::string tail = factor.substr(caret + 1);
                if (tail.empty() ||
                    !std::all_of(tail.begin(), tail.end(), [](unsigned char c) {
                        return std::isdigit(c);
                    }))
                    throw ConfigError("bad exponent in factor '" + factor +
                                      "'");
                exponent = std::stoi(tail);
            }

            if (head == "s") {
                s_exp += exponent;
            } else if (head.size() > 2 && head.compare(0, 2, "t(") == 0 &&
                       head.back() == ')') {
                t_exp[interior_index(head.substr(2, head.size() - 3))] +=
                    exponent;
            } else if (head.size() > 2 && head.compare(0, 2, "T(") == 0 &&
                       head.back() == ')') {
                beta[class_index(head.substr(2, head.size() - 3))] += exponent;
            } else if (caret == std::string::npos) {
                coeff *= parse_rational_literal(head);
            } else {
                throw ConfigError("bad factor '" + factor +
                                  "' in series literal");
            }
        }

        Monomial m = ring.make(s_exp, t_exp, beta);
        if (ring.valuation(m) > cutoff)
            throw ConfigError("series term '" + term +
                              "' lies beyond the cutoff " +
                              rational_to_string(cutoff));
        out = ring.add(out, ring.monomial_series(m, coeff, cutoff));
    }
    return out;
}

namespace detail {

using json = nlohmann::json;

// Any floating-point number anywhere in the document is rejected; rationals
// travel as strings.
inline void reject_floats(const json& j, const std::string& where) {
    if (j.is_number_float())
        throw ConfigError(where + ": no floats accepted, write rationals as "
                                  "strings like \"5/2\"");
    if (j.is_object())
        for (const auto& [key, value] : j.items())
            reject_floats(value, where + "." + key);
    if (j.is_array())
        for (std::size_t i = 0; i < j.size(); ++i)
            reject_floats(j[i], where + "[" + std::to_string(i) + "]");
}

inline const json& require_field(const json& j, const char* key,
                                 const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(where + ": missing required field '" + key + "'");
    return *it;
}

inline std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string())
        throw ConfigError(where + ": expected a string");
    return v.get<std::string>();
}

inline long as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer())
        throw ConfigError(where + ": expected an integer");
    return v.get<long>();
}

inline bool as_flag(const json& v, const std::string& where) {
    if (!v.is_boolean())
        throw ConfigError(where + ": expected true or false");
    return v.get<bool>();
}

inline Rational as_rational(const json& v, const std::string& where) {
    if (!v.is_string())
        throw ConfigError(where +
                          ": rationals are written as strings like \"5/2\"");
    return parse_rational_literal(v.get<std::string>());
}

inline void check_keys(const json& j, const std::set<std::string>& known,
                       const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key))
            throw ConfigError(where + ": unknown field '" + key + "'");
    }
}

}  // namespace detail

// Builtin cochain models: "minimal_s<n>" for odd n, and the extended
// three-sphere model with exact pairs in every gauge-relevant degree.
inline CochainModel scenario_model(const std::string& name) {
    if (name == "extended_s3") return extended_s3_model();
    if (name.size() > 9 && name.compare(0, 9, "minimal_s") == 0 &&
        std::all_of(name.begin() + 9, name.end(), [](unsigned char c) {
            return std::isdigit(c);
        }))
        return minimal_sphere_model(std::stoi(name.substr(9)));
    throw ConfigError("unknown model '" + name +
                      "' (expected extended_s3 or minimal_s<odd n>)");
}

inline Scenario parse_scenario_text(const std::string& text,
                                    const std::string& source) {
    detail::json doc;
    try {
        doc = detail::json::parse(text);
    } catch (const detail::json::parse_error& e) {
        throw ConfigError(source + ": " + e.what());
    }
    if (!doc.is_object())
        throw ConfigError(source + ": top level must be an object");
    detail::reject_floats(doc, source);
    detail::check_keys(doc,
                       {"name", "model", "interior", "classes", "gamma",
                        "store", "store_cutoff", "solve", "extraction_cutoff",
                        "format"},
                       source);

    Scenario sc;
    if (doc.contains("name"))
        sc.name = detail::as_string(doc["name"], source + ".name");
    sc.model = detail::as_string(detail::require_field(doc, "model", source),
                                 source + ".model");
    scenario_model(sc.model);  // validate early, with the config's name

    const detail::json& interior =
        detail::require_field(doc, "interior", source);
    if (!interior.is_array() || interior.empty())
        throw ConfigError(source + ".interior: expected a nonempty array");
    for (std::size_t i = 0; i < interior.size(); ++i) {
        std::string where = source + ".interior[" + std::to_string(i) + "]";
        const detail::json& e = interior[i];
        detail::check_keys(e, {"id", "degree", "unit", "divisor"}, where);
        InteriorClass c;
        c.id = detail::as_string(detail::require_field(e, "id", where),
                                 where + ".id");
        c.degree = detail::as_integer(
            detail::require_field(e, "degree", where), where + ".degree");
        c.unit = e.contains("unit") &&
                 detail::as_flag(e["unit"], where + ".unit");
        c.divisor = e.contains("divisor") &&
                    detail::as_flag(e["divisor"], where + ".divisor");
        sc.interior.push_back(std::move(c));
    }

    const detail::json& classes =
        detail::require_field(doc, "classes", source);
    if (!classes.is_array())
        throw ConfigError(source + ".classes: expected an array");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::string where = source + ".classes[" + std::to_string(i) + "]";
        const detail::json& e = classes[i];
        detail::check_keys(
            e, {"id", "energy", "maslov", "spherical", "pairings"}, where);
        ClassGenerator g;
        g.id = detail::as_string(detail::require_field(e, "id", where),
                                 where + ".id");
        g.energy = detail::as_rational(
            detail::require_field(e, "energy", where), where + ".energy");
        g.maslov = detail::as_integer(
            detail::require_field(e, "maslov", where), where + ".maslov");
        g.spherical = e.contains("spherical") &&
                      detail::as_flag(e["spherical"], where + ".spherical");
        if (e.contains("pairings")) {
            const detail::json& p = e["pairings"];
            if (!p.is_array() || p.size() != sc.interior.size())
                throw ConfigError(where + ".pairings: expected one rational "
                                          "per interior class");
            for (std::size_t k = 0; k < p.size(); ++k)
                g.pairings.push_back(detail::as_rational(
                    p[k], where + ".pairings[" + std::to_string(k) + "]"));
        } else {
            g.pairings.assign(sc.interior.size(), Rational(0));
        }
        sc.classes.push_back(std::move(g));
    }

    if (doc.contains("gamma")) {
        const detail::json& g = doc["gamma"];
        if (!g.is_array())
            throw ConfigError(source + ".gamma: expected an array of "
                                       "interior class ids");
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::string id = detail::as_string(
                g[i], source + ".gamma[" + std::to_string(i) + "]");
            bool known = false;
            for (const auto& c : sc.interior) known = known || c.id == id;
            if (!known)
                throw ConfigError(source + ".gamma: unknown interior class '" +
                                  id + "'");
            sc.gamma.push_back(std::move(id));
        }
    }

    sc.store_cutoff = detail::as_rational(
        detail::require_field(doc, "store_cutoff", source),
        source + ".store_cutoff");

    const detail::json& store = detail::require_field(doc, "store", source);
    std::string swhere = source + ".store";
    detail::check_keys(store, {"kind", "seed", "real", "path"}, swhere);
    std::string kind = detail::as_string(
        detail::require_field(store, "kind", swhere), swhere + ".kind");
    if (kind != "synth" && (store.contains("seed") || store.contains("real")))
        throw ConfigError(swhere +
                          ": seed and real apply only to generated stores");
    if (kind != "file" && store.contains("path"))
        throw ConfigError(swhere + ": path applies only to file stores");
    if (kind == "empty") {
        sc.store.kind = StoreSpec::Kind::empty;
    } else if (kind == "synth") {
        sc.store.kind = StoreSpec::Kind::synth;
        long seed = detail::as_integer(
            detail::require_field(store, "seed", swhere), swhere + ".seed");
        if (seed < 0)
            throw ConfigError(swhere + ".seed: expected a nonnegative seed");
        sc.store.seed = static_cast<std::uint64_t>(seed);
        sc.store.real = store.contains("real") &&
                        detail::as_flag(store["real"], swhere + ".real");
    } else if (kind == "file") {
        sc.store.kind = StoreSpec::Kind::file;
        sc.store.path = detail::as_string(
            detail::require_field(store, "path", swhere), swhere + ".path");
    } else {
        throw ConfigError(swhere +
                          ".kind: expected empty, synth, or file, got '" +
                          kind + "'");
    }

    const detail::json& solve = detail::require_field(doc, "solve", source);
    std::string vwhere = source + ".solve";
    detail::check_keys(solve, {"policy", "gauge", "a", "cutoff"}, vwhere);
    sc.policy = policy_from_string(detail::as_string(
        detail::require_field(solve, "policy", vwhere), vwhere + ".policy"));
    if (solve.contains("gauge"))
        sc.gauge = detail::as_string(solve["gauge"], vwhere + ".gauge");
    make_gauge(sc.gauge);  // validate the name
    sc.seed_series = detail::as_string(
        detail::require_field(solve, "a", vwhere), vwhere + ".a");
    sc.solve_cutoff = solve.contains("cutoff")
                          ? detail::as_rational(solve["cutoff"],
                                                vwhere + ".cutoff")
                          : sc.store_cutoff;
    sc.extraction_cutoff =
        doc.contains("extraction_cutoff")
            ? detail::as_rational(doc["extraction_cutoff"],
                                  source + ".extraction_cutoff")
            : sc.solve_cutoff;
    if (doc.contains("format")) {
        sc.format = detail::as_string(doc["format"], source + ".format");
        if (sc.format != "text" && sc.format != "rows")
            throw ConfigError(source + ".format: expected text or rows");
    }

    if (sc.solve_cutoff > sc.store_cutoff)
        throw ConfigError(source + ": solve cutoff " +
                          rational_to_string(sc.solve_cutoff) +
                          " exceeds store cutoff " +
                          rational_to_string(sc.store_cutoff));
    if (sc.extraction_cutoff > sc.solve_cutoff)
        throw ConfigError(source + ": extraction cutoff " +
                          rational_to_string(sc.extraction_cutoff) +
                          " exceeds solve cutoff " +
                          rational_to_string(sc.solve_cutoff));
    return sc;
}

// Load a scenario file; a relative store path is resolved against the
// scenario's own directory.
inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read scenario file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    Scenario sc = parse_scenario_text(
        text.str(), std::filesystem::path(path).filename().string());
    if (sc.name.empty())
        sc.name = std::filesystem::path(path).stem().string();
    if (sc.store.kind == StoreSpec::Kind::file) {
        std::filesystem::path p(sc.store.path);
        if (p.is_relative())
            sc.store.path =
                (std::filesystem::path(path).parent_path() / p).string();
    }
    return sc;
}

// Live engine objects for one scenario.  The operator store points into the
// ring and model members, so the bundle is pinned to its allocation.
struct Workspace {
    NovikovRing ring;
    CochainModel model;
    QOperators q;
    InteriorForm gamma;
    Series a;
    SolverPolicy policy;
    Rational solve_cutoff;
    Rational extraction_cutoff;

    Workspace(NovikovRing r, CochainModel m, const StoreSpec& store,
              const Rational& store_cutoff)
        : ring(std::move(r)),
          model(std::move(m)),
          q(make_store(ring, model, store, store_cutoff)) {}

    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

  private:
    static QOperators make_store(const NovikovRing& ring,
                                 const CochainModel& model,
                                 const StoreSpec& store,
                                 const Rational& cutoff) {
        switch (store.kind) {
            case StoreSpec::Kind::synth: {
                SynthOptions opt;
                opt.seed = store.seed;
                opt.real_signs = store.real;
                return synth_qdata(ring, model, cutoff, opt);
            }
            case StoreSpec::Kind::file: {
                std::ifstream in(store.path);
                if (!in)
                    throw ConfigError("cannot read store file '" +
                                      store.path + "'");
                std::ostringstream text;
                text << in.rdbuf();
                return load_store_text(ring, model, text.str());
            }
            case StoreSpec::Kind::empty:
                break;
        }
        return QOperators(ring, model, cutoff);
    }
};

struct RunOverrides {
    std::optional<Rational> cutoff;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> gauge;
};

inline long scenario_dimension(const std::string& model_name) {
    if (model_name == "extended_s3") return 3;
    return std::stol(model_name.substr(9));
}

inline std::unique_ptr<Workspace> instantiate(const Scenario& sc,
                                              const RunOverrides& ov = {}) {
    if (ov.seed && sc.store.kind != StoreSpec::Kind::synth)
        throw ConfigError(
            "a seed override needs a generated store in the scenario");
    StoreSpec store = sc.store;
    if (ov.seed) store.seed = *ov.seed;

    NovikovRing ring(static_cast<int>(scenario_dimension(sc.model)),
                     sc.interior, sc.classes);
    CochainModel model = scenario_model(sc.model);
    auto ws = std::make_unique<Workspace>(std::move(ring), std::move(model),
                                          store, sc.store_cutoff);
    if (ws->q.cutoff() < sc.store_cutoff)
        throw ConfigError("store provides cutoff " +
                          rational_to_string(ws->q.cutoff()) +
                          " below the declared store cutoff " +
                          rational_to_string(sc.store_cutoff));

    if (sc.gamma.empty()) {
        ws->gamma = ws->q.full_interior();
    } else {
        std::set<int> support;
        for (const auto& id : sc.gamma)
            for (std::size_t j = 0; j < ws->ring.interior().size(); ++j)
                if (ws->ring.interior()[j].id == id)
                    support.insert(static_cast<int>(j));
        ws->gamma.support.assign(support.begin(), support.end());
    }

    ws->solve_cutoff = ov.cutoff ? *ov.cutoff : sc.solve_cutoff;
    ws->extraction_cutoff =
        ov.cutoff ? *ov.cutoff : sc.extraction_cutoff;
    if (ws->solve_cutoff > sc.store_cutoff)
        throw ConfigError("solve cutoff " +
                          rational_to_string(ws->solve_cutoff) +
                          " exceeds store cutoff " +
                          rational_to_string(sc.store_cutoff));

    ws->policy.variant = sc.policy;
    ws->policy.gauge = make_gauge(ov.gauge ? *ov.gauge : sc.gauge);
    ws->a = parse_series_literal(ws->ring, sc.seed_series, ws->solve_cutoff);
    return ws;
}

}  // namespace ogw
