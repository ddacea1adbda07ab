#include "leibcheck/description.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace leibcheck {

namespace {

using Json = nlohmann::ordered_json;

// "p/q" or "p/q t^e" (also "p/q t" for e = 1).
Scalar parse_coeff(const std::string& text, int truncation) {
    std::istringstream in(text);
    std::string rational_part, t_part;
    in >> rational_part;
    in >> t_part;
    std::string rest;
    if (in >> rest) throw DescriptionError("bad coefficient literal: '" + text + "'");
    Rational value = parse_rational(rational_part); // throws on malformed literals
    int exponent = 0;
    if (!t_part.empty()) {
        if (t_part == "t") exponent = 1;
        else if (t_part.rfind("t^", 0) == 0) {
            try {
                size_t used = 0;
                exponent = std::stoi(t_part.substr(2), &used);
                if (used != t_part.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw DescriptionError("bad exponent in coefficient literal: '" + text + "'");
            }
            if (exponent < 0)
                throw DescriptionError("negative exponent in coefficient literal: '" + text + "'");
        } else {
            throw DescriptionError("bad coefficient literal: '" + text + "'");
        }
    }
    return Scalar::monomial(value, exponent, truncation);
}

std::string coeff_string(const Rational& value, int exponent) {
    std::string out = rational_str(value);
    if (exponent > 0) out += " t^" + std::to_string(exponent);
    return out;
}

Element parse_output(const Json& node, const SpacePtr& space, int truncation) {
    if (!node.is_array()) throw DescriptionError("'output' must be a list");
    Element out(space);
    for (const auto& term : node) {
        std::string basis = term.at("basis").get<std::string>();
        auto idx = space->index_of(basis);
        if (!idx)
            throw DescriptionError("unknown basis name '" + basis + "' in space " +
                                   space->label());
        out.add_term(*idx, parse_coeff(term.at("coeff").get<std::string>(), truncation));
    }
    return out;
}

std::vector<int> parse_inputs(const Json& node, const SpacePtr& space) {
    if (!node.is_array() || node.empty())
        throw DescriptionError("'inputs' must be a nonempty list of basis names");
    std::vector<int> out;
    for (const auto& name : node) {
        auto idx = space->index_of(name.get<std::string>());
        if (!idx)
            throw DescriptionError("unknown basis name '" + name.get<std::string>() +
                                   "' in space " + space->label());
        out.push_back(*idx);
    }
    return out;
}

void parse_map_entries(const Json& node, MultilinearMap& map, const SpacePtr& source,
                       const SpacePtr& target, int truncation) {
    if (!node.is_array()) throw DescriptionError("map entries must form a list");
    for (const auto& entry : node) {
        std::vector<int> inputs = parse_inputs(entry.at("inputs"), source);
        if (static_cast<int>(inputs.size()) != map.arity())
            throw DescriptionError("entry arity does not match the map");
        map.add_entry(inputs, parse_output(entry.at("output"), target, truncation));
    }
}

Json entry_json(const GradedSpace& source, const GradedSpace& target,
                const std::vector<int>& inputs, const Element& value) {
    Json entry;
    Json in = Json::array();
    for (int i : inputs) in.push_back(source.name(i));
    entry["inputs"] = std::move(in);
    Json out = Json::array();
    for (const auto& [idx, coeff] : value.terms())
        for (const auto& [exp, r] : coeff.terms())
            out.push_back({{"basis", target.name(idx)}, {"coeff", coeff_string(r, exp)}});
    entry["output"] = std::move(out);
    return entry;
}

Json map_json(const MultilinearMap& map) {
    Json entries = Json::array();
    for (const auto& [inputs, value] : map.entries())
        entries.push_back(entry_json(*map.source(), *map.target(), inputs, value));
    return entries;
}

Json space_json(const GradedSpace& space) {
    Json basis = Json::array();
    for (int i = 0; i < space.dim(); ++i)
        basis.push_back({{"name", space.name(i)}, {"degree", space.degree(i)}});
    return basis;
}

SpacePtr parse_space(const std::string& label, const Json& node) {
    if (!node.is_array() || node.empty())
        throw DescriptionError("space '" + label + "' must list its basis");
    std::vector<GradedSpace::BasisEntry> basis;
    for (const auto& entry : node)
        basis.push_back({entry.at("name").get<std::string>(), entry.at("degree").get<int>()});
    return make_space(label, std::move(basis));
}

void validate_structure(const AlgebraStructure& alg) {
    StructureReport report = check_structure(alg);
    for (const auto& check : report.checks)
        if (!check.passed) throw ValidationError(alg.name + "." + check.name, check.witness);
}

Session parse_session(const Json& doc, const LoadOptions& options, const std::string& origin) {
    Session session;
    session.source_path = origin;
    if (doc.at("schema_version").get<int>() != 1)
        throw DescriptionError("unsupported schema_version");
    session.truncation = options.truncation_override
                             ? *options.truncation_override
                             : doc.at("truncation_order").get<int>();
    if (session.truncation < 1) throw DescriptionError("truncation_order must be >= 1");
    int K = session.truncation;

    std::map<std::string, SpacePtr> spaces;
    for (const auto& [label, node] : doc.at("spaces").items())
        spaces.emplace(label, parse_space(label, node));

    if (doc.contains("structures")) {
        for (const auto& [name, node] : doc.at("structures").items()) {
            std::string space_label = node.at("space").get<std::string>();
            auto space_it = spaces.find(space_label);
            if (space_it == spaces.end())
                throw DescriptionError("structure '" + name + "' names unknown space '" +
                                       space_label + "'");
            const SpacePtr& space = space_it->second;
            std::string flavor_text = node.at("flavor").get<std::string>();
            Flavor flavor;
            if (flavor_text == "lie") flavor = Flavor::lie;
            else if (flavor_text == "leibniz") flavor = Flavor::leibniz;
            else throw DescriptionError("unknown flavor '" + flavor_text + "'");

            MultilinearMap d(1, space, space, 1, false);
            if (node.contains("d")) parse_map_entries(node.at("d"), d, space, space, K);
            MultilinearMap bracket(2, space, space, 0, false);
            if (node.contains("bracket"))
                parse_map_entries(node.at("bracket"), bracket, space, space, K);
            session.structures.emplace(
                name, make_structure(name, flavor, space, std::move(d), std::move(bracket), K));
        }
    }

    if (options.validate)
        for (const auto& [name, alg] : session.structures) validate_structure(alg);

    if (doc.contains("mc_element")) {
        const Json& node = doc.at("mc_element");
        std::string owner = node.at("structure").get<std::string>();
        const AlgebraStructure* alg = session.structure(owner);
        if (!alg)
            throw DescriptionError("mc_element names unknown structure '" + owner + "'");
        Element alpha = parse_output(node.at("terms"), alg->space, K);
        if (options.validate) {
            MCReport mc = mc_check(*alg, alpha);
            if (alg->flavor == Flavor::lie && !mc.is_mc)
                throw ValidationError("mc_element.residual_zero", mc.residual.str());
            if (!mc.twisted_square_zero)
                throw ValidationError("mc_element.twisted_square_zero", "");
        }
        session.mc_structure = owner;
        session.mc_element = std::move(alpha);
    }

    if (doc.contains("morphism")) {
        const Json& node = doc.at("morphism");
        std::string source_name = node.at("source").get<std::string>();
        std::string target_name = node.at("target").get<std::string>();
        const AlgebraStructure* source = session.structure(source_name);
        const AlgebraStructure* target = session.structure(target_name);
        if (!source || !target)
            throw DescriptionError("morphism names unknown structures");

        LinfMorphism morphism{*source, *target, {}};
        if (node.contains("taylor")) {
            std::map<int, const Json*> by_arity;
            for (const auto& [key, entries] : node.at("taylor").items()) {
                int arity = 0;
                try {
                    arity = std::stoi(key);
                } catch (const std::exception&) {
                    throw DescriptionError("morphism taylor keys must be arities");
                }
                if (arity < 1) throw DescriptionError("morphism taylor arity must be >= 1");
                by_arity.emplace(arity, &entries);
            }
            int top = by_arity.empty() ? 0 : by_arity.rbegin()->first;
            for (int a = 1; a <= top; ++a) {
                MultilinearMap fa(a, source->coalgebra_space, target->coalgebra_space, 0, true);
                auto it = by_arity.find(a);
                if (it != by_arity.end())
                    parse_map_entries(*it->second, fa, source->coalgebra_space,
                                      target->coalgebra_space, K);
                morphism.taylor.push_back(std::move(fa));
            }
        }
        if (node.contains("complete_to_arity")) {
            int target_arity = node.at("complete_to_arity").get<int>();
            CompletionResult completed = complete_morphism(morphism, target_arity);
            if (!completed.completed)
                throw ValidationError("morphism.completion",
                                      "obstruction at arity " +
                                          std::to_string(completed.failed_arity));
            morphism = std::move(completed.morphism);
            session.morphism_completed_to = target_arity;
            session.morphism_complete_request = target_arity;
        }
        if (options.validate) {
            Coalgebra cs = structure_coalgebra(*source);
            int bound = std::min(options.morphism_check_arity, morphism.max_arity());
            for (int n = 1; n <= bound; ++n)
                for (const Word& w : cs.basis_words(n))
                    if (!morphism_equation_residual(morphism, w).is_zero()) {
                        WordSum ws;
                        ws.add(w, Scalar::one(K));
                        throw ValidationError("morphism.equation_arity_" + std::to_string(n),
                                              ws.str(*cs.space));
                    }
        }
        session.morphism = std::move(morphism);
    }

    return session;
}

Json session_json(const Session& session) {
    Json doc;
    doc["schema_version"] = 1;
    doc["truncation_order"] = session.truncation;

    Json spaces;
    std::map<std::string, const GradedSpace*> by_label;
    for (const auto& [name, alg] : session.structures)
        by_label.emplace(alg.space->label(), alg.space.get());
    for (const auto& [label, space] : by_label) spaces[label] = space_json(*space);
    doc["spaces"] = std::move(spaces);

    Json structures;
    for (const auto& [name, alg] : session.structures) {
        Json node;
        node["flavor"] = alg.flavor == Flavor::lie ? "lie" : "leibniz";
        node["space"] = alg.space->label();
        node["d"] = map_json(alg.d);
        node["bracket"] = map_json(alg.bracket);
        structures[name] = std::move(node);
    }
    doc["structures"] = std::move(structures);

    if (session.mc_element) {
        Json node;
        node["structure"] = *session.mc_structure;
        Json terms = Json::array();
        const AlgebraStructure* alg = session.structure(*session.mc_structure);
        for (const auto& [idx, coeff] : session.mc_element->terms())
            for (const auto& [exp, r] : coeff.terms())
                terms.push_back(
                    {{"basis", alg->space->name(idx)}, {"coeff", coeff_string(r, exp)}});
        node["terms"] = std::move(terms);
        doc["mc_element"] = std::move(node);
    }

    if (session.morphism) {
        Json node;
        node["source"] = session.morphism->source.name;
        node["target"] = session.morphism->target.name;
        if (session.morphism_complete_request)
            node["complete_to_arity"] = *session.morphism_complete_request;
        Json taylor;
        for (int a = 1; a <= session.morphism->max_arity(); ++a) {
            const MultilinearMap& m = session.morphism->taylor[a - 1];
            if (m.is_zero()) continue;
            taylor[std::to_string(a)] = map_json(m);
        }
        node["taylor"] = std::move(taylor);
        doc["morphism"] = std::move(node);
    }
    return doc;
}

} // namespace

Session load_description_text(const std::string& text, const LoadOptions& options,
                              const std::string& origin) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw DescriptionError(origin + ": " + err.what());
    }
    try {
        return parse_session(doc, options, origin);
    } catch (const nlohmann::json::exception& err) {
        throw DescriptionError(origin + ": " + err.what());
    }
}

Session load_description(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw DescriptionError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_description_text(buffer.str(), options, path.string());
}

std::string describe_session(const Session& session) {
    return session_json(session).dump(2) + "\n";
}

std::string describe_b_tables(const BTables& tables) {
    Json doc;
    doc["schema_version"] = 1;
    doc["truncation_order"] = tables.truncation;
    Json spaces;
    spaces["source"] = space_json(*tables.source);
    spaces["target"] = space_json(*tables.target);
    doc["spaces"] = std::move(spaces);

    Json node;
    node["max_arity"] = static_cast<int>(tables.taylor.size());
    Json taylor;
    for (size_t n = 1; n <= tables.taylor.size(); ++n)
        taylor[std::to_string(n)] = map_json(tables.taylor[n - 1]);
    node["taylor"] = std::move(taylor);
    Json terms;
    for (const auto& [key, map] : tables.terms)
        terms[std::to_string(key.first) + ":" + std::to_string(key.second)] = map_json(map);
    node["terms"] = std::move(terms);
    doc["b_tables"] = std::move(node);
    return doc.dump(2) + "\n";
}

BTables load_b_tables_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw DescriptionError(err.what());
    }
    try {
        BTables tables;
        tables.truncation = doc.at("truncation_order").get<int>();
        tables.source = parse_space("source", doc.at("spaces").at("source"));
        tables.target = parse_space("target", doc.at("spaces").at("target"));
        const Json& node = doc.at("b_tables");
        int max_arity = node.at("max_arity").get<int>();
        for (int n = 1; n <= max_arity; ++n) {
            MultilinearMap m(n, tables.source, tables.target, 0, false);
            const Json& taylor = node.at("taylor");
            if (taylor.contains(std::to_string(n)))
                parse_map_entries(taylor.at(std::to_string(n)), m, tables.source, tables.target,
                                  tables.truncation);
            tables.taylor.push_back(std::move(m));
        }
        if (node.contains("terms")) {
            for (const auto& [key, entries] : node.at("terms").items()) {
                size_t colon = key.find(':');
                if (colon == std::string::npos)
                    throw DescriptionError("bad term key '" + key + "'");
                int n = std::stoi(key.substr(0, colon));
                int j = std::stoi(key.substr(colon + 1));
                MultilinearMap m(n, tables.source, tables.target, 0, false);
                parse_map_entries(entries, m, tables.source, tables.target, tables.truncation);
                tables.terms.emplace(std::make_pair(n, j), std::move(m));
            }
        }
        return tables;
    } catch (const nlohmann::json::exception& err) {
        throw DescriptionError(err.what());
    }
}

BTables load_b_tables(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DescriptionError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_b_tables_text(buffer.str());
}

std::string scalar_to_json(const Scalar& value) {
    Json out = Json::array();
    for (const auto& [exp, r] : value.terms())
        out.push_back({{"exp", exp}, {"coeff", rational_str(r)}});
    return out.dump();
}

Scalar scalar_from_json(const std::string& text, int truncation) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw DescriptionError(err.what());
    }
    if (!doc.is_array()) throw DescriptionError("a scalar is a list of {exp, coeff} terms");
    Scalar out(truncation);
    try {
        for (const auto& term : doc)
            out += Scalar::monomial(parse_rational(term.at("coeff").get<std::string>()),
                                    term.at("exp").get<int>(), truncation);
    } catch (const nlohmann::json::exception& err) {
        throw DescriptionError(err.what());
    }
    return out;
}

} // namespace leibcheck
