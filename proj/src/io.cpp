#include "flatwalk/io.hpp"

#include <fstream>
#include <sstream>

namespace flatwalk {

namespace {

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void require_object(const nlohmann::json& j, const char* what) {
    if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
}

int require_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw ParseError(std::string("missing or non-integer field \"") + key + "\"");
    return j.at(key).get<int>();
}

std::complex<double> parse_coeff(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError("coefficient must be a number or an [re, im] pair");
}

}  // namespace

nlohmann::json architecture_to_json(const Architecture& arch) {
    nlohmann::json j;
    j["n"] = arch.n();
    j["q"] = arch.q();
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : arch.layers()) {
        nlohmann::json jl = nlohmann::json::array();
        for (const Gate& g : layer) jl.push_back({g.a, g.b});
        layers.push_back(std::move(jl));
    }
    j["layers"] = std::move(layers);
    if (arch.param_count()) j["p"] = *arch.param_count();
    if (arch.generator_norms()) j["generator_norms"] = *arch.generator_norms();
    if (arch.lenient()) j["lenient"] = true;
    return j;
}

Architecture architecture_from_json(const nlohmann::json& j) {
    require_object(j, "architecture");
    const int n = require_int(j, "n");
    const int q = require_int(j, "q");
    if (!j.contains("layers") || !j.at("layers").is_array())
        throw ParseError("missing or non-array field \"layers\"");

    std::vector<std::vector<Gate>> layers;
    for (const auto& jl : j.at("layers")) {
        if (!jl.is_array()) throw ParseError("each layer must be an array of [a, b] pairs");
        std::vector<Gate> layer;
        for (const auto& jg : jl) {
            if (!jg.is_array() || jg.size() != 2 || !jg[0].is_number_integer() ||
                !jg[1].is_number_integer())
                throw ParseError("each gate must be a pair of site indices");
            layer.push_back({jg[0].get<int>(), jg[1].get<int>()});
        }
        layers.push_back(std::move(layer));
    }

    std::optional<int> p;
    if (j.contains("p")) {
        if (!j.at("p").is_number_integer()) throw ParseError("field \"p\" must be an integer");
        p = j.at("p").get<int>();
    }

    std::optional<std::vector<double>> norms;
    if (j.contains("generator_norms")) {
        const auto& jn = j.at("generator_norms");
        if (jn.is_number()) {
            if (!p) throw ParseError("scalar generator_norms shorthand requires \"p\"");
            norms = std::vector<double>(static_cast<std::size_t>(std::max(*p, 0)),
                                        jn.get<double>());
        } else if (jn.is_array()) {
            std::vector<double> list;
            for (const auto& v : jn) {
                if (!v.is_number()) throw ParseError("generator_norms entries must be numbers");
                list.push_back(v.get<double>());
            }
            norms = std::move(list);
        } else {
            throw ParseError("generator_norms must be a number or an array of numbers");
        }
    }

    bool lenient = false;
    if (j.contains("lenient")) {
        if (!j.at("lenient").is_boolean()) throw ParseError("field \"lenient\" must be a boolean");
        lenient = j.at("lenient").get<bool>();
    }

    return Architecture(n, q, std::move(layers), p, std::move(norms), lenient);
}

Architecture load_architecture(const std::string& path) {
    return architecture_from_json(parse_file(path));
}

void save_architecture(const Architecture& arch, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << architecture_to_json(arch).dump(2) << '\n';
}

nlohmann::json hamiltonian_to_json(const HamiltonianSpec& spec) {
    nlohmann::json j;
    j["n"] = spec.n();
    j["q"] = spec.q();
    nlohmann::json terms = nlohmann::json::array();
    for (const Term& t : spec.terms()) {
        nlohmann::json jt;
        nlohmann::json sites = nlohmann::json::array();
        nlohmann::json ops = nlohmann::json::array();
        for (const auto& [site, op] : t.pattern.entries()) {
            sites.push_back(site);
            ops.push_back(op);
        }
        jt["sites"] = std::move(sites);
        jt["ops"] = std::move(ops);
        jt["coeff"] = {t.coeff.real(), t.coeff.imag()};
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j;
}

HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j) {
    require_object(j, "hamiltonian");
    const int n = require_int(j, "n");
    const int q = require_int(j, "q");
    const bool has_terms = j.contains("terms");
    const bool has_pauli = j.contains("pauli_terms");
    if (has_terms == has_pauli)
        throw ParseError("exactly one of \"terms\" and \"pauli_terms\" must be present");

    if (has_pauli) {
        if (q != 2) throw DomainError("pauli_terms requires q = 2");
        if (!j.at("pauli_terms").is_array()) throw ParseError("pauli_terms must be an array");
        std::vector<std::pair<std::string, std::complex<double>>> strings;
        for (const auto& jt : j.at("pauli_terms")) {
            if (!jt.is_array() || jt.size() != 2 || !jt[0].is_string())
                throw ParseError("each pauli term must be [string, coeff]");
            strings.emplace_back(jt[0].get<std::string>(), parse_coeff(jt[1]));
        }
        HamiltonianSpec spec = parse_pauli(strings);
        if (spec.n() != n)
            throw DomainError("pauli string length does not match the declared n");
        return spec;
    }

    if (!j.at("terms").is_array()) throw ParseError("terms must be an array");
    std::vector<Term> terms;
    for (const auto& jt : j.at("terms")) {
        require_object(jt, "term");
        if (!jt.contains("sites") || !jt.at("sites").is_array() || !jt.contains("ops") ||
            !jt.at("ops").is_array())
            throw ParseError("each term needs \"sites\" and \"ops\" arrays");
        const auto& sites = jt.at("sites");
        const auto& ops = jt.at("ops");
        if (sites.size() != ops.size())
            throw ParseError("\"sites\" and \"ops\" must have equal length");
        if (!jt.contains("coeff")) throw ParseError("each term needs a \"coeff\"");
        std::vector<std::pair<int, int>> entries;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            if (!sites[i].is_number_integer() || !ops[i].is_number_integer())
                throw ParseError("sites and ops must be integers");
            entries.emplace_back(sites[i].get<int>(), ops[i].get<int>());
        }
        terms.push_back({SupportPattern(std::move(entries)), parse_coeff(jt.at("coeff"))});
    }
    return HamiltonianSpec(n, q, std::move(terms));
}

HamiltonianSpec load_hamiltonian(const std::string& path) {
    return hamiltonian_from_json(parse_file(path));
}

nlohmann::ordered_json report_to_json(const EstimateReport& report) {
    nlohmann::ordered_json j;
    j["estimate"] = report.estimate;
    j["std_error"] = report.std_error;
    j["n_samples"] = report.n_samples;
    j["seed"] = report.seed;
    j["sum_c2"] = report.sum_c2;
    j["method"] = report.method;
    return j;
}

nlohmann::ordered_json bound_report_to_json(const BoundReport& report,
                                            const nlohmann::json& inputs) {
    nlohmann::ordered_json j;
    j["lower"] = report.lower;
    j["upper"] = report.upper;
    j["lower_formula"] = report.lower_formula;
    j["upper_formula"] = report.upper_formula;
    j["vacuous_upper"] = report.vacuous_upper;
    if (!inputs.is_null()) j["inputs"] = inputs;
    return j;
}

nlohmann::json violations_to_json(const std::vector<Violation>& violations) {
    nlohmann::json list = nlohmann::json::array();
    for (const Violation& v : violations) {
        nlohmann::json jv;
        jv["code"] = v.code;
        if (v.layer >= 0) jv["layer"] = v.layer;
        if (v.site >= 0) jv["site"] = v.site;
        jv["message"] = v.message;
        list.push_back(std::move(jv));
    }
    return list;
}

}  // namespace flatwalk
