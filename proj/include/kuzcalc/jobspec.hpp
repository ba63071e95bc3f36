#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kuzcalc/errors.hpp"

namespace kuzcalc {

using Json = nlohmann::ordered_json;

/// A fully serialized run request. Identical JobSpecs (including the seed)
/// must produce byte-identical machine output, so everything that can move
/// the computation lives here.
struct JobSpec {
    std::string command;  // jac, hilbert, hs-table, hs-dim, subalgebra, koszul,
                          // sectors, torelli-verify, torelli-search, torelli-fingerprint
    std::string poly;
    std::string poly2;
    std::vector<int> weights;
    long degree = 0;
    std::optional<long> t_min;
    std::optional<long> t_max;
    std::optional<long> m_min;
    std::optional<long> m_max;
    std::optional<long> t_cell;
    std::optional<long> m_cell;
    std::string format = "human";  // human | json | csv
    std::uint64_t seed = 0;
    bool audit = false;
    bool slices = false;
    bool bases = false;
    bool structure = false;
    std::string mode = "exact-pullback";  // torelli-verify
    std::string strategy = "solve";       // torelli-search: bounded | solve | random
    std::string matrix;                   // rows ';'-separated, entries ','-separated
    std::string scalar = "1";

    bool operator==(const JobSpec&) const = default;

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["poly"] = poly;
        j["poly2"] = poly2;
        j["weights"] = weights;
        j["degree"] = degree;
        j["t_min"] = t_min ? Json(*t_min) : Json(nullptr);
        j["t_max"] = t_max ? Json(*t_max) : Json(nullptr);
        j["m_min"] = m_min ? Json(*m_min) : Json(nullptr);
        j["m_max"] = m_max ? Json(*m_max) : Json(nullptr);
        j["t"] = t_cell ? Json(*t_cell) : Json(nullptr);
        j["m"] = m_cell ? Json(*m_cell) : Json(nullptr);
        j["format"] = format;
        j["seed"] = seed;
        j["audit"] = audit;
        j["slices"] = slices;
        j["bases"] = bases;
        j["structure_constants"] = structure;
        j["mode"] = mode;
        j["strategy"] = strategy;
        j["matrix"] = matrix;
        j["scalar"] = scalar;
        return j;
    }

    static JobSpec from_json(const Json& j) {
        JobSpec s;
        s.command = j.at("command").get<std::string>();
        s.poly = j.at("poly").get<std::string>();
        s.poly2 = j.at("poly2").get<std::string>();
        s.weights = j.at("weights").get<std::vector<int>>();
        s.degree = j.at("degree").get<long>();
        auto opt = [&](const char* key) -> std::optional<long> {
            if (j.at(key).is_null()) return std::nullopt;
            return j.at(key).get<long>();
        };
        s.t_min = opt("t_min");
        s.t_max = opt("t_max");
        s.m_min = opt("m_min");
        s.m_max = opt("m_max");
        s.t_cell = opt("t");
        s.m_cell = opt("m");
        s.format = j.at("format").get<std::string>();
        s.seed = j.at("seed").get<std::uint64_t>();
        s.audit = j.at("audit").get<bool>();
        s.slices = j.at("slices").get<bool>();
        s.bases = j.at("bases").get<bool>();
        s.structure = j.at("structure_constants").get<bool>();
        s.mode = j.at("mode").get<std::string>();
        s.strategy = j.at("strategy").get<std::string>();
        s.matrix = j.at("matrix").get<std::string>();
        s.scalar = j.at("scalar").get<std::string>();
        return s;
    }

    /// Flat key-value job file (one `key = value` per line, '#' comments).
    std::string to_jobfile() const {
        std::ostringstream out;
        auto emit = [&](const char* key, const std::string& value) {
            if (!value.empty()) out << key << " = " << value << "\n";
        };
        emit("command", command);
        emit("poly", poly);
        emit("poly2", poly2);
        if (!weights.empty()) {
            std::string w;
            for (std::size_t i = 0; i < weights.size(); ++i)
                w += (i ? "," : "") + std::to_string(weights[i]);
            emit("weights", w);
        }
        emit("degree", std::to_string(degree));
        auto emit_opt = [&](const char* key, const std::optional<long>& v) {
            if (v) emit(key, std::to_string(*v));
        };
        emit_opt("t-min", t_min);
        emit_opt("t-max", t_max);
        emit_opt("m-min", m_min);
        emit_opt("m-max", m_max);
        emit_opt("t", t_cell);
        emit_opt("m", m_cell);
        emit("format", format);
        emit("seed", std::to_string(seed));
        if (audit) emit("audit", "true");
        if (slices) emit("slices", "true");
        if (bases) emit("bases", "true");
        if (structure) emit("structure-constants", "true");
        emit("mode", mode);
        emit("strategy", strategy);
        emit("matrix", matrix);
        emit("scalar", scalar);
        return out.str();
    }

    static JobSpec from_jobfile(const std::string& text) {
        JobSpec s;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string v) {
                auto b = v.find_first_not_of(" \t\r");
                auto e = v.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
            };
            if (trim(line).empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw parse_error("job file line " + std::to_string(lineno) + ": expected key = value",
                                  0);
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key == "command") s.command = value;
            else if (key == "poly") s.poly = value;
            else if (key == "poly2") s.poly2 = value;
            else if (key == "weights") {
                s.weights.clear();
                std::istringstream ws(value);
                std::string tok;
                while (std::getline(ws, tok, ',')) s.weights.push_back(std::stoi(trim(tok)));
            } else if (key == "degree") s.degree = std::stol(value);
            else if (key == "t-min") s.t_min = std::stol(value);
            else if (key == "t-max") s.t_max = std::stol(value);
            else if (key == "m-min") s.m_min = std::stol(value);
            else if (key == "m-max") s.m_max = std::stol(value);
            else if (key == "t") s.t_cell = std::stol(value);
            else if (key == "m") s.m_cell = std::stol(value);
            else if (key == "format") s.format = value;
            else if (key == "seed") s.seed = std::stoull(value);
            else if (key == "audit") s.audit = (value == "true" || value == "1");
            else if (key == "slices") s.slices = (value == "true" || value == "1");
            else if (key == "bases") s.bases = (value == "true" || value == "1");
            else if (key == "structure-constants") s.structure = (value == "true" || value == "1");
            else if (key == "mode") s.mode = value;
            else if (key == "strategy") s.strategy = value;
            else if (key == "matrix") s.matrix = value;
            else if (key == "scalar") s.scalar = value;
            else
                throw parse_error("job file line " + std::to_string(lineno) + ": unknown key '" +
                                      key + "'",
                                  0);
        }
        return s;
    }
};

/// Versioned machine-readable result. The JSON form round-trips and contains
/// no timing or other run-dependent noise; wall-clock timing goes to the
/// diagnostic stream instead.
struct Report {
    static constexpr int schema_version = 1;

    JobSpec job;
    std::string status = "ok";
    Json result = Json::object();

    bool operator==(const Report& o) const {
        return job == o.job && status == o.status && result == o.result;
    }

    Json to_json() const {
        Json j;
        j["schema_version"] = schema_version;
        j["status"] = status;
        j["job"] = job.to_json();
        j["result"] = result;
        return j;
    }

    static Report from_json(const Json& j) {
        if (j.at("schema_version").get<int>() != schema_version)
            throw math_error("report: unsupported schema_version");
        Report r;
        r.status = j.at("status").get<std::string>();
        r.job = JobSpec::from_json(j.at("job"));
        r.result = j.at("result");
        return r;
    }

    std::string to_json_string() const { return to_json().dump(2) + "\n"; }
};

}  // namespace kuzcalc
