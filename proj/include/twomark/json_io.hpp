// Copyright (c) twomark contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "twomark/assembly.hpp"
#include "twomark/bn.hpp"

namespace twomark {

using json = nlohmann::json;

// {"vertices": n, "edges": [[u, v, mult], ...], "marks": {"v": id, "w": id}}
inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.mult});
    return json{{"vertices", g.vertex_count()}, {"edges", edges}};
}

inline json marked_graph_to_json(const MarkedGraph& mg) {
    json j = graph_to_json(mg.graph);
    j["marks"] = {{"v", mg.v}, {"w", mg.w}};
    return j;
}

inline Graph graph_from_json(const json& j) {
    int n = j.at("vertices").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3)
            throw std::invalid_argument("graph json: each edge is [u, v] or [u, v, mult]");
        edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<Vertex>(),
                         e.size() == 3 ? e.at(2).get<long long>() : 1});
    }
    return Graph(n, edges);
}

inline MarkedGraph marked_graph_from_json(const json& j) {
    Graph g = graph_from_json(j);
    if (!j.contains("marks"))
        throw std::invalid_argument("graph json: missing marks {\"v\":..,\"w\":..}");
    return MarkedGraph(std::move(g), j.at("marks").at("v").get<Vertex>(),
                       j.at("marks").at("w").get<Vertex>());
}

// {"coeffs": {"vertexId": count, ...}}, absent ids meaning zero
inline json divisor_to_json(const Divisor& d) {
    json coeffs = json::object();
    for (Vertex v = 0; v < d.size(); ++v)
        if (d[v] != 0) coeffs[std::to_string(v)] = d[v];
    return json{{"coeffs", coeffs}};
}

inline Divisor divisor_from_json(const json& j, int vertex_count) {
    Divisor d(vertex_count);
    for (const auto& [key, value] : j.at("coeffs").items()) {
        int v = std::stoi(key);
        if (v < 0 || v >= vertex_count) throw std::invalid_argument("divisor json: vertex out of range");
        d[v] = value.get<long long>();
    }
    return d;
}

// {"kind": "periodic", "period": k, "values": [...]} or
// {"kind": "shift-finite", "shift": m, "exceptions": {"n": tau(n), ...}}
inline json zperm_to_json(const ZPerm& p) {
    if (p.kind() == ZPerm::Kind::periodic)
        return json{{"kind", "periodic"}, {"period", p.period()}, {"values", p.values()}};
    json exc = json::object();
    for (const auto& [n, t] : p.exceptions()) exc[std::to_string(n)] = t;
    return json{{"kind", "shift-finite"}, {"shift", p.shift_amount()}, {"exceptions", exc}};
}

inline ZPerm zperm_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "periodic")
        return ZPerm::periodic(j.at("period").get<long long>(),
                               j.at("values").get<std::vector<long long>>());
    if (kind == "shift-finite") {
        std::map<long long, long long> exc;
        if (j.contains("exceptions"))
            for (const auto& [key, value] : j.at("exceptions").items())
                exc[std::stoll(key)] = value.get<long long>();
        return ZPerm::shift_finite(j.at("shift").get<long long>(), std::move(exc));
    }
    throw std::invalid_argument("permutation json: unknown kind " + kind);
}

// {"loops": [{"l1": 1, "l2": 2}, ...], "xi": [0, 1, ...]}
inline json chain_spec_to_json(const ChainSpec& s) {
    json loops = json::array();
    for (const auto& loop : s.loops) loops.push_back({{"l1", loop.l1}, {"l2", loop.l2}});
    json j{{"loops", loops}};
    if (!s.xi.empty()) j["xi"] = s.xi;
    return j;
}

inline ChainSpec chain_spec_from_json(const json& j) {
    ChainSpec s;
    for (const auto& loop : j.at("loops"))
        s.loops.push_back({loop.at("l1").get<long long>(), loop.at("l2").get<long long>()});
    if (j.contains("xi")) s.xi = j.at("xi").get<std::vector<long long>>();
    return s;
}

inline json inv_to_json(const InvCount& c) {
    if (c.infinite) return json("INFINITE");
    return json(c.value);
}

inline json submodularity_to_json(const SubmodularityReport& rep) {
    json j{{"submodular", rep.submodular},
           {"torsion", rep.torsion},
           {"genus", rep.genus},
           {"degree", rep.degree}};
    if (rep.tau) j["tau"] = zperm_to_json(*rep.tau);
    if (rep.violation)
        j["violation"] = {{"a", rep.violation->a},
                          {"b", rep.violation->b},
                          {"delta", rep.violation->delta_value}};
    return j;
}

inline json certification_to_json(const CertificationReport& rep, bool include_perms = false) {
    json violations = json::array();
    for (size_t i = 0; i < rep.details.size(); ++i) {
        const ClassCertificate& cc = rep.details[i];
        if (cc.ok()) continue;
        json v{{"class", i}, {"divisor", divisor_to_json(cc.representative)}};
        if (cc.violation)
            v["witness"] = {{"a", cc.violation->a},
                            {"b", cc.violation->b},
                            {"delta", cc.violation->delta_value}};
        if (!cc.submodular) v["reason"] = "not submodular";
        else if (!cc.member_ok) v["reason"] = "outside the k-periodic group";
        else if (!cc.bound_ok) v["reason"] = "inversion bound exceeded";
        else if (!cc.width_ok) v["reason"] = "inversion width reaches k";
        else v["reason"] = "count identities failed";
        violations.push_back(std::move(v));
    }
    json j{{"k", rep.k},
           {"torsion", rep.torsion},
           {"genus", rep.genus},
           {"classes", rep.classes},
           {"pass", rep.pass},
           {"max_inv_k", rep.max_inv},
           {"worst_class", rep.worst_class},
           {"violations", violations}};
    if (include_perms) {
        json perms = json::array();
        for (const ClassCertificate& cc : rep.details) {
            json p{{"divisor", divisor_to_json(cc.representative)},
                   {"submodular", cc.submodular},
                   {"inv_k", inv_to_json(cc.inversions)}};
            if (cc.tau) p["tau"] = zperm_to_json(*cc.tau);
            perms.push_back(std::move(p));
        }
        j["permutations"] = std::move(perms);
    }
    return j;
}

inline json vanishing_to_json(const VanishingData& vd) {
    return json{{"r", vd.r}, {"a", vd.at_v}, {"b", vd.at_w}, {"rho", vd.rho}};
}

inline json inv_bound_to_json(const InvBoundReport& rep) {
    return json{{"r", rep.r},
                {"a", rep.at_v},
                {"b", rep.at_w},
                {"sigma", rep.sigma},
                {"s_size", rep.s_size},
                {"a_set_sizes", rep.a_set_sizes},
                {"b_set_sizes", rep.b_set_sizes},
                {"inv_0", inv_to_json(rep.inv0)},
                {"bound", rep.bound},
                {"identities", {{"sequences", rep.sequences_ok},
                                {"sizes", rep.sizes_ok},
                                {"disjoint", rep.disjoint_ok},
                                {"inversions", rep.inversions_ok},
                                {"bound", rep.bound_ok}}},
                {"ok", rep.ok()}};
}

inline json splitting_to_json(const SplittingResult& res) {
    json x = json::object();
    for (const auto& [m, v] : res.x) x[std::to_string(m)] = v;
    json j{{"classifiable", res.classifiable}, {"x", x}};
    if (res.classifiable) {
        j["mu"] = res.type.mu;
        j["d_mu"] = res.type.degree;
        j["codim"] = res.type.codim;
    } else {
        j["witness_m"] = res.witness_m;
    }
    return j;
}

inline json splitting_generality_to_json(const SplittingGeneralityReport& rep) {
    json checks = json::array();
    for (const SplittingClassCheck& cc : rep.checks) {
        json c{{"degree", cc.degree},
               {"divisor", divisor_to_json(cc.representative)},
               {"submodular", cc.submodular},
               {"classifiable", cc.classifiable},
               {"inv_k", inv_to_json(cc.inv_k)},
               {"ok", cc.ok()}};
        if (cc.classifiable) {
            c["mu"] = cc.type.mu;
            c["codim"] = cc.type.codim;
        }
        checks.push_back(std::move(c));
    }
    return json{{"k", rep.k},
                {"genus", rep.genus},
                {"kv_equiv_kw", rep.kv_equiv_kw},
                {"rank_kv", rep.rank_kv},
                {"pass", rep.pass},
                {"classes", checks}};
}

inline json chaining_to_json(const ChainingReport& rep) {
    json j{{"tables_match", rep.tables_match},
           {"d1_submodular", rep.d1_submodular},
           {"d2_submodular", rep.d2_submodular},
           {"glued_submodular", rep.glued_submodular},
           {"perms_checked", rep.perms_checked},
           {"ok", rep.ok()}};
    if (rep.perms_checked) j["perms_match"] = rep.perms_match;
    if (rep.mismatch) j["mismatch"] = {{"a", rep.mismatch->first}, {"b", rep.mismatch->second}};
    return j;
}

} // namespace twomark
