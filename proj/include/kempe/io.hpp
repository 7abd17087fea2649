#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "coloring.hpp"
#include "graph.hpp"
#include "kempe.hpp"

namespace kempe {

using json = nlohmann::json;

// {"n": int, "edges": [[u,v],...], "labels": optional}
inline json graph_to_json(const Graph& g)
{
    json j;
    j["n"] = g.n;
    j["edges"] = json::array();
    for (auto [u, v] : g.edges())
        j["edges"].push_back({u, v});
    if (!g.labels.empty())
        j["labels"] = g.labels;
    return j;
}

inline Graph graph_from_json(const json& j)
{
    if (!j.contains("n") || !j.contains("edges"))
        fail(errc::precondition_violated, "graph JSON needs n and edges");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"])
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j["labels"].get<std::vector<std::string>>();
    return Graph::from_edges(j["n"].get<int>(), edges, std::move(labels));
}

// DIMACS .col: "p edge n m" then "e u v" lines, 1-based.
inline Graph graph_from_dimacs(std::istream& in)
{
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string fmt;
            int m;
            ls >> fmt >> n >> m;
        } else if (tag == "e") {
            int u, v;
            ls >> u >> v;
            if (n < 0)
                fail(errc::precondition_violated, "DIMACS edge before problem line");
            if (u == v)
                continue;
            int a = std::min(u, v) - 1, b = std::max(u, v) - 1;
            edges.emplace_back(a, b);
        }
    }
    if (n < 0)
        fail(errc::precondition_violated, "DIMACS input without problem line");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(n, edges);
}

inline json coloring_to_json(const Coloring& c)
{
    return json{{"k", c.k}, {"colors", c.colors}};
}

inline Coloring coloring_from_json(const json& j)
{
    return Coloring(j.at("k").get<int>(), j.at("colors").get<std::vector<int>>());
}

// {"start": coloring, "moves": [{"v": int, "c": int}], "provenance": string}
inline json sequence_to_json(const Coloring& start, const MoveSequence& seq)
{
    json j;
    j["start"] = coloring_to_json(start);
    j["moves"] = json::array();
    for (const auto& m : seq.moves)
        j["moves"].push_back({{"v", m.vertex}, {"c", m.target_color}});
    j["provenance"] = seq.provenance;
    return j;
}

inline std::pair<Coloring, MoveSequence> sequence_from_json(const json& j)
{
    Coloring start = coloring_from_json(j.at("start"));
    MoveSequence seq;
    for (const auto& m : j.at("moves"))
        seq.moves.push_back({m.at("v").get<int>(), m.at("c").get<int>()});
    if (j.contains("provenance"))
        seq.provenance = j["provenance"].get<std::string>();
    return {std::move(start), std::move(seq)};
}

inline json lists_to_json(const ListAssignment& la)
{
    json j;
    j["lists"] = la.lists;
    return j;
}

inline ListAssignment lists_from_json(const json& j)
{
    ListAssignment la;
    la.lists = j.at("lists").get<std::vector<std::vector<int>>>();
    for (auto& l : la.lists)
        std::sort(l.begin(), l.end());
    return la;
}

inline json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(errc::precondition_violated, "cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        fail(errc::precondition_violated, "cannot write " + path);
    out << j.dump(2) << "\n";
}

inline Graph load_graph_file(const std::string& path)
{
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".col") {
        std::ifstream in(path);
        if (!in)
            fail(errc::precondition_violated, "cannot open " + path);
        return graph_from_dimacs(in);
    }
    return graph_from_json(load_json_file(path));
}

} // namespace kempe
