#pragma once

#include <string>
#include <vector>

#include "balanced/generators.hpp"
#include "balanced/graph.hpp"

namespace balanced::testing {

struct Fixture {
    std::string name;
    Graph graph;
};

// P_3, P_5, K_{1,3}, C_4..C_8, K_3..K_8, glued paths {2,3,5} x {1,2,10},
// the four catalog graphs and 20 seeded G(50, 0.1).
inline std::vector<Fixture> standard_fixtures(std::size_t er_count = 20) {
    std::vector<Fixture> out;
    out.push_back({"P_3", gen_path(3)});
    out.push_back({"P_5", gen_path(5)});
    out.push_back({"K_1,3", gen_star(3)});
    for (std::size_t n = 4; n <= 8; ++n) out.push_back({"C_" + std::to_string(n), gen_cycle(n)});
    for (std::size_t n = 3; n <= 8; ++n) out.push_back({"K_" + std::to_string(n), gen_complete(n)});
    for (std::size_t m : {2, 3, 5})
        for (std::size_t ell : {1, 2, 10})
            out.push_back({"glued(" + std::to_string(m) + "," + std::to_string(ell) + ")",
                           gen_glued_paths(m, ell).graph});
    for (const char* name : {"frucht", "dodecahedral", "desargues", "petersen"}) out.push_back({name, load_named(name)});
    for (std::size_t s = 0; s < er_count; ++s)
        out.push_back({"ER(50,0.1,seed=" + std::to_string(s + 1) + ")", gen_erdos_renyi(50, 0.1, s + 1)});
    return out;
}

inline Graph graph_from(std::vector<Edge> edges, std::size_t n) { return build_graph(edges, n); }

}  // namespace balanced::testing
