#include "balanced/document.hpp"

#include <json.hpp>

#include "balanced/error.hpp"

namespace balanced {

using nlohmann::json;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MeasureEntry, vertex, weight, exact)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GraphSection, source, n, edges, diameter, max_degree)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConfigSection, seed, tie_break, max_steps, min_steps, stop_gap, eps_supp, tol, initial)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConvergenceSection, steps, m, E, E_exact, max_T, gap, stop_gap, converged,
                                   alpha_estimate, alpha_in_range, heavy_vertices_near_max, E_series)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MeasureSection, origin, refine_status, refine_reason, level, entries)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BalanceSection, is_balanced, exact, support, argmax_set, max_T, max_T_exact,
                                   support_T_spread, support_T_spread_exact)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EmbeddingSection, columns, alpha, alpha_exact, lipschitz_max_ratio,
                                   lipschitz_violations, lipschitz_worst_pair, lipschitz_pairs, lipschitz_sampled,
                                   hyperplane_deviation, hyperplane_exact, hyperplane_degenerate,
                                   separation_min_avg_linf, separation_bound, separation_satisfied,
                                   separation_mean_avg_l1, guarantees_hold, kept_columns, reduced_alpha,
                                   reduced_lipschitz_max_ratio, reduced_lipschitz_violations, centered, output_dim,
                                   pca_explained_ratio, distortion_pairs, distortion_collapsed,
                                   distortion_median_ratio, distortion_c_G, distortion_in_band)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BoundarySection, members, witnesses, size, max_degree, diameter, lower_bound,
                                   satisfied)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleEntry, entries, energy, energy_exact, level, argmax_size)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleSection, mode, parameter, measures)

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& value) {
    if (value) j[key] = *value;
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& value) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) value = it->template get<T>();
}

}  // namespace

std::string to_json_text(const ResultDocument& doc, bool include_timing) {
    json j;
    j["command"] = doc.command;
    j["graph"] = doc.graph;
    put(j, "config", doc.config);
    put(j, "convergence", doc.convergence);
    put(j, "measure", doc.measure);
    put(j, "balance", doc.balance);
    put(j, "uniform_balance", doc.uniform_balance);
    put(j, "embedding", doc.embedding);
    put(j, "boundary", doc.boundary);
    put(j, "oracle", doc.oracle);
    j["warnings"] = doc.warnings;
    if (include_timing) j["timing"] = doc.timing;
    return j.dump(2) + "\n";
}

ResultDocument from_json_text(const std::string& text) {
    try {
        const json j = json::parse(text);
        ResultDocument doc;
        doc.command = j.at("command").get<std::string>();
        doc.graph = j.at("graph").get<GraphSection>();
        take(j, "config", doc.config);
        take(j, "convergence", doc.convergence);
        take(j, "measure", doc.measure);
        take(j, "balance", doc.balance);
        take(j, "uniform_balance", doc.uniform_balance);
        take(j, "embedding", doc.embedding);
        take(j, "boundary", doc.boundary);
        take(j, "oracle", doc.oracle);
        doc.warnings = j.at("warnings").get<std::vector<std::string>>();
        if (auto it = j.find("timing"); it != j.end()) doc.timing = it->get<std::map<std::string, double>>();
        return doc;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed result document: ") + e.what());
    }
}

}  // namespace balanced
