#pragma once

// Causal-set persistence.
//
// JSON: {"vertices": [{"id": "p", "T": 0.0}, ...],
//        "edges":    [{"src": "p", "dst": "q", "tau": 1.0}, ...]}
// CSV:  vertices.csv with header "id,T"; edges.csv with header "src,dst,tau".

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lorentz/causet.hpp"

namespace lorentz {

nlohmann::json causet_to_json(const CausalSetSpace& space);
CausalSetSpace causet_from_json(const nlohmann::json& j, Execution exec = Execution::kParallel);

CausalSetSpace load_causet_json(const std::filesystem::path& path,
                                Execution exec = Execution::kParallel);
void save_causet_json(const CausalSetSpace& space, const std::filesystem::path& path);

CausalSetSpace load_causet_csv(const std::filesystem::path& vertices_csv,
                               const std::filesystem::path& edges_csv,
                               Execution exec = Execution::kParallel);
void save_causet_csv(const CausalSetSpace& space, const std::filesystem::path& vertices_csv,
                     const std::filesystem::path& edges_csv);

/// Writes `contents` to a sibling temp file, then renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

/// Shortest decimal text that round-trips the double.
std::string format_double(double v);

}  // namespace lorentz
