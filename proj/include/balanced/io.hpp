#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "balanced/embedding.hpp"
#include "balanced/generators.hpp"
#include "balanced/measures.hpp"

namespace balanced {

// Measure files: `vertex weight` per line, weight decimal or p/q, `#`
// comments, unlisted vertices get zero. A file whose weights sum to exactly
// 1 yields an exact measure; otherwise the sum must be within 1e-12 of 1.
VertexMeasure parse_measure(std::istream& in, std::size_t n);
VertexMeasure read_measure_file(const std::string& path, std::size_t n);
/// Writes the support only; exact weights as p/q.
void write_measure(std::ostream& out, const VertexMeasure& mu);

// Point files: whitespace-separated coordinates, then optionally `|` and
// metadata columns. An optional `# meta: name1 name2` line names them.
PointCloud parse_points(std::istream& in);
PointCloud read_points_file(const std::string& path);
void write_points(std::ostream& out, const PointCloud& cloud);

/// CSV with header `vertex,<label>...`, one row per point. Values are printed
/// with 17 significant digits.
void write_csv(std::ostream& out, const PointCloud& points, const std::vector<std::string>& labels);
/// Embedding coordinates; column labels are the support vertices.
void write_embedding_csv(std::ostream& out, const Embedding& emb);

}  // namespace balanced
