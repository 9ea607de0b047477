#include "balanced/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "balanced/error.hpp"

namespace balanced {

namespace {

std::string strip_comment(std::string line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    return line;
}

std::string fmt_double(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

}  // namespace

VertexMeasure parse_measure(std::istream& in, std::size_t n) {
    std::vector<Rational> w(n, 0);
    std::vector<bool> seen(n, false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(strip_comment(line));
        std::string vtext, wtext, extra;
        if (!(fields >> vtext)) continue;
        if (!(fields >> wtext) || (fields >> extra)) {
            throw InputError("measure line " + std::to_string(lineno) + ": expected `vertex weight`");
        }
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(vtext, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != vtext.size()) throw InputError("measure line " + std::to_string(lineno) + ": bad vertex");
        if (v >= n) {
            throw InputError("measure line " + std::to_string(lineno) + ": vertex " + vtext +
                             " out of range (graph has " + std::to_string(n) + " vertices)");
        }
        if (seen[v]) throw InputError("measure lists vertex " + vtext + " twice");
        seen[v] = true;
        w[v] = parse_rational(wtext);
    }
    Rational sum = 0;
    for (const auto& q : w) sum += q;
    if (sum == 1) return VertexMeasure::from_rationals(std::move(w));
    std::vector<double> approx;
    approx.reserve(n);
    for (const auto& q : w) approx.push_back(q.get_d());
    return VertexMeasure::from_doubles(std::move(approx));
}

VertexMeasure read_measure_file(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open measure file '" + path + "'");
    return parse_measure(in, n);
}

void write_measure(std::ostream& out, const VertexMeasure& mu) {
    for (Vertex v : mu.support()) {
        out << v << ' ';
        if (mu.is_exact()) {
            out << to_string(mu.exact()[v]);
        } else {
            out << fmt_double(mu[v]);
        }
        out << '\n';
    }
}

PointCloud parse_points(std::istream& in) {
    PointCloud cloud;
    std::string line;
    std::size_t lineno = 0;
    bool shape_known = false;
    std::size_t meta_cols = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find("# meta:"); pos != std::string::npos) {
            std::istringstream names(line.substr(pos + 7));
            cloud.meta_names.clear();
            for (std::string name; names >> name;) cloud.meta_names.push_back(name);
            continue;
        }
        line = strip_comment(line);
        std::string coord_part = line, meta_part;
        if (auto bar = line.find('|'); bar != std::string::npos) {
            coord_part = line.substr(0, bar);
            meta_part = line.substr(bar + 1);
        }
        auto read_all = [&](const std::string& text) {
            std::istringstream fields(text);
            std::vector<double> values;
            for (std::string tok; fields >> tok;) {
                std::size_t used = 0;
                double x = 0.0;
                try {
                    x = std::stod(tok, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != tok.size() || !std::isfinite(x)) {
                    throw InputError("point line " + std::to_string(lineno) + ": bad number '" + tok + "'");
                }
                values.push_back(x);
            }
            return values;
        };
        auto coords = read_all(coord_part);
        auto meta = read_all(meta_part);
        if (coords.empty() && meta.empty()) continue;
        if (!shape_known) {
            cloud.dim = coords.size();
            meta_cols = meta.size();
            shape_known = true;
            if (cloud.dim == 0) throw InputError("point line " + std::to_string(lineno) + ": no coordinates");
        }
        if (coords.size() != cloud.dim || meta.size() != meta_cols) {
            throw InputError("point line " + std::to_string(lineno) + ": inconsistent column count");
        }
        cloud.coords.insert(cloud.coords.end(), coords.begin(), coords.end());
        cloud.meta.insert(cloud.meta.end(), meta.begin(), meta.end());
    }
    if (cloud.meta_names.size() != meta_cols) {
        cloud.meta_names.clear();
        for (std::size_t c = 0; c < meta_cols; ++c) cloud.meta_names.push_back("m" + std::to_string(c));
    }
    return cloud;
}

PointCloud read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open point file '" + path + "'");
    return parse_points(in);
}

void write_points(std::ostream& out, const PointCloud& cloud) {
    if (!cloud.meta_names.empty()) {
        out << "# meta:";
        for (const auto& name : cloud.meta_names) out << ' ' << name;
        out << '\n';
    }
    const std::size_t mc = cloud.meta_names.size();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        for (std::size_t j = 0; j < p.size(); ++j) out << (j ? " " : "") << fmt_double(p[j]);
        if (mc > 0) {
            out << " |";
            for (std::size_t c = 0; c < mc; ++c) out << ' ' << fmt_double(cloud.meta_at(i, c));
        }
        out << '\n';
    }
}

void write_csv(std::ostream& out, const PointCloud& points, const std::vector<std::string>& labels) {
    if (labels.size() != points.dim) throw InputError("CSV label count does not match dimension");
    out << "vertex";
    for (const auto& l : labels) out << ',' << l;
    out << '\n';
    for (std::size_t v = 0; v < points.size(); ++v) {
        out << v;
        for (double x : points.point(v)) out << ',' << fmt_double(x);
        out << '\n';
    }
}

void write_embedding_csv(std::ostream& out, const Embedding& emb) {
    std::vector<std::string> labels;
    for (Vertex w : emb.support) labels.push_back(std::to_string(w));
    write_csv(out, as_points(emb), labels);
}

}  // namespace balanced
