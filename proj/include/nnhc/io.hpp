#pragma once

// Text formats: CSV datasets in, hierarchy JSON / Newick / label CSV out.

#include <charconv>
#include <cstdio>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "nnhc/dataset.hpp"
#include "nnhc/errors.hpp"
#include "nnhc/hierarchy.hpp"
#include "nnhc/partition.hpp"

namespace nnhc::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::optional<double> parse_number(std::string_view field) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    if (field.empty()) return std::nullopt;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size()) return std::nullopt;
    return value;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

/**
 * One point per line, comma-separated numeric columns. A first line that
 * does not parse as numbers is taken as a header. Blank lines are skipped.
 * Throws InputError for anything else that fails to parse.
 */
inline Dataset read_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        std::vector<double> row;
        bool numeric = true;
        for (const auto field : detail::split(line, ',')) {
            const auto value = detail::parse_number(field);
            if (!value) {
                numeric = false;
                break;
            }
            row.push_back(*value);
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw InputError("line " + std::to_string(line_no) + ": non-numeric field");
        }
        first = false;
        rows.push_back(std::move(row));
    }
    if (in.bad()) throw IoError("read failure");
    return validate_dataset(rows);
}

inline Dataset read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file '" + path + "'");
    return read_csv(in);
}

/// Round-trippable CSV: header x0..x{d-1}, 17 significant digits.
inline std::string to_csv(const Dataset& data) {
    std::string out;
    for (std::size_t a = 0; a < data.dim(); ++a) {
        out += (a == 0 ? "x" : ",x") + std::to_string(a);
    }
    out += '\n';
    char buf[32];
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t a = 0; a < data.dim(); ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", data.coord(i, a));
            if (a > 0) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

inline Json tree_to_json(const ClusterTree& tree, std::size_t index) {
    const ClusterNode& node = tree.node(index);
    Json children = Json::array();
    for (const std::size_t child : node.children) children.push_back(tree_to_json(tree, child));
    return Json{{"members_rep", node.representative()},
                {"size", node.size()},
                {"formation_k", node.formation_k},
                {"children", std::move(children)}};
}

inline Json partition_to_json(const Partition& partition, std::string_view mode) {
    Json clusters = Json::array();
    for (const auto& c : partition.clusters()) {
        clusters.push_back(Json{{"members", c.members},
                                {"provenance", std::string(to_string(c.provenance))},
                                {"k", c.k}});
    }
    return Json{{"mode", std::string(mode)}, {"clusters", std::move(clusters)}};
}

/// Hierarchy export: every level 0..k_star plus the collapsed tree.
inline Json hierarchy_to_json(const Hierarchy& hierarchy) {
    Json levels = Json::array();
    for (const Level& level : hierarchy.levels()) {
        levels.push_back(Json{{"k", level.k()}, {"clusters", level.clusters()}});
    }
    const ClusterTree tree = to_tree(hierarchy);
    return Json{{"n", hierarchy.n()},
                {"k_star", hierarchy.k_star()},
                {"levels", std::move(levels)},
                {"tree", tree_to_json(tree, tree.root())}};
}

/// The exported file: hierarchy plus, optionally, a partition under
/// "partition". Two-space indent, trailing newline.
inline std::string hierarchy_document(const Hierarchy& hierarchy, const Partition* partition = nullptr,
                                      std::string_view mode = "natural") {
    Json doc = hierarchy_to_json(hierarchy);
    if (partition != nullptr) doc["partition"] = partition_to_json(*partition, mode);
    return doc.dump(2) + "\n";
}

/// Rebuilds a Hierarchy from the "levels" of an export; the tree is derived
/// data and only checked for its root size.
inline Hierarchy hierarchy_from_json(const Json& doc) {
    try {
        const auto n = doc.at("n").get<std::size_t>();
        const auto k_star = doc.at("k_star").get<std::size_t>();
        std::vector<Level> levels;
        for (const auto& entry : doc.at("levels")) {
            const auto k = entry.at("k").get<std::size_t>();
            const auto clusters = entry.at("clusters").get<std::vector<std::vector<PointId>>>();
            levels.push_back(Level::from_clusters(k, n, clusters));
        }
        Hierarchy hierarchy(std::move(levels));
        if (hierarchy.k_star() != k_star) {
            throw InputError("k_star does not match the levels");
        }
        if (doc.contains("tree") && doc.at("tree").at("size").get<std::size_t>() != n) {
            throw InputError("tree root does not cover the dataset");
        }
        return hierarchy;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed hierarchy JSON: ") + e.what());
    }
}

namespace detail {

inline void write_newick(const ClusterTree& tree, std::size_t index, std::ostream& out) {
    const ClusterNode& node = tree.node(index);
    if (node.is_leaf()) {
        out << node.representative();
    } else {
        out << '(';
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (i > 0) out << ',';
            write_newick(tree, node.children[i], out);
        }
        out << ')';
    }
    if (node.parent) {
        out << ':' << tree.node(*node.parent).formation_k - node.formation_k;
    }
}

}  // namespace detail

/// Leaves are point ids; branch lengths are differences in formation k.
inline std::string to_newick(const ClusterTree& tree) {
    std::ostringstream out;
    detail::write_newick(tree, tree.root(), out);
    out << ";\n";
    return out.str();
}

inline std::string labels_csv(const std::vector<PointId>& labels) {
    std::string out = "id,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += std::to_string(labels[i]);
        out += '\n';
    }
    return out;
}

}  // namespace nnhc::io
