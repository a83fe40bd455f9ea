#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nnhc/io.hpp"
#include "support.hpp"

using namespace nnhc;

namespace {

Dataset parse(const std::string& text) {
    std::istringstream in(text);
    return io::read_csv(in);
}

// Minimal Newick reader: returns false on any syntax error, collects leaf names.
class NewickReader {
public:
    explicit NewickReader(std::string text) : s_(std::move(text)) {}

    bool read(std::vector<std::string>& leaves) {
        if (!subtree(leaves)) return false;
        if (pos_ >= s_.size() || s_[pos_] != ';') return false;
        ++pos_;
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return pos_ == s_.size();
    }

private:
    bool subtree(std::vector<std::string>& leaves) {
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            std::size_t children = 0;
            do {
                if (!subtree(leaves)) return false;
                ++children;
            } while (pos_ < s_.size() && s_[pos_] == ',' && ++pos_);
            if (pos_ >= s_.size() || s_[pos_] != ')' || children < 2) return false;
            ++pos_;
        } else {
            const std::string name = token();
            if (name.empty()) return false;
            leaves.push_back(name);
        }
        if (pos_ < s_.size() && s_[pos_] == ':') {
            ++pos_;
            if (token().empty()) return false;
        }
        return true;
    }

    std::string token() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

TEST(ReadCsv, HeaderIsDetected) {
    const Dataset d = parse("x,y\n0,1\n2,3\n");
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d.dim(), 2u);
    EXPECT_EQ(d.coord(1, 1), 3.0);
}

TEST(ReadCsv, NumericFirstRowIsData) {
    const Dataset d = parse("0\n1\r\n\n10\n11");
    EXPECT_EQ(d, testkit::line({0, 1, 10, 11}));
}

TEST(ReadCsv, AcceptsSignsExponentsAndSpaces) {
    const Dataset d = parse(" -1.5e2 , +3 \n");
    EXPECT_EQ(d.coord(0, 0), -150.0);
    EXPECT_EQ(d.coord(0, 1), 3.0);
}

TEST(ReadCsv, Errors) {
    EXPECT_THROW(parse(""), InputError);
    EXPECT_THROW(parse("a,b\n"), InputError);
    EXPECT_THROW(parse("0,1\n2\n"), InputError);
    EXPECT_THROW(parse("0,1\n2,x\n"), InputError);
    EXPECT_THROW(parse("0,1\n2,nan\n"), InputError);
    EXPECT_THROW(parse("0,1\n2,\n"), InputError);
    EXPECT_THROW(io::read_csv_file("/nonexistent/points.csv"), IoError);
}

TEST(ToCsv, RoundTripsExactly) {
    const Dataset d = sample_points(50, Distribution::gaussian, 3);
    EXPECT_EQ(parse(io::to_csv(d)), d);
}

TEST(HierarchyJson, RoundTripOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto inst = testkit::random_instance(seed, 1, 120);
        const Hierarchy h = build_hierarchy(inst.data, Metric::euclidean(), Backend::kdtree);
        const auto text = io::hierarchy_document(h);
        ASSERT_EQ(io::hierarchy_from_json(io::Json::parse(text)), h) << "seed " << seed;
    }
}

TEST(HierarchyJson, SchemaFields) {
    const Hierarchy h = build_hierarchy(testkit::line({0, 1, 10, 11}), Metric::euclidean(), Backend::brute);
    const auto doc = io::hierarchy_to_json(h);
    EXPECT_EQ(doc.at("n"), 4);
    EXPECT_EQ(doc.at("k_star"), 2);
    EXPECT_EQ(doc.at("levels").size(), 3u);
    EXPECT_EQ(doc.at("levels")[1].at("clusters"), io::Json::parse("[[0,1],[2,3]]"));
    const auto& tree = doc.at("tree");
    EXPECT_EQ(tree.at("members_rep"), 0);
    EXPECT_EQ(tree.at("size"), 4);
    EXPECT_EQ(tree.at("formation_k"), 2);
    EXPECT_EQ(tree.at("children")[1].at("members_rep"), 2);
}

TEST(HierarchyJson, RejectsMalformedDocuments) {
    EXPECT_THROW(io::hierarchy_from_json(io::Json::parse("{}")), InputError);
    EXPECT_THROW(io::hierarchy_from_json(io::Json::parse(
                     R"({"n":2,"k_star":2,"levels":[{"k":0,"clusters":[[0],[1]]},{"k":1,"clusters":[[0,1]]}]})")),
                 InputError);
    EXPECT_THROW(io::hierarchy_from_json(io::Json::parse(
                     R"({"n":2,"k_star":1,"levels":[{"k":0,"clusters":[[0],[1]]},{"k":1,"clusters":[[0,1,1]]}]})")),
                 InputError);
}

TEST(HierarchyJson, MatchesOracleGoldenFile) {
    const Dataset data = io::read_csv_file(testkit::data_path("uniform_100.csv"));
    const auto golden = testkit::read_file(testkit::data_path("uniform_100.json"));
    for (const Backend backend : {Backend::brute, Backend::kdtree}) {
        const Hierarchy h = build_hierarchy(data, Metric::euclidean(), backend);
        const Partition natural = natural_partition(h);
        EXPECT_EQ(io::hierarchy_document(h, &natural, "natural"), golden);
    }
}

TEST(Newick, FourPoints) {
    const Hierarchy h = build_hierarchy(testkit::line({0, 1, 10, 11}), Metric::euclidean(), Backend::brute);
    EXPECT_EQ(io::to_newick(to_tree(h)), "((0:1,1:1):1,(2:1,3:1):1);\n");
}

TEST(Newick, SinglePoint) {
    const Hierarchy h = build_hierarchy(testkit::line({5}), Metric::euclidean(), Backend::brute);
    EXPECT_EQ(io::to_newick(to_tree(h)), "0;\n");
}

TEST(Newick, ValidTreeWithAllLeaves) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto inst = testkit::random_instance(seed, 1, 150);
        const Hierarchy h = build_hierarchy(inst.data, Metric::manhattan(), Backend::kdtree);
        std::vector<std::string> leaves;
        ASSERT_TRUE(NewickReader(io::to_newick(to_tree(h))).read(leaves)) << "seed " << seed;
        std::set<std::string> names(leaves.begin(), leaves.end());
        ASSERT_EQ(leaves.size(), inst.data.size());
        ASSERT_EQ(names.size(), inst.data.size());
        for (std::size_t i = 0; i < inst.data.size(); ++i) ASSERT_TRUE(names.contains(std::to_string(i)));
    }
}

TEST(LabelsCsv, Format) {
    EXPECT_EQ(io::labels_csv({0, 0, 2, 2}), "id,label\n0,0\n1,0\n2,2\n3,2\n");
}
