#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "balanced/document.hpp"
#include "balanced/graph.hpp"

namespace fs = std::filesystem;
using namespace balanced;

namespace {

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;

    Scratch() {
        static int counter = 0;
        dir = fs::temp_directory_path() /
              ("balanced_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    std::string read(const std::string& name) const {
        std::ifstream in(path(name));
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    // Runs the CLI with `args`; stdout goes to `out` when given.
    int run(const std::string& args, const std::string& out = {}, const std::string& env = {}) const {
        std::string cmd = env + (env.empty() ? "" : " ") + "\"" BALANCED_CLI_PATH "\" " + args;
        cmd += " > " + (out.empty() ? std::string("/dev/null") : "\"" + path(out) + "\"");
        cmd += " 2> \"" + path("stderr.txt") + "\"";
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
};

}  // namespace

TEST_CASE("generate") {
    Scratch s;
    REQUIRE(s.run("generate path --n 3 --out " + s.path("p3.txt")) == 0);
    CHECK(parse_edge_list(s.read("p3.txt")).edges == std::vector<Edge>{{0, 1}, {1, 2}});

    REQUIRE(s.run("generate er --n 40 --p 0.2 --seed 5", "a.txt") == 0);
    REQUIRE(s.run("generate er --n 40 --p 0.2 --seed 5", "b.txt") == 0);
    REQUIRE(s.run("generate er --n 40 --p 0.2 --seed 6", "c.txt") == 0);
    CHECK(s.read("a.txt") == s.read("b.txt"));
    CHECK(s.read("a.txt") != s.read("c.txt"));

    REQUIRE(s.run("generate glued-paths --m 2 --ell 1", "g.txt") == 0);
    CHECK(s.read("g.txt").find("# midpoints: 2 4") != std::string::npos);
    CHECK(parse_edge_list(s.read("g.txt")).edges.size() == 6);

    REQUIRE(s.run("generate gaussian --n 20 --clusters 2 --dim 3 --seed 1", "cloud.txt") == 0);
    std::istringstream lines(s.read("cloud.txt"));
    std::size_t points = 0;
    for (std::string line; std::getline(lines, line);) {
        if (line.empty() || line[0] == '#') continue;
        ++points;
        CHECK(line.find('|') != std::string::npos);
    }
    CHECK(points == 40);

    CHECK(s.run("generate nosuch") == 1);
    CHECK(s.run("generate er --n 10 --p 0 --seed 1") == 2);
}

TEST_CASE("greedy document") {
    Scratch s;
    s.write("p3.txt", "0 1\n1 2\n");
    REQUIRE(s.run("greedy " + s.path("p3.txt") + " --no-timing", "doc.json") == 0);
    auto doc = from_json_text(s.read("doc.json"));
    CHECK(doc.command == "greedy");
    REQUIRE(doc.measure);
    REQUIRE(doc.measure->entries.size() == 2);
    CHECK(doc.measure->entries[0].vertex == 0);
    CHECK(doc.measure->entries[0].exact == "1/2");
    CHECK(doc.measure->entries[1].vertex == 2);
    CHECK(doc.balance->is_balanced);
    CHECK(doc.timing.empty());

    REQUIRE(s.run("greedy --named frucht --out " + s.path("f.json")) == 0);
    CHECK_FALSE(from_json_text(s.read("f.json")).timing.empty());
}

TEST_CASE("exit codes") {
    Scratch s;
    s.write("p3.txt", "0 1\n1 2\n");
    s.write("split.txt", "0 1\n2 3\n");
    s.write("uniform.txt", "0 1/3\n1 1/3\n2 1/3\n");
    s.write("short.txt", "0 1/2\n1 1/3\n");
    s.write("ends.txt", "0 1/2\n2 1/2\n");

    CHECK(s.run("greedy") == 1);
    CHECK(s.run("frobnicate") == 1);
    CHECK(s.run("embed " + s.path("p3.txt")) == 1);
    CHECK(s.run("embed " + s.path("p3.txt") + " --auto --measure " + s.path("ends.txt")) == 1);
    CHECK(s.run("greedy " + s.path("missing.txt")) == 2);
    CHECK(s.run("greedy " + s.path("split.txt")) == 2);
    CHECK(s.run("balance " + s.path("p3.txt") + " --measure " + s.path("short.txt")) == 2);
    CHECK(s.run("embed " + s.path("p3.txt") + " --measure " + s.path("uniform.txt")) == 2);
    CHECK(s.run("embed " + s.path("p3.txt") + " --measure " + s.path("uniform.txt") + " --force") == 3);
    CHECK(s.run("embed " + s.path("p3.txt") + " --measure " + s.path("ends.txt")) == 0);
    CHECK(s.run("balance " + s.path("p3.txt") + " --measure " + s.path("uniform.txt")) == 0);
    CHECK(s.run("oracle " + s.path("p3.txt") + " --mode grid --resolution 10") == 0);
    CHECK(s.run("boundary " + s.path("p3.txt")) == 0);
}

TEST_CASE("star embedding CSV") {
    Scratch s;
    s.write("star.txt", "0 1\n0 2\n0 3\n");
    s.write("leaves.txt", "1 1/3\n2 1/3\n3 1/3\n");
    REQUIRE(s.run("embed " + s.path("star.txt") + " --measure " + s.path("leaves.txt") + " --csv " +
                  s.path("star.csv")) == 0);
    std::istringstream csv(s.read("star.csv"));
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "vertex,1,2,3");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 3);
    }
    CHECK(rows == 4);
}

TEST_CASE("results do not depend on the thread count") {
    Scratch s;
    REQUIRE(s.run("generate er --n 60 --p 0.1 --seed 3 --out " + s.path("er.txt")) == 0);
    const std::string g = s.path("er.txt");
    REQUIRE(s.run("greedy " + g + " --audit --no-timing --threads 1", "t1.json") == 0);
    REQUIRE(s.run("greedy " + g + " --audit --no-timing --threads 4", "t4.json") == 0);
    REQUIRE(s.run("greedy " + g + " --audit --no-timing", "env.json", "BALANCED_EMBED_THREADS=3") == 0);
    CHECK(s.read("t1.json") == s.read("t4.json"));
    CHECK(s.read("t1.json") == s.read("env.json"));

    REQUIRE(s.run("embed " + g + " --auto --no-timing --threads 1 --csv " + s.path("e1.csv"), "e1.json") == 0);
    REQUIRE(s.run("embed " + g + " --auto --no-timing --threads 2 --csv " + s.path("e2.csv"), "e2.json") == 0);
    CHECK(s.read("e1.json") == s.read("e2.json"));
    CHECK(s.read("e1.csv") == s.read("e2.csv"));
}

TEST_CASE("point clouds through a k-NN graph") {
    Scratch s;
    REQUIRE(s.run("generate swiss-roll --n 400 --seed 2 --out " + s.path("roll.txt")) == 0);
    REQUIRE(s.run("embed " + s.path("roll.txt") + " --knn 12 --auto --drop-top 3 --pca-dim 2 --no-timing --csv " +
                  s.path("roll.csv"),
                  "roll.json") == 0);
    auto doc = from_json_text(s.read("roll.json"));
    REQUIRE(doc.embedding);
    CHECK(doc.embedding->output_dim == 2);
    CHECK(doc.graph.n == 400);
    CHECK(s.read("roll.csv").rfind("vertex,pc1,pc2\n", 0) == 0);
}
