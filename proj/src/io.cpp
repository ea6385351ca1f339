#include "trichain/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace trichain {

void save_graph(const Graph& g, std::ostream& os) {
    nlohmann::json header;
    header["n"] = g.num_vertices();
    header["degrees"] = g.degrees();
    header["t"] = g.triangle_count();
    os << header.dump() << "\n";
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end(),
              [](Edge a, Edge b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    for (const Edge& e : edges) os << e.u << " " << e.v << "\n";
}

Graph load_graph(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error("empty graph file");
    nlohmann::json header = nlohmann::json::parse(line);
    const int n = header.at("n").get<int>();
    Graph g(n);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw Error("malformed edge line: " + line);
        if (u < 0 || v < 0 || u >= n || v >= n) throw Error("edge label out of range");
        g.add_edge(u, v);
    }
    if (header.contains("degrees")) {
        const auto want = header["degrees"].get<std::vector<int>>();
        if (want != g.degrees()) throw Error("header degrees do not match edges");
    }
    if (header.contains("t")) {
        if (header["t"].get<long long>() != g.triangle_count())
            throw Error("header triangle count does not match edges");
    }
    return g;
}

DegreeSequence parse_degrees(const std::string& spec) {
    std::string body = spec;
    if (!body.empty() && body.front() == '@') {
        std::ifstream f(body.substr(1));
        if (!f) throw Error("cannot open degree file " + body.substr(1));
        std::stringstream buf;
        buf << f.rdbuf();
        body = buf.str();
        while (!body.empty() && (body.back() == '\n' || body.back() == '\r' || body.back() == ' '))
            body.pop_back();
    }
    const auto x = body.find('x');
    if (x != std::string::npos && body.find(',') == std::string::npos) {
        const int deg = std::stoi(body.substr(0, x));
        const int count = std::stoi(body.substr(x + 1));
        if (count <= 0) throw Error("vertex count must be positive");
        return DegreeSequence(std::vector<int>(count, deg));
    }
    std::vector<int> degrees;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        degrees.push_back(std::stoi(tok));
    }
    if (degrees.empty()) throw Error("empty degree specification");
    return DegreeSequence(degrees);
}

}  // namespace trichain
