// Regenerates fixtures/: the τ search result with its certificate, every
// hand-built gadget template, and the graph corpus used by the property suites.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mbtd/gadgets.hpp"
#include "mbtd/generators.hpp"

namespace {

struct Entry {
    std::string family;
    std::vector<int> params;
};

std::vector<Entry> corpus() {
    std::vector<Entry> v{{"complete", {1}},      {"complete", {2}},          {"complete", {3}},
                         {"complete", {4}},      {"complete", {5}},          {"star", {3}},
                         {"star", {4}},          {"complete-bipartite", {2, 3}}, {"complete-bipartite", {3, 3}},
                         {"prism", {}},          {"truncated-k4", {}},       {"eta", {}},
                         {"omega", {1}},         {"omega", {2}}};
    for (int n = 3; n <= 9; ++n) v.push_back({"cycle", {n}});
    for (int n = 3; n <= 9; ++n) v.push_back({"gp", {n, 1}});
    for (int n = 5; n <= 12; ++n) v.push_back({"gp", {n, 2}});
    for (int d = 2; d <= 4; ++d) v.push_back({"diamond-necklace", {d}});
    for (int k = 2; k <= 4; ++k) v.push_back({"claw-necklace", {k}});
    for (int m = 3; m <= 7; ++m) v.push_back({"circulant", {m}});
    return v;
}

std::string file_name(const Entry& e) {
    std::string s = e.family;
    for (int p : e.params) s += "-" + std::to_string(p);
    return s + ".json";
}

}  // namespace

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    if (argc > 2 || (argc == 2 && argv[1][0] == '-')) {
        std::cerr << "usage: mbtd-fixtures [output-dir]\n";
        return 2;
    }
    fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path(MBTD_FIXTURE_DIR);
    fs::path dir = root / "gadgets";
    fs::create_directories(dir);
    auto r = mbtd::extract_tau();
    std::ofstream(dir / "tau.json") << mbtd::serialize_graph(r.tau, mbtd::GraphFormat::JsonEdges) << '\n';
    std::ofstream(dir / "tau_certificate.json") << mbtd::certificate_to_json(r.certificate) << '\n';
    std::cout << "tau: " << r.subsets_examined << " subsets, " << r.linearizable << " linearizable, "
              << r.solver_calls << " solved, certificate " << mbtd::certificate_size(r.certificate.root)
              << " nodes\n";
    using mbtd::GadgetId;
    for (GadgetId id : {GadgetId::G1, GadgetId::G2, GadgetId::G3, GadgetId::G4, GadgetId::ThreeClaws}) {
        auto name = mbtd::to_string(id);
        std::ofstream(dir / (name + ".json"))
            << mbtd::serialize_graph(mbtd::gadget_template(id), mbtd::GraphFormat::JsonEdges) << '\n';
    }
    fs::path graphs = root / "graphs";
    fs::create_directories(graphs);
    int count = 0;
    for (const auto& e : corpus()) {
        auto g = mbtd::generate_family(e.family, e.params);
        std::ofstream(graphs / file_name(e)) << mbtd::serialize_graph(g, mbtd::GraphFormat::JsonEdges) << '\n';
        ++count;
    }
    std::ofstream(graphs / "petersen.g6") << "IheA@GUAo\n";
    std::cout << count + 1 << " corpus graphs\n";
}
