#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphrec/graphrec.hpp"
#include "graphrec/spqr_io.hpp"

using namespace graphrec;
using nlohmann::json;

namespace {

constexpr int kExitGraphic = 0;
constexpr int kExitNonGraphic = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SparseBinaryMatrix load(const std::string& path, const std::string& fmt) {
    MatrixFormat f;
    try {
        f = format_from_string(fmt);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    try {
        if (path == "-") return parse_matrix(std::cin, f);
        std::ifstream in(path);
        if (!in) throw InputError("cannot open " + path);
        return parse_matrix(in, f);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::uint64_t effective_seed(std::uint64_t seed) {
    if (const char* env = std::getenv("GRAPHREC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError("GRAPHREC_SEED is not an integer");
        }
    }
    return seed;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

json forest_stats(const SpqrForest& F) {
    int count[4] = {0, 0, 0, 0};
    int sum_edges = 0, sum_vertices = 0, trees = 0;
    bool bounds = true;
    json per_tree = json::array();
    for (int root : F.tree_roots()) {
        auto s = tree_stats(F, root);
        ++trees;
        count[0] += s.count_S;
        count[1] += s.count_P;
        count[2] += s.count_Q;
        count[3] += s.count_R;
        sum_edges += s.skeleton_edges;
        sum_vertices += s.skeleton_vertices;
        bounds &= s.within_size_bounds();
        per_tree.push_back({{"nodes", s.nodes}, {"matrix_edges", s.regular_edges}, {"skeleton_edges", s.skeleton_edges}});
    }
    return {{"trees", trees},
            {"nodes", {{"S", count[0]}, {"P", count[1]}, {"Q", count[2]}, {"R", count[3]}}},
            {"skeleton_edges", sum_edges},
            {"skeleton_vertices", sum_vertices},
            {"within_size_bounds", bounds},
            {"per_tree", per_tree}};
}

json trace_json(const SparseBinaryMatrix& M, const std::vector<RowTrace>& trace) {
    json out = json::array();
    for (const auto& t : trace)
        out.push_back({{"row", M.row_labels()[t.row]},
                       {"index", t.row},
                       {"accepted", t.accepted},
                       {"branch", row_branch_name(t.detail.branch)},
                       {"trees_touched", t.detail.trees_touched},
                       {"reduced_nodes", t.detail.reduced_nodes},
                       {"fresh_columns", t.detail.fresh_columns},
                       {"repair_merges", t.detail.repair_merges},
                       {"ops", t.detail.ops}});
    return out;
}

void print_certificate(std::ostream& os, const GraphTreePair& g, const SparseBinaryMatrix& M,
                       const std::vector<int>& rows) {
    os << "vertices " << g.num_vertices << "\n";
    for (const auto& e : g.edges) {
        const std::string& label = e.origin == Origin::row ? M.row_labels()[rows[e.index]] : M.col_labels()[e.index];
        os << e.u << ' ' << e.v << ' ' << label << ' ' << (e.in_tree ? "tree" : "cotree") << "\n";
    }
}

void dump_forest(const SpqrForest& F, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".dot") out << forest_to_dot(F);
    else out << forest_to_json(F).dump(2) << "\n";
}

std::vector<int> iota_rows(int m) {
    std::vector<int> r(m);
    std::iota(r.begin(), r.end(), 0);
    return r;
}

int cmd_check(const std::string& path, const std::string& fmt, bool want_cert, const std::string& dump, bool as_json) {
    auto M = load(path, fmt);
    auto t0 = std::chrono::steady_clock::now();
    auto res = is_graphic(M);
    double t_alg = ms_since(t0);
    if (!dump.empty()) dump_forest(res.forest, dump);
    if (as_json) {
        json j{{"command", "check"},
               {"input", path},
               {"rows", M.num_rows()},
               {"cols", M.num_cols()},
               {"nonzeros", M.nonzeros()},
               {"verdict", res.graphic ? "graphic" : "non-graphic"},
               {"first_rejected_row", res.graphic ? json(nullptr) : json(M.row_labels()[res.first_rejected])},
               {"trace", trace_json(M, res.trace)},
               {"forest", forest_stats(res.forest)},
               {"timings_ms", {{"augmentation", t_alg}}}};
        if (want_cert && res.certificate) j["certificate"] = graph_to_json(*res.certificate);
        std::cout << j.dump(2) << "\n";
    } else {
        if (res.graphic) std::cout << "graphic\n";
        else std::cout << "non-graphic: row " << M.row_labels()[res.first_rejected] << " rejected\n";
        if (want_cert && res.certificate) print_certificate(std::cout, *res.certificate, M, iota_rows(M.num_rows()));
    }
    return res.graphic ? kExitGraphic : kExitNonGraphic;
}

int cmd_maximal(const std::string& path, const std::string& fmt, bool want_cert, bool verify, bool as_json) {
    auto M = load(path, fmt);
    auto res = maximal_graphic_rows(M);
    json checks = json::array();
    bool verified = true;
    if (verify) {
        auto sub = M.select_rows(res.kept_rows);
        bool ok = oracle_is_graphic(sub).graphic;
        checks.push_back({{"rows", "kept"}, {"oracle_graphic", ok}});
        verified &= ok;
        for (int r : res.skipped_rows) {
            auto rows = res.kept_rows;
            rows.insert(std::upper_bound(rows.begin(), rows.end(), r), r);
            bool g = oracle_is_graphic(M.select_rows(rows)).graphic;
            checks.push_back({{"rows", "kept+" + M.row_labels()[r]}, {"oracle_graphic", g}});
            verified &= !g;
        }
    }
    auto labels = [&](const std::vector<int>& v) {
        json a = json::array();
        for (int r : v) a.push_back(M.row_labels()[r]);
        return a;
    };
    if (as_json) {
        json j{{"command", "maximal"},
               {"input", path},
               {"rows", M.num_rows()},
               {"cols", M.num_cols()},
               {"kept", labels(res.kept_rows)},
               {"skipped", labels(res.skipped_rows)},
               {"trace", trace_json(M, res.trace)},
               {"forest", forest_stats(res.forest)}};
        if (verify) j["verification"] = {{"passed", verified}, {"checks", checks}};
        if (want_cert && res.certificate) j["certificate"] = graph_to_json(*res.certificate);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "kept " << res.kept_rows.size() << " of " << M.num_rows() << " rows\n";
        std::cout << "skipped:";
        for (int r : res.skipped_rows) std::cout << ' ' << M.row_labels()[r];
        std::cout << "\n";
        if (verify) std::cout << "verify: " << (verified ? "passed" : "FAILED") << "\n";
        if (want_cert && res.certificate) print_certificate(std::cout, *res.certificate, M, res.kept_rows);
    }
    if (verify && !verified) return kExitNonGraphic;
    return kExitGraphic;
}

int cmd_gen(std::uint64_t seed, int vertices, int edges, int count, const std::string& fmt, const std::string& dir,
            bool simple) {
    MatrixFormat f = format_from_string(fmt);
    if (count < 1) throw InputError("--count must be positive");
    if (dir.empty() && count != 1) throw InputError("--output-dir is required when --count > 1");
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::mt19937_64 seeds(seed);
    for (int k = 0; k < count; ++k) {
        std::uint64_t s = count == 1 ? seed : seeds();
        GraphicInstance inst = [&] {
            try {
                return random_graphic_instance(s, vertices, edges, simple);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
        }();
        std::string text = serialize_matrix(inst.matrix, f);
        if (dir.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(std::filesystem::path(dir) / ("instance_" + std::to_string(k) + ".txt"));
            if (!out) throw InputError("cannot write into " + dir);
            out << text;
        }
    }
    return kExitGraphic;
}

SparseBinaryMatrix random_matrix(std::mt19937_64& rng, int max_rows, int max_cols, bool& by_construction) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    by_construction = pick(0, 3) == 0;
    if (by_construction) {
        while (true) {
            int nv = pick(2, max_rows + 1);
            int ne = nv - 1 + pick(1, max_cols);
            auto inst = random_graphic_instance(rng(), nv, ne);
            if (inst.matrix.num_cols() <= max_cols) return inst.matrix;
        }
    }
    int m = pick(1, max_rows), n = pick(1, max_cols);
    double p = std::uniform_real_distribution<double>(0.15, 0.85)(rng);
    std::bernoulli_distribution bit(p);
    std::vector<std::vector<int>> rows(m);
    for (auto& r : rows)
        for (int c = 0; c < n; ++c)
            if (bit(rng)) r.push_back(c);
    return SparseBinaryMatrix(m, n, std::move(rows));
}

int cmd_oracle_check(const std::string& path, const std::string& fmt, int trials, std::uint64_t seed, int max_rows,
                     int max_cols, bool as_json) {
    int agree = 0, disagree = 0, graphic = 0, non_graphic = 0, constructed = 0;
    json mismatches = json::array();
    auto check_one = [&](const SparseBinaryMatrix& M) {
        bool alg = is_graphic(M).graphic;
        bool ora = oracle_is_graphic(M).graphic;
        (ora ? graphic : non_graphic)++;
        if (alg == ora) {
            ++agree;
        } else {
            ++disagree;
            mismatches.push_back({{"matrix", serialize_matrix(M, MatrixFormat::row_list)}, {"algorithm", alg},
                                  {"oracle", ora}});
        }
        return std::pair{alg, ora};
    };
    std::pair<bool, bool> single{false, false};
    if (!path.empty()) {
        auto M = load(path, fmt);
        try {
            single = check_one(M);
        } catch (const OracleScaleError& e) {
            throw InputError(e.what());
        }
    } else {
        if (max_rows > kOracleMaxBlockRows) throw InputError("oracle scale exceeded");
        std::mt19937_64 rng(seed);
        for (int t = 0; t < trials; ++t) {
            bool bc = false;
            auto M = random_matrix(rng, max_rows, max_cols, bc);
            constructed += bc;
            check_one(M);
        }
    }
    if (as_json) {
        json j{{"command", "oracle-check"}, {"agree", agree},        {"disagree", disagree},
               {"graphic", graphic},        {"non_graphic", non_graphic}, {"graphic_by_construction", constructed},
               {"mismatches", mismatches}};
        if (!path.empty()) {
            j["input"] = path;
            j["algorithm"] = single.first ? "graphic" : "non-graphic";
            j["oracle"] = single.second ? "graphic" : "non-graphic";
        } else {
            j["seed"] = seed;
            j["trials"] = trials;
        }
        std::cout << j.dump(2) << "\n";
    } else if (!path.empty()) {
        std::cout << "algorithm: " << (single.first ? "graphic" : "non-graphic")
                  << "\noracle: " << (single.second ? "graphic" : "non-graphic") << "\n"
                  << (disagree ? "DISAGREE" : "agree") << "\n";
    } else {
        std::cout << "trials " << trials << " agree " << agree << " disagree " << disagree << " graphic " << graphic
                  << " non-graphic " << non_graphic << " by-construction " << constructed << "\n";
    }
    return disagree ? kExitNonGraphic : kExitGraphic;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphicness of binary matrices by row-wise SPQR augmentation"};
    app.require_subcommand(1);

    std::string path, fmt = "coordinate", dump, out_dir;
    bool cert = false, as_json = false, verify = false, simple = false;
    std::uint64_t seed = 1;
    int vertices = 6, edges = 10, count = 1, trials = 1000, max_rows = 6, max_cols = 6;

    auto* check = app.add_subcommand("check", "decide graphicness of a matrix");
    check->add_option("path", path, "matrix file, '-' for stdin")->required();
    check->add_option("--format", fmt, "coordinate | dense | row-list");
    check->add_flag("--certificate", cert, "print a realization (G, T)");
    check->add_option("--dump-spqr", dump, "write the SPQR forest as .json or .dot");
    check->add_flag("--json", as_json, "JSON report");

    auto* maximal = app.add_subcommand("maximal", "greedy maximal graphic row subset");
    maximal->add_option("path", path, "matrix file, '-' for stdin")->required();
    maximal->add_option("--format", fmt, "coordinate | dense | row-list");
    maximal->add_flag("--certificate", cert, "print a realization of the kept rows");
    maximal->add_flag("--verify", verify, "confirm maximality with the oracle");
    maximal->add_flag("--json", as_json, "JSON report");

    auto* gen = app.add_subcommand("gen", "generate graphic matrices from random graphs");
    gen->add_option("--seed", seed, "RNG seed (GRAPHREC_SEED overrides)");
    gen->add_option("--vertices", vertices, "number of vertices");
    gen->add_option("--edges", edges, "number of edges");
    gen->add_option("--count", count, "number of instances");
    gen->add_option("--format", fmt, "coordinate | dense | row-list");
    gen->add_option("--output-dir", out_dir, "write instance_<k>.txt files here");
    gen->add_flag("--simple", simple, "no parallel edges");

    auto* oc = app.add_subcommand("oracle-check", "compare against brute-force tree enumeration");
    oc->add_option("path", path, "matrix file, '-' for stdin");
    oc->add_option("--format", fmt, "coordinate | dense | row-list");
    oc->add_option("--random", trials, "number of random trials when no path is given");
    oc->add_option("--seed", seed, "RNG seed (GRAPHREC_SEED overrides)");
    oc->add_option("--max-rows", max_rows, "rows per random matrix");
    oc->add_option("--max-cols", max_cols, "columns per random matrix");
    oc->add_flag("--json", as_json, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*check) return cmd_check(path, fmt, cert, dump, as_json);
        if (*maximal) return cmd_maximal(path, fmt, cert, verify, as_json);
        if (*gen) return cmd_gen(effective_seed(seed), vertices, edges, count, fmt, out_dir, simple);
        if (*oc) return cmd_oracle_check(path, fmt, trials, effective_seed(seed), max_rows, max_cols, as_json);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const OracleScaleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
