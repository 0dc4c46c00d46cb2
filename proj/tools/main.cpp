#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "spectre/graph_io.hpp"

using namespace spectre;
using namespace spectre::cli;

namespace {

int emit(const std::string& command, const CommandOutput& out) {
    if (!out.error.empty()) {
        std::cerr << "spectre: " << out.error << '\n';
        return out.status;
    }
    std::cout << make_report(command, out.digest, out.tol, out.result).dump(2) << '\n';
    return out.status;
}

EigenvalueSpec mu_of(const std::string& text) {
    try {
        return parse_eigenvalue(text);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--mu", e.what());
    }
}

std::vector<Vertex> zero_based(const std::vector<int>& labels) {
    std::vector<Vertex> out;
    for (int v : labels) out.push_back(v - 1);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplacian eigenvalue multiplicities and the graph reductions that preserve them"};
    app.require_subcommand(1);

    std::string file;
    double rho = 1.0;
    double tol = 0.0;
    std::string mu_text;

    auto graph_opts = [&](CLI::App* sub) {
        sub->add_option("file", file, "graph file (`n m`, then `u v [w]`, 1-indexed)")->required();
        sub->add_option("--rho", rho, "L = D(A) - rho A; 1 Laplacian, -1 signless")->capture_default_str();
        sub->add_option("--tol", tol, "clustering tolerance (default: per matrix)");
    };

    auto* spectrum = app.add_subcommand("spectrum", "clustered spectrum of L^rho");
    graph_opts(spectrum);

    auto* mult = app.add_subcommand("multiplicity", "multiplicity of mu");
    graph_opts(mult);
    mult->add_option("--mu", mu_text, "4cos2(i,m), 4sin2(k,n), p/q or a decimal")->required();

    auto* star = app.add_subcommand("star-set", "a certified mu-star set");
    graph_opts(star);
    star->add_option("--mu", mu_text, "eigenvalue")->required();

    int kmax = 4;
    bool literal_branch = false;
    auto* bounds = app.add_subcommand("bounds", "pendant-path and d-cluster lower bounds");
    bounds->add_option("file", file, "graph file")->required();
    bounds->add_option("--kmax", kmax, "largest pendant path length")->capture_default_str();
    bounds->add_option("--tol", tol, "clustering tolerance");
    bounds->add_flag("--branch-degree-above-3", literal_branch, "count branch vertices of degree > 3 only");

    ReduceOptions reduce_opt;
    std::vector<int> branch;
    int vertex = 0;
    auto* reduce = app.add_subcommand("reduce", "apply a multiplicity-preserving reduction");
    graph_opts(reduce);
    reduce->add_option("--op", reduce_opt.op, "contract-paths | detach | split")
        ->required()
        ->check(CLI::IsMember({"contract-paths", "detach", "split"}));
    reduce->add_option("--mu", mu_text, "eigenvalue")->required();
    reduce->add_option("--branch", branch, "detach: vertices of H; split: the branch at --vertex")->delimiter(',');
    reduce->add_option("--vertex", vertex, "split: the vertex to split");
    reduce->add_option("--out", reduce_opt.out, "write the reduced graph here");

    VerifyOptions verify_opt;
    verify_opt.seed = default_seed();
    std::string theorem = "all";
    int replay = -1;
    auto* ver = app.add_subcommand("verify", "randomized theorem checks");
    ver->add_option("--theorem", theorem, "theorem id or `all`")->capture_default_str();
    ver->add_option("--trials", verify_opt.trials, "trials per theorem")->capture_default_str();
    ver->add_option("--seed", verify_opt.seed, "seed (default: SPECTRE_SEED or 1)")->capture_default_str();
    ver->add_option("--tol", verify_opt.tol, "clustering tolerance");
    ver->add_option("--replay", replay, "dump and re-check one trial index");
    ver->add_flag("--serial", verify_opt.serial, "run trials on one thread");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

    try {
        if (ver->parsed()) {
            if (theorem != "all") {
                verify_opt.theorem = parse_theorem(theorem);
                if (!verify_opt.theorem) {
                    std::cerr << "spectre: unknown theorem " << theorem << '\n';
                    return kUsageError;
                }
            }
            if (replay >= 0) verify_opt.replay = replay;
            return emit(command, cmd_verify(verify_opt));
        }

        const GraphInput in = load_graph(file);
        if (spectrum->parsed()) return emit(command, cmd_spectrum(in, rho, tol));
        if (mult->parsed()) return emit(command, cmd_multiplicity(in, mu_of(mu_text), rho, tol));
        if (star->parsed()) return emit(command, cmd_star_set(in, mu_of(mu_text), rho, tol));
        if (bounds->parsed()) {
            const BranchRule rule = literal_branch ? BranchRule::DegreeAbove3 : BranchRule::DegreeAtLeast3;
            return emit(command, cmd_bounds(in, kmax, tol, rule));
        }
        reduce_opt.mu = mu_of(mu_text);
        reduce_opt.rho = rho;
        reduce_opt.tol = tol;
        reduce_opt.branch = zero_based(branch);
        if (vertex > 0) reduce_opt.vertex = vertex - 1;
        return emit(command, cmd_reduce(in, reduce_opt));
    } catch (const CLI::ValidationError& e) {
        std::cerr << "spectre: " << e.what() << '\n';
        return kUsageError;
    } catch (const GraphParseError& e) {
        std::cerr << "spectre: " << file << ": " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "spectre: " << e.what() << '\n';
        return kUsageError;
    }
}
