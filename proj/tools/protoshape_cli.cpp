// Command-line front end: computes and compares homotopy signatures of
// finite topological spaces given as JSON documents.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "protoshape/protoshape.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open '" << path << "'\n";
        std::exit(2);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string read_stdin() {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
}

std::size_t max_points_from_env() {
    const char* env = std::getenv("PROTOSHAPE_MAX_POINTS");
    if (!env || !*env) return 12;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v <= 0) {
        std::cerr << "PROTOSHAPE_MAX_POINTS must be a positive integer\n";
        std::exit(2);
    }
    return static_cast<std::size_t>(v);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homotopy signatures of finite topological spaces"};
    app.require_subcommand(1);

    protoshape::CommandOptions opt;
    opt.max_points = max_points_from_env();

    std::string input_path, cover_path, out_path;
    bool stdio = false;

    auto add_input_flags = [&](CLI::App* cmd) {
        cmd->add_option("input", input_path, "space document (JSON file)");
        cmd->add_flag("--stdio", stdio, "read the space document from stdin");
        cmd->add_option("--name", opt.name,
                        "builtin generator instead of an input document "
                        "(4circle|discrete:n|sierpinski|sphere:n|random:seed,n)");
    };

    auto* validate = app.add_subcommand("validate", "check the topology axioms");
    validate->add_option("input", input_path, "space document (JSON file)");
    validate->add_flag("--stdio", stdio, "read the space document from stdin");

    auto* analyze =
        app.add_subcommand("analyze", "preorder, components, open partitions, pi verdicts");
    add_input_flags(analyze);

    auto* mccord = app.add_subcommand("mccord", "order-complex cell counts and homology");
    add_input_flags(mccord);

    auto* nerve = app.add_subcommand("nerve", "Cech nerve homology of a cover");
    add_input_flags(nerve);
    nerve->add_option("--cover", cover_path, "cover document, or 'finest' (default)");

    auto* shape = app.add_subcommand("shape", "nerve homology of the finest cover");
    add_input_flags(shape);

    auto* qsh = app.add_subcommand(
        "qsh", "homology of levelwise components of the chain hypercovering");
    add_input_flags(qsh);

    auto* compare =
        app.add_subcommand("compare", "side-by-side mccord / shape / qsh homology");
    add_input_flags(compare);

    auto* hypercheck =
        app.add_subcommand("hypercheck", "verify the hypercovering conditions");
    add_input_flags(hypercheck);
    hypercheck->add_option("--kind", opt.kind, "cech or mccord")->default_val("cech");
    hypercheck->add_option("--depth", opt.depth, "truncation depth (default max-degree + 1)");
    hypercheck->add_option("--cover", cover_path, "cover document for --kind cech");

    auto* generate = app.add_subcommand("generate", "emit a builtin space document");
    generate->add_option("--name", opt.name,
                         "4circle|discrete:n|sierpinski|sphere:n|random:seed,n")
        ->required();

    for (auto* cmd : {analyze, mccord, nerve, shape, qsh, compare, hypercheck})
        cmd->add_option("-d,--max-degree", opt.max_degree, "top homology degree (default 2)");

    app.add_option("-o,--out", out_path, "write the JSON output to a file");

    CLI11_PARSE(app, argc, argv);

    opt.command = app.get_subcommands().front()->get_name();
    if (stdio)
        opt.input_json = read_stdin();
    else if (!input_path.empty())
        opt.input_json = read_file(input_path);
    if (!cover_path.empty() && cover_path != "finest") opt.cover_json = read_file(cover_path);

    protoshape::RunResult result = protoshape::run_command(opt);
    const std::string text = result.output.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
    } else {
        std::cout << text;
    }
    return result.exit_code;
}
