#include <iostream>

#include <CLI11.hpp>

#include "zpt/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"zptower: Artin-Schreier-Witt towers over the affine line"};
    app.require_subcommand(1);
    zpt::cli::RunConfig cfg;
    std::string format = "json";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--spec", cfg.spec_path, "tower spec (family spec for sweep) JSON file")->required();
        sub->add_option("--nmax", cfg.n_max, "highest level")->check(CLI::PositiveNumber);
        sub->add_option("--budget", cfg.budget, "largest field size to enumerate")->check(CLI::PositiveNumber);
        sub->add_option("--jobs", cfg.jobs, "worker threads for character sums")->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out_dir, "directory for JSON/CSV output");
        sub->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
        sub->add_option("--seed", cfg.seed, "seed for sampled sweeps");
    };
    const std::pair<const char*, const char*> commands[] = {
        {"info", "conductor, degree and genus per level"},
        {"slopes", "Newton polygon slopes and their stability"},
        {"classnumbers", "class numbers and Iwasawa invariants"},
        {"sweep", "slopes over a family of towers"},
        {"tadic", "T-adic L-function and its specializations"}};
    CLI::App* tadic = nullptr;
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub);
        if (std::string(name) == "tadic") tadic = sub;
    }
    tadic->add_option("-K", cfg.K, "s-degree cutoff");
    tadic->add_option("-M", cfg.M, "T-degree cutoff");
    tadic->add_option("-N", cfg.N, "p-adic precision");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : zpt::cli::kUsage;
    }
    cfg.format = format;
    const std::string command = app.get_subcommands().front()->get_name();
    const auto result = zpt::cli::run_command(command, cfg);
    std::cout << result.summary;
    try {
        zpt::cli::write_files(result, cfg.out_dir);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return zpt::cli::kUsage;
    }
    if (cfg.out_dir.empty() && !result.files.empty() && command != "info") {
        std::cout << "(use --out DIR to write " << result.files.begin()->first << ")\n";
    }
    return result.exit_code;
}
