#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace res2d::cli;

int main(int argc, char **argv)
{
    CLI::App app{"Residues and reciprocity over two-dimensional local fields"};
    app.require_subcommand(1);
    std::string scenario_path;
    std::string json_out;
    Overrides o;
    for (const char *name : {"residue", "reciprocity", "reconstruct", "witness", "weierstrass", "expand"}) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        sub->add_option("--precision", o.precision, "working precision N");
        sub->add_option("--tmax", o.tmax, "t-adic truncation");
        sub->add_option("--seed", o.seed, "corpus seed");
        sub->add_option("--count", o.count, "corpus size");
        sub->add_option("--json-out", json_out, "write the report here instead of stdout");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::ifstream in(scenario_path, std::ios::binary);
    std::string text;
    if (in) {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::cerr << "cannot read scenario " << scenario_path << "\n";
        return kInputError;
    }

    const Outcome out = run_scenario(command, text, o);
    const std::string rendered = render(out.report);
    if (json_out.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream f(json_out, std::ios::binary);
        if (!(f << rendered)) {
            std::cerr << "cannot write " << json_out << "\n";
            return kInputError;
        }
    }
    if (out.report.contains("error")) {
        std::cerr << out.report["error"]["message"].get<std::string>() << "\n";
    }
    return out.exit_code;
}
