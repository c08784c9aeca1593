#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "homcat/cli_runner.hpp"

namespace {

int run(const std::string& command, const std::string& in_path, const std::string& out_path,
        const std::string& format, bool timings)
{
    using homcat::json;
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "{\"error\":{\"code\":\"ParseError\",\"message\":\"cannot open input\"}}\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    homcat::RunOptions opts;
    opts.timings = timings;
    if (const char* env = std::getenv("HOMCAT_SEED"))
        opts.seed = std::strtoull(env, nullptr, 10);

    json report;
    try {
        json problem = json::parse(buf.str());
        if (!problem.contains("command") ||
            problem["command"].get<std::string>() != command)
            homcat::fail(homcat::Errc::schema_error,
                         "problem file command does not match the subcommand");
        auto t0 = std::chrono::steady_clock::now();
        report = homcat::run_problem(problem, opts);
        if (timings) {
            auto t1 = std::chrono::steady_clock::now();
            report["timings"] = json{
                {"wall_ms",
                 std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}};
        }
    } catch (const json::parse_error& e) {
        std::cerr << json{{"error", {{"code", "ParseError"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 2;
    } catch (const homcat::Error& e) {
        std::cerr << json{{"error", {{"code", e.code_name()}, {"message", e.what()}}}}.dump()
                  << "\n";
        return e.code() == homcat::Errc::schema_error ? 3 : 4;
    }

    std::string text = format == "text" ? homcat::render_text(report)
                                        : homcat::report_to_string(report);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"homcat: exact computational homological algebra workbench"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {
        "cohomology", "cone",   "hom",       "koszul",      "d0",  "cech", "hyper", "spectral",
        "ext",        "yoneda", "extension", "obstruction", "les", "correlate", "verify"};

    std::string in_path, out_path, format = "json";
    bool timings = false;
    std::string chosen;
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name, "run a '" + name + "' problem file");
        sub->add_option("--in", in_path, "problem JSON file")->required();
        sub->add_option("--out", out_path, "report output file (default stdout)");
        sub->add_option("--format", format, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--timings", timings, "include wall-clock timings in the report");
        sub->callback([&chosen, name] { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return run(chosen, in_path, out_path, format, timings);
}
