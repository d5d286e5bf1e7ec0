#include "btexp/job.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace btexp;

namespace {

std::vector<std::string> split_tasks(const std::vector<std::string>& raw)
{
    std::vector<std::string> out;
    for (const auto& item : raw) {
        std::stringstream ss(item);
        std::string t;
        while (std::getline(ss, t, ','))
            if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Berezin-Toeplitz expansion coefficients at a point"};
    JobSpec spec;
    std::string input;
    std::string f;
    std::string g;
    std::string symbol;
    std::vector<std::string> tasks;
    std::string format = "json";
    std::string out_path;

    app.add_option("--input", input, "FramedInput or NormalFrame JSON file");
    app.add_option("--builtin", spec.builtin, "flat, flat(n,lambda), fock(l1,...), cp1, cp1(order)");
    app.add_option("--f", f, "symbol f, e.g. \"z*zbar\" or \"t^2\" on cp1");
    app.add_option("--g", g, "symbol g");
    app.add_option("--order", spec.order, "highest coefficient index J (0..2)")->check(CLI::Range(0, 2));
    app.add_option("--tasks", tasks, "normalize,curvature,coeffs,compose,star,oracle,verify")->delimiter(',');
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--model", spec.model, "oracle model: fock or cp1")->check(CLI::IsMember({"fock", "cp1"}));
    app.add_option("--symbol", symbol, "oracle symbol (same as --f)");
    app.add_option("--kmin", spec.kmin, "smallest k sampled by the oracle")->check(CLI::PositiveNumber);
    app.add_option("--kmax", spec.kmax, "largest k sampled by the oracle")->check(CLI::PositiveNumber);

    // Subcommands name a single task and share every option.
    app.fallthrough();
    std::vector<CLI::App*> subs;
    for (const auto& t : known_tasks()) subs.push_back(app.add_subcommand(t, "run the " + t + " task"));
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitSchema;
    }

    try {
        spec.tasks = split_tasks(tasks);
        for (auto* s : subs)
            if (s->parsed()) spec.tasks.push_back(s->get_name());
        if (!symbol.empty() && !f.empty() && symbol != f) throw SchemaError("--symbol and --f disagree");
        if (!symbol.empty()) f = symbol;
        if (!f.empty()) spec.f = f;
        if (!g.empty()) spec.g = g;
        if (!input.empty()) {
            spec.input_text = read_file(input);
            spec.input_name = input;
        }
        if (const char* env = std::getenv("BT_TRUNC_OVERRIDE"); env && *env)
            spec.trunc_override = parse_trunc_override(env);

        const Report rep = run_job(spec);
        const std::string text = emit_report(rep, format);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream o(out_path, std::ios::binary);
            if (!o) throw SchemaError("cannot write '" + out_path + "'");
            o << text;
        }
        return rep.ok ? kExitOk : kExitMismatch;
    } catch (const std::exception& e) {
        const auto [code, msg] = describe_failure(e);
        std::cerr << "btexp: " << msg << "\n";
        return code;
    }
}
