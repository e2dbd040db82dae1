// gddkit command-line front end.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gddkit/gddkit.h"

namespace {

using json = nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

double to_number(const std::string& s, const char* flag) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(flag) + ": bad number '" + s + "'");
}

int to_int(const std::string& s, const char* flag) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(flag) + ": bad integer '" + s + "'");
}

std::vector<double> number_list(const std::string& s, const char* flag) {
    std::vector<double> v;
    for (const auto& t : split(s, ',')) v.push_back(to_number(t, flag));
    if (v.empty()) throw UsageError(std::string(flag) + ": empty list");
    return v;
}

// "1,3,5-7" or "all"
std::vector<int> k_list(const std::string& s) {
    std::vector<int> ks;
    if (s == "all") return ks;
    for (const auto& t : split(s, ',')) {
        const auto dash = t.find('-', 1);
        if (dash == std::string::npos) {
            ks.push_back(to_int(t, "--k"));
            continue;
        }
        const int lo = to_int(t.substr(0, dash), "--k"), hi = to_int(t.substr(dash + 1), "--k");
        if (hi < lo) throw UsageError("--k: empty range '" + t + "'");
        for (int k = lo; k <= hi; ++k) ks.push_back(k);
    }
    return ks;
}

std::vector<std::size_t> resolution(const std::string& s) {
    const auto x = s.find_first_of("xX");
    const int nx = to_int(x == std::string::npos ? s : s.substr(0, x), "--resolution");
    const int ny = x == std::string::npos ? nx : to_int(s.substr(x + 1), "--resolution");
    if (nx < 2 || ny < 2) throw UsageError("--resolution: need at least 2x2");
    return {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    out << text;
}

std::string list_text(const json& cat) {
    std::ostringstream os;
    for (const auto& e : cat) {
        os << e["id"].get<std::string>() << "\ttheorem " << e["theorem"].get<std::string>() << " item "
           << e["item"].get<std::string>() << "\t" << e["arity"].get<std::string>() << "\t"
           << e["statement"].get<std::string>();
        std::string params;
        for (const auto& p : e["parameters"]) params += (params.empty() ? "" : ",") + p.get<std::string>();
        if (!params.empty()) os << "\t[" << params << "]";
        if (e.contains("note")) os << "\t(" << e["note"].get<std::string>() << ")";
        os << '\n';
    }
    return os.str();
}

int fail(gdd_status s) {
    std::cerr << "gddkit: " << gdd_status_string(s) << ": " << gdd_last_error() << '\n';
    return exit_input;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diagonal dominance certificates and eigenvalue inclusion regions"};
    std::string command, command_flag, input, def = "5.5", k_spec, ids, alpha_grid, beta_grid, scalings;
    std::string res_spec, spectrum, out_path, svg, csv, criteria_csv, g_fn, h_fn;
    std::optional<double> tol, tau;
    std::uint64_t seed = 0;
    bool list = false, list_json = false, intersect = false;

    app.add_option("cmd", command, "classify | criteria | regions | verify | report");
    app.add_option("--command", command_flag, "Same as the positional command");
    app.add_option("-i,--input", input, "Matrix Market file ('-' reads stdin)");
    app.add_option("--def", def, "Region definition 5.1 .. 5.5 (default 5.5)");
    app.add_option("--k", k_spec, "Kinds, e.g. 1,5,16-20 or all");
    app.add_option("--ids", ids, "Criterion ids for the sweep, comma separated");
    app.add_option("--alpha-grid", alpha_grid, "Comma-separated alpha values in [0,1]");
    app.add_option("--beta-grid", beta_grid, "Comma-separated beta values in [0,1]");
    app.add_option("--scalings", scalings, "ones, certificate, random:k, file:path (comma separated)");
    app.add_option("--tol", tol, "Membership tolerance for verify (default 1e-12)");
    app.add_option("--tau", tau, "Strictness margin for criteria (default 0)");
    app.add_option("--resolution", res_spec, "Raster size, e.g. 256 or 512x256");
    app.add_option("--seed", seed, "Seed for random:k scalings");
    app.add_option("--spectrum", spectrum, "Pinned spectrum file, one 're im' pair per line");
    app.add_option("-o,--out", out_path, "JSON report path (default stdout)");
    app.add_option("--svg", svg, "SVG plot path (regions, report)");
    app.add_option("--csv", csv, "CSV mask path (regions, report)");
    app.add_option("--criteria-csv", criteria_csv, "CSV sweep table path (criteria, report)");
    app.add_option("--gfun", g_fn, "G-function g for definition 5.1 (r, c, r_tilde, c_tilde, g1..g4)");
    app.add_option("--hfun", h_fn, "G-function h for definition 5.1");
    app.add_flag("--intersect", intersect, "Add the sampled intersection of all generated sets");
    app.add_flag("--list", list, "List the criterion catalog (criteria)");
    app.add_flag("--json", list_json, "With --list: print JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    try {
        if (!command_flag.empty()) {
            if (!command.empty() && command != command_flag) throw UsageError("conflicting commands");
            command = command_flag;
        }
        if (command.empty()) throw UsageError("no command given (classify, criteria, regions, verify, report)");

        if (command == "criteria" && list) {
            char* text = nullptr;
            if (const gdd_status s = gdd_criteria_list(&text); s != GDD_OK) return fail(s);
            const json cat = json::parse(text);
            gdd_string_free(text);
            emit(list_json ? cat.dump(2) + "\n" : list_text(cat), out_path);
            return exit_ok;
        }
        if (input.empty()) throw UsageError("--input is required");

        gdd_matrix* m = nullptr;
        gdd_status s;
        if (input == "-") {
            const std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
            s = gdd_matrix_parse_mtx(text.c_str(), &m);
        } else {
            s = gdd_matrix_load_mtx(input.c_str(), &m);
        }
        if (s != GDD_OK) return fail(s);

        json cfg;
        cfg["command"] = command;
        cfg["input"] = input;
        cfg["def"] = def;
        cfg["seed"] = seed;
        if (!k_spec.empty()) cfg["k"] = k_list(k_spec);
        if (!ids.empty()) cfg["ids"] = split(ids, ',');
        if (!alpha_grid.empty()) cfg["alpha_grid"] = number_list(alpha_grid, "--alpha-grid");
        if (!beta_grid.empty()) cfg["beta_grid"] = number_list(beta_grid, "--beta-grid");
        if (!scalings.empty()) cfg["scalings"] = split(scalings, ',');
        if (tol) cfg["tol"] = *tol;
        if (tau) cfg["tau"] = *tau;
        if (!res_spec.empty()) cfg["resolution"] = resolution(res_spec);
        if (!spectrum.empty()) cfg["spectrum"] = spectrum;
        if (!svg.empty()) cfg["svg"] = svg;
        if (!csv.empty()) cfg["csv"] = csv;
        if (!criteria_csv.empty()) cfg["criteria_csv"] = criteria_csv;
        if (!g_fn.empty()) cfg["g"] = g_fn;
        if (!h_fn.empty()) cfg["h"] = h_fn;
        if (intersect) cfg["intersect"] = true;

        char* report = nullptr;
        int violation = 0;
        s = gdd_run(m, cfg.dump().c_str(), &report, &violation);
        gdd_matrix_free(m);
        if (s != GDD_OK) return fail(s);
        const std::string text = report;
        gdd_string_free(report);
        emit(text, out_path);
        return violation ? exit_violation : exit_ok;
    } catch (const UsageError& e) {
        std::cerr << "gddkit: " << e.what() << '\n';
        return exit_input;
    }
}
