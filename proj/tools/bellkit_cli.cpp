// SPDX-FileCopyrightText: 2026 The bellkit authors
//
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C API. Every subcommand collects its flags
// into a JSON parameter object, overlaid on an optional --config file.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellkit/bellkit.h"

namespace {

using Json = nlohmann::json;

// Exit codes: 0 success, 2 usage, 3 + bk_status on library failure.
constexpr int kUsage = 2;
constexpr int kLibraryBase = 3;

struct Globals {
    std::string out;
    std::string format = "json";
    std::string config;
    std::optional<std::size_t> threads;
};

// One typed flag bound to a parameter key.
struct Flag {
    std::string key;
    CLI::Option* option = nullptr;
    std::function<Json()> value;
};

struct Command {
    CLI::App* app = nullptr;
    std::vector<Flag> flags;
};

template <class T>
void add_flag(Command& cmd, const std::string& name, const std::string& help)
{
    auto holder = std::make_shared<T>();
    Flag f;
    f.key = name;
    for (auto& c : f.key) {
        if (c == '-') {
            c = '_';
        }
    }
    f.option = cmd.app->add_option("--" + name, *holder, help);
    f.value = [holder] { return Json(*holder); };
    cmd.flags.push_back(std::move(f));
}

void add_switch(Command& cmd, const std::string& name, const std::string& help)
{
    auto holder = std::make_shared<bool>(false);
    Flag f;
    f.key = name;
    f.option = cmd.app->add_flag("--" + name, *holder, help);
    f.value = [holder] { return Json(*holder); };
    cmd.flags.push_back(std::move(f));
}

int library_failure(bk_status status)
{
    std::cerr << bk_last_error() << "\n";
    return kLibraryBase + static_cast<int>(status);
}

int usage_failure(const std::string& field, const std::string& constraint)
{
    Json j{{"code", "InvalidParameter"},
           {"message", field + " must satisfy " + constraint},
           {"field", field},
           {"constraint", constraint}};
    std::cerr << j.dump() << "\n";
    return kUsage;
}

std::string normalize_key(std::string key)
{
    for (auto& c : key) {
        if (c == '-') {
            c = '_';
        }
    }
    return key;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bellkit: Bell-nonlocality computations and reports"};
    app.set_version_flag("--version", std::string(bk_version()));
    app.require_subcommand(1);

    Globals g;
    app.add_option("--out,-o", g.out, "Write the report here instead of stdout");
    app.add_option("--format", g.format, "json or csv");
    app.add_option("--threads", g.threads, "Worker threads (fallback: BELLKIT_THREADS)");
    app.add_option("--config", g.config, "JSON file with default flag values");
    for (auto* opt : app.get_options()) {
        opt->configurable(false);
    }
    app.fallthrough();

    std::map<std::string, Command> cmds;
    auto make = [&](const std::string& name, const std::string& help) -> Command& {
        Command& c = cmds[name];
        c.app = app.add_subcommand(name, help);
        return c;
    };

    {
        auto& c = make("chsh-tilted", "Tilted CHSH values, local bound and correlation");
        add_flag<double>(c, "beta", "Tilt in [0, 2); omit for a sweep");
        add_flag<double>(c, "alpha", "State parameter in (0, 1] instead of beta");
        add_flag<std::size_t>(c, "points", "Sweep grid size (beta_i = 2i/points)");
    }
    {
        auto& c = make("satwap", "SATWAP value, bounds and optional SOS certificate");
        add_flag<std::size_t>(c, "d", "Number of outcomes");
        add_switch(c, "certify", "Include the sum-of-squares certificate");
    }
    {
        auto& c = make("selftest-extract", "Recover canonical form from a planted strategy");
        add_flag<std::size_t>(c, "d", "Number of outcomes");
        add_flag<std::uint64_t>(c, "seed", "Seed of the hiding unitaries");
        add_flag<std::vector<double>>(c, "junk", "Junk Schmidt coefficients");
        add_flag<std::size_t>(c, "pad", "Extra dimensions outside the support");
    }
    {
        auto& c = make("witness-qqs", "Two-pairing witness correlation on a geometric state");
        add_flag<double>(c, "alpha", "Geometric ratio in (0, 1)");
        add_flag<std::size_t>(c, "K", "Truncation level");
    }
    {
        auto& c = make("ternary-variant", "Three-outcome variant of the witness");
        add_flag<double>(c, "alpha", "Geometric ratio in (0, 1)");
        add_flag<std::size_t>(c, "K", "Truncation level");
    }
    {
        auto& c = make("embezzle", "Embezzlement correlation family at level n");
        add_flag<std::size_t>(c, "n", "Level");
    }
    {
        auto& c = make("seesaw", "See-saw maximization");
        add_flag<std::string>(c, "target", "chsh-tilted or satwap");
        add_flag<double>(c, "param", "beta for chsh-tilted, d for satwap");
        add_flag<std::size_t>(c, "restarts", "Independent restarts");
        add_flag<std::uint64_t>(c, "seed", "Base seed");
        add_flag<std::size_t>(c, "max-iters", "Sweeps per restart");
        add_flag<double>(c, "tol", "Stop when a sweep gains less than this");
        add_flag<std::size_t>(c, "dim", "Local dimension");
    }
    {
        auto& c = make("lhv-bound", "Exact local bound by deterministic enumeration");
        add_flag<std::string>(c, "target", "chsh-tilted or satwap");
        add_flag<double>(c, "param", "beta for chsh-tilted, d for satwap");
        add_flag<std::uint64_t>(c, "cap", "Maximum number of deterministic strategies");
    }

    // An unrecognized first word is a command error, not a usage error.
    if (argc > 1 && argv[1][0] != '-' && !cmds.count(argv[1])) {
        bk_report* report = nullptr;
        return library_failure(bk_run(argv[1], nullptr, &report));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    const auto selected = app.get_subcommands();
    const std::string name = selected.front()->get_name();
    Command& cmd = cmds.at(name);

    Json params = Json::object();
    if (!g.config.empty()) {
        std::ifstream in(g.config);
        if (!in) {
            return usage_failure("config", "a readable file");
        }
        Json cfg;
        try {
            in >> cfg;
        } catch (const Json::exception&) {
            return usage_failure("config", "a JSON object");
        }
        if (!cfg.is_object()) {
            return usage_failure("config", "a JSON object");
        }
        for (const auto& [key, value] : cfg.items()) {
            const std::string k = normalize_key(key);
            if (k == "out" && g.out.empty()) {
                g.out = value.get<std::string>();
            } else if (k == "format" && app.count("--format") == 0) {
                g.format = value.get<std::string>();
            } else if (k == "threads" && !g.threads) {
                g.threads = value.get<std::size_t>();
            } else if (k != "out" && k != "format" && k != "threads" && k != "command") {
                params[k] = value;
            }
        }
    }
    for (const auto& f : cmd.flags) {
        if (f.option->count() > 0) {
            params[f.key] = f.value();
        }
    }

    if (!g.threads) {
        if (const char* env = std::getenv("BELLKIT_THREADS")) {
            try {
                g.threads = std::stoul(env);
            } catch (const std::exception&) {
                return usage_failure("BELLKIT_THREADS", "a non-negative integer");
            }
        }
    }
    if (g.threads) {
        bk_set_threads(*g.threads);
    }
    if (g.format != "json" && g.format != "csv") {
        return usage_failure("format", "one of json, csv");
    }
    const bk_format format = g.format == "csv" ? BK_FORMAT_CSV : BK_FORMAT_JSON;

    bk_report* report = nullptr;
    const bk_status status = bk_run(name.c_str(), params.dump().c_str(), &report);
    if (status != BK_OK) {
        return library_failure(status);
    }
    std::unique_ptr<bk_report, decltype(&bk_report_free)> guard(report, bk_report_free);
    if (g.out.empty()) {
        std::cout << (format == BK_FORMAT_CSV ? bk_report_csv(report) : bk_report_json(report));
        return 0;
    }
    const bk_status written = bk_report_write(report, g.out.c_str(), format);
    if (written != BK_OK) {
        return library_failure(written);
    }
    return 0;
}
