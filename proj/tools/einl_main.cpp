#include "einl/errors.hpp"
#include "einl/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

int run(const einl::RunConfig& cfg, const std::string& section) {
    const einl::Json report = einl::full_report(cfg, {section});
    const std::string text = einl::report_to_string(report, cfg.format);
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw einl::UsageError("cannot open output file: " + cfg.out_path);
        out << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"einl: exact orbit, stabilization and module checks for categories of injections\n"
                 "(plain or colored injections of finite sets; linear injections over a prime field,\n"
                 "optionally carrying a chosen complement)"};
    app.set_version_flag("--version", "einl 0.1.0");

    einl::RunConfig cfg;
    if (const char* env_guard = std::getenv("EINL_GUARD")) {
        try {
            cfg.guard = std::stoul(env_guard);
        } catch (const std::exception&) {
            std::cerr << "einl: ignoring malformed EINL_GUARD='" << env_guard << "'\n";
        }
    }

    std::string config_path;
    std::string category, gamma, format, out_path, module_name, generators_path;
    uint32_t q = 0;
    std::vector<int> i_values;
    int max_object = -1, jobs = -1;
    size_t guard = 0, guard_aut = 0;
    bool audit = false;

    app.add_option("--config", config_path, "key=value config file; flags override it");
    app.add_option("--category", category, "fi_gamma | vi | vic");
    app.add_option("--q", q, "prime field size for vi/vic");
    app.add_option("--gamma", gamma, "coloring group: cyclic:<n> or table:<path>");
    app.add_option("--i", i_values, "source objects, comma separated")->delimiter(',');
    app.add_option("--max-object", max_object, "largest object of the truncated category");
    app.add_option("--guard", guard, "hom-set enumeration guard");
    app.add_option("--guard-aut", guard_aut, "automorphism-group enumeration guard");
    app.add_flag("--audit", audit, "run the full-group cross-checks as well");
    app.add_option("--jobs", jobs, "worker threads for independent cells");
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--format", format, "json | table");
    app.add_option("--module", module_name, "builtin module: free, zero, sum-zero, atom, diagonal");
    app.add_option("--generators", generators_path, "homogeneous generator file over M(i)");

    app.require_subcommand(1);
    auto* cmd_conditions =
        app.add_subcommand("check-conditions", "transitivity and orbit-map bijectivity verdicts with onsets");
    auto* cmd_orbits = app.add_subcommand("orbits", "orbit decompositions and classification invariants");
    auto* cmd_stabilize = app.add_subcommand("stabilize", "Hom-space chain certificate for a module");
    auto* cmd_fg = app.add_subcommand("fg-torsion", "finite-generation flags and torsion dimensions");
    for (auto* sub : {cmd_conditions, cmd_orbits, cmd_stabilize, cmd_fg}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) einl::apply_config_file(cfg, config_path);
        if (app.count("--category")) cfg.category = category;
        if (app.count("--q")) cfg.q = q;
        if (app.count("--gamma")) cfg.gamma = gamma;
        if (app.count("--i")) cfg.i_values = i_values;
        if (app.count("--max-object")) cfg.max_object = max_object;
        if (app.count("--guard")) cfg.guard = guard;
        if (app.count("--guard-aut")) cfg.guard_aut = guard_aut;
        if (app.count("--audit")) cfg.audit = audit;
        if (app.count("--jobs")) cfg.jobs = jobs;
        if (app.count("--out")) cfg.out_path = out_path;
        if (app.count("--format")) cfg.format = format;
        if (app.count("--module")) cfg.module = module_name;
        if (app.count("--generators")) cfg.generators_path = generators_path;

        std::string section;
        if (cmd_conditions->parsed()) section = "check-conditions";
        if (cmd_orbits->parsed()) section = "orbits";
        if (cmd_stabilize->parsed()) section = "stabilize";
        if (cmd_fg->parsed()) section = "fg-torsion";
        return run(cfg, section);
    } catch (const einl::GuardExceeded& e) {
        std::cerr << "einl: guard exceeded at C(" << e.source << "," << e.target << "): " << e.what() << "\n";
        return 2;
    } catch (const einl::ParseError& e) {
        std::cerr << "einl: parse error: " << e.what() << "\n";
        return 2;
    } catch (const einl::UsageError& e) {
        std::cerr << "einl: " << e.what() << "\n";
        return 2;
    } catch (const einl::InvariantViolation& e) {
        std::cerr << "einl: hard check failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "einl: " << e.what() << "\n";
        return 2;
    }
}
