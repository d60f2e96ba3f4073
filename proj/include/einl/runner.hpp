#pragma once

#include "einl/builtins.hpp"
#include "einl/category.hpp"

#include <json.hpp>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace einl {

using Json = nlohmann::ordered_json;

/// Effective run configuration, after merging defaults, the EINL_GUARD
/// environment variable, an optional key=value config file, and flags.
struct RunConfig {
    std::string category = "fi_gamma"; // fi_gamma | vi | vic
    uint32_t q = 2;
    std::string gamma = "cyclic:1"; // cyclic:<n> | table:<path>
    std::vector<int> i_values = {1};
    int max_object = 4;
    size_t guard = 200000;
    size_t guard_aut = 50000;
    bool audit = false;
    int jobs = 1;
    std::string out_path;       // empty means stdout
    std::string format = "json"; // json | table
    std::string module = "sum-zero";
    std::string generators_path; // overrides `module` when nonempty

    void validate() const;
};

/// Applies "key=value" lines onto the config; '#' comments and blanks allowed.
void apply_config_stream(RunConfig& cfg, std::istream& in, const std::string& source_name);
void apply_config_file(RunConfig& cfg, const std::string& path);

CategoryInstance make_category(const RunConfig& cfg);

/// Deterministic worker pool: runs fn(0..count) on up to `jobs` threads; the
/// caller indexes results, so scheduling order never shows in the output.
void parallel_for(int jobs, size_t count, const std::function<void(size_t)>& fn);

Json run_check_conditions(const CategoryInstance& cat, const RunConfig& cfg);
Json run_orbits(const CategoryInstance& cat, const RunConfig& cfg);
Json run_stabilize(const CategoryInstance& cat, const RunConfig& cfg);
Json run_fg_torsion(const CategoryInstance& cat, const RunConfig& cfg);

/// Full report: schema version, tool stamp, config echo, one entry per
/// requested section. Byte-identical for identical configs.
Json full_report(const RunConfig& cfg, const std::vector<std::string>& sections);

std::string render_table(const Json& report);

/// Serializes with a trailing newline; the single sanctioned output path.
std::string report_to_string(const Json& report, const std::string& format);

} // namespace einl
