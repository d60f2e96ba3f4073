#include "einl/runner.hpp"

#include "einl/errors.hpp"
#include "einl/modules.hpp"
#include "einl/orbits.hpp"
#include "einl/stabilize.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace einl {

namespace {

constexpr const char* kToolName = "einl";
constexpr const char* kToolVersion = "0.1.0";
// Full-group audits are skipped above this order and reported as skipped.
constexpr size_t kAuditGroupBound = 5000;

Json cell_json(const BijectivityCell& c) {
    Json j;
    j["j"] = c.j;
    j["orbits_source"] = c.orbit_count_source;
    j["orbits_target"] = c.orbit_count_target;
    j["mu_injective"] = c.mu_injective;
    j["mu_surjective"] = c.mu_surjective;
    j["mu_bijective"] = c.mu_bijective;
    j["m_injective"] = c.m_injective;
    j["mu_prime_surjective"] = c.mu_prime_surjective;
    j["mu_prime_bijective"] = c.mu_prime_bijective;
    j["routes_agree"] = c.routes_agree;
    j["mu_injective_implies_m_injective"] = c.lemma_ok;
    return j;
}

Json fg_json(const FGReport& rep) {
    Json j;
    j["rho_full_per_degree"] = rep.rho_full;
    j["generator_degrees"] = rep.generator_degrees;
    if (rep.window_start)
        j["window_start"] = *rep.window_start;
    else
        j["window_start"] = nullptr;
    j["finitely_generated_up_to_truncation"] = rep.finitely_generated_up_to_truncation;
    j["caveat"] = rep.caveat;
    return j;
}

} // namespace

void RunConfig::validate() const {
    if (category != "fi_gamma" && category != "vi" && category != "vic")
        throw UsageError("category must be one of fi_gamma, vi, vic");
    if (max_object < 1) throw UsageError("max-object must be at least 1");
    if (i_values.empty()) throw UsageError("at least one i value is required");
    for (int i : i_values)
        if (i < 0 || i >= max_object)
            throw UsageError("each i must satisfy 0 <= i < max-object; got " + std::to_string(i));
    if (format != "json" && format != "table") throw UsageError("format must be json or table");
    if (jobs < 1) throw UsageError("jobs must be at least 1");
    if (category != "fi_gamma" && !PrimeField::is_prime(q))
        throw UsageError("q must be prime; got " + std::to_string(q));
}

void apply_config_stream(RunConfig& cfg, std::istream& in, const std::string& source_name) {
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": expected key=value", line_no);
        auto trim = [](std::string s) {
            const size_t a = s.find_first_not_of(" \t\r");
            const size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "category") {
                cfg.category = value;
            } else if (key == "q") {
                cfg.q = static_cast<uint32_t>(std::stoul(value));
            } else if (key == "gamma") {
                cfg.gamma = value;
            } else if (key == "i") {
                cfg.i_values.clear();
                std::istringstream ss(value);
                std::string tok;
                while (std::getline(ss, tok, ',')) cfg.i_values.push_back(std::stoi(tok));
            } else if (key == "max-object") {
                cfg.max_object = std::stoi(value);
            } else if (key == "guard") {
                cfg.guard = std::stoul(value);
            } else if (key == "guard-aut") {
                cfg.guard_aut = std::stoul(value);
            } else if (key == "audit") {
                cfg.audit = value == "1" || value == "true";
            } else if (key == "jobs") {
                cfg.jobs = std::stoi(value);
            } else if (key == "out") {
                cfg.out_path = value;
            } else if (key == "format") {
                cfg.format = value;
            } else if (key == "module") {
                cfg.module = value;
            } else if (key == "generators") {
                cfg.generators_path = value;
            } else {
                throw ParseError(source_name + ":" + std::to_string(line_no) + ": unknown key '" + key + "'",
                                 line_no);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(source_name + ":" + std::to_string(line_no) + ": bad value for '" + key + "'",
                             line_no);
        }
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    apply_config_stream(cfg, in, path);
}

CategoryInstance make_category(const RunConfig& cfg) {
    cfg.validate();
    Limits limits;
    limits.max_hom = cfg.guard;
    limits.max_aut = cfg.guard_aut;
    if (cfg.category == "vi") return CategoryInstance::vi(cfg.q, cfg.max_object, limits);
    if (cfg.category == "vic") return CategoryInstance::vic(cfg.q, cfg.max_object, limits);
    if (cfg.gamma.rfind("cyclic:", 0) == 0) {
        const uint32_t n = static_cast<uint32_t>(std::stoul(cfg.gamma.substr(7)));
        return CategoryInstance::fi_gamma(FiniteGroupTable::cyclic(n), cfg.max_object, limits);
    }
    if (cfg.gamma.rfind("table:", 0) == 0)
        return CategoryInstance::fi_gamma(FiniteGroupTable::load_file(cfg.gamma.substr(6)), cfg.max_object, limits);
    throw UsageError("gamma must be cyclic:<n> or table:<path>; got '" + cfg.gamma + "'");
}

void parallel_for(int jobs, size_t count, const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto worker = [&] {
        while (true) {
            const size_t k = next.fetch_add(1);
            if (k >= count) return;
            try {
                fn(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    const size_t n_threads = std::min<size_t>(static_cast<size_t>(jobs), count);
    threads.reserve(n_threads);
    for (size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

Json run_check_conditions(const CategoryInstance& cat, const RunConfig& cfg) {
    Json section;
    section["name"] = "check-conditions";
    section["verifies"] = "single-step and full transitivity; orbit-map bijectivity onsets; "
                          "double-coset route agreement; injectivity of the one-step map";
    section["category"] = cat.descriptor();
    section["max_object"] = cfg.max_object;

    const TransitivityReport tr = check_transitivity(cat, cfg.max_object);
    Json jt;
    Json single = Json::array();
    for (const auto& c : tr.single_step) single.push_back({{"i", c.i}, {"j", c.j}, {"transitive", c.transitive}});
    Json full = Json::array();
    for (const auto& c : tr.full) full.push_back({{"i", c.i}, {"j", c.j}, {"transitive", c.transitive}});
    jt["single_step"] = single;
    jt["full"] = full;
    jt["all_single_step"] = tr.all_single_step;
    jt["all_full"] = tr.all_full;
    jt["implication_holds"] = tr.implication_holds;
    section["transitivity"] = jt;

    const int j_max = cfg.max_object - 1;
    std::vector<Json> per_i(cfg.i_values.size());
    parallel_for(cfg.jobs, cfg.i_values.size(), [&](size_t k) {
        const int i = cfg.i_values[k];
        Json entry;
        entry["i"] = i;
        if (i >= j_max) {
            entry["cells"] = Json::array();
            entry["onset"] = nullptr;
            entry["qualifier"] = "no degrees to check below the truncation";
            per_i[k] = std::move(entry);
            return;
        }
        const BijectivityReport rep = check_bijectivity(cat, i, j_max);
        Json cells = Json::array();
        for (const auto& c : rep.cells) cells.push_back(cell_json(c));
        entry["cells"] = cells;
        if (rep.onset)
            entry["onset"] = *rep.onset;
        else
            entry["onset"] = nullptr;
        entry["qualifier"] = "verified for j in [" + std::to_string(i + 1) + "," + std::to_string(j_max) +
                             "]; nothing is claimed beyond the truncation";
        per_i[k] = std::move(entry);
    });
    Json bij = Json::array();
    for (auto& e : per_i) bij.push_back(std::move(e));
    section["bijectivity"] = bij;
    return section;
}

Json run_orbits(const CategoryInstance& cat, const RunConfig& cfg) {
    Json section;
    section["name"] = "orbits";
    section["verifies"] = "stabilizer orbit decompositions; orbit-stabilizer divisibility; "
                          "classification-invariant consistency and census coverage";
    section["category"] = cat.descriptor();

    struct Cell {
        int i, j;
    };
    std::vector<Cell> cells;
    for (int i : cfg.i_values)
        for (int j = i + 1; j <= cfg.max_object; ++j) cells.push_back({i, j});
    std::vector<Json> results(cells.size());
    parallel_for(cfg.jobs, cells.size(), [&](size_t k) {
        const auto [i, j] = cells[k];
        const StabilizerSubgroup h = stabilizer(cat, i, j);
        const OrbitDecomposition dec = orbits(cat, i, j);
        Json entry;
        entry["i"] = i;
        entry["j"] = j;
        entry["hom_size"] = cat.hom_set(i, j).size();
        entry["stabilizer_order"] = h.order();
        entry["orbit_count"] = dec.count();
        std::vector<size_t> sizes;
        for (const auto& o : dec.orbits) sizes.push_back(o.size());
        entry["orbit_sizes"] = sizes;
        if (cat.kind() == CategoryKind::Vic) {
            entry["theta"] = nullptr; // no classification invariant for this kind
        } else {
            const ThetaConsistency tc = theta_consistency(cat, i, j);
            Json jt;
            jt["classes"] = tc.theta_classes;
            jt["census_size"] = tc.census_size;
            jt["classes_match_orbits"] = tc.classes_match_orbits;
            jt["surjective_onto_census"] = tc.surjective;
            entry["theta"] = jt;
        }
        results[k] = std::move(entry);
    });
    Json arr = Json::array();
    for (auto& r : results) arr.push_back(std::move(r));
    section["cells"] = arr;
    return section;
}

namespace {

BuiltinModule resolve_module(const CategoryInstance& cat, const RunConfig& cfg, int source) {
    if (!cfg.generators_path.empty()) {
        const auto gens = parse_generator_file(cfg.generators_path);
        return make_from_generators(cat, source, cfg.max_object, gens, "file:" + cfg.generators_path);
    }
    return make_builtin(cat, cfg.module, source, cfg.max_object);
}

Json audit_hom_spaces(const CategoryInstance& cat, int i, const GradedSubmodule& x, int j_start, int j_end) {
    Json audit;
    std::vector<int> audited, skipped;
    bool pass = true;
    for (int j = j_start; j <= j_end; ++j) {
        if (cat.aut(j).size() > kAuditGroupBound) {
            skipped.push_back(j);
            continue;
        }
        audited.push_back(j);
        const HomSpace hs = hom_space(cat, i, j, x.space(j));
        for (const auto& f : hs.basis) {
            for (uint32_t g = 0; g < cat.aut(j).size(); ++g) {
                const QMat p = basis_permutation(cat, i, j, g);
                if (!(f * p == p * f)) pass = false;
            }
        }
    }
    audit["mode"] = "full-group equivariance";
    audit["audited_degrees"] = audited;
    audit["skipped_degrees"] = skipped;
    audit["pass"] = pass;
    if (!pass) throw InvariantViolation("audit: a solved map fails full-group equivariance");
    return audit;
}

} // namespace

Json run_stabilize(const CategoryInstance& cat, const RunConfig& cfg) {
    Json section;
    section["name"] = "stabilize";
    section["verifies"] = "orbit-basis/evaluation transport agreement; chain injectivity and bound; "
                          "strict Hom growth for proper targets";
    section["category"] = cat.descriptor();

    const int i = cfg.i_values.front();
    const BuiltinModule mod = resolve_module(cat, cfg, i);
    if (!mod.parent->free_source())
        throw UsageError("stabilize needs a submodule of a single free module; '" + mod.name +
                         "' lives elsewhere (use fg-torsion for it)");
    const int source = *mod.parent->free_source();
    section["module"] = mod.name;
    section["i"] = source;

    const int j_max = cfg.max_object - 1;
    std::optional<int> onset;
    if (source < j_max) onset = check_bijectivity(cat, source, j_max).onset;
    if (onset)
        section["onset"] = *onset;
    else
        section["onset"] = nullptr;

    if (!onset) {
        section["chain"] = nullptr;
        section["note"] = "no bijectivity onset inside the truncation; the chain is not constructed";
    } else {
        const ChainReport rep = chain_report(cat, source, *mod.sub, *onset, cfg.max_object);
        Json jc;
        jc["j_start"] = rep.j_start;
        jc["j_end"] = rep.j_end;
        jc["bound_dim_end_at_start"] = rep.bound;
        Json degrees = Json::array();
        for (const auto& d : rep.degrees) {
            Json jd;
            jd["j"] = d.j;
            jd["dim_hom_x"] = d.dim_hom_x;
            jd["dim_end"] = d.dim_end;
            jd["nu_bijective_on_end"] = d.nu_bijective_on_end;
            jd["nu_injective_on_hom"] = d.nu_injective_on_hom;
            jd["square_commutes"] = d.square_commutes;
            jd["strict_growth_for_proper_targets"] = d.maschke_strict_zero_pair;
            degrees.push_back(std::move(jd));
        }
        jc["degrees"] = degrees;
        jc["bound_holds"] = rep.bound_holds;
        jc["dims_nondecreasing"] = rep.dims_nondecreasing;
        jc["all_pass"] = rep.all_pass;
        section["chain"] = jc;
        if (cfg.audit) section["audit"] = audit_hom_spaces(cat, source, *mod.sub, rep.j_start, rep.j_end);
    }
    section["fg"] = fg_json(fg_verdict(*mod.sub));
    return section;
}

Json run_fg_torsion(const CategoryInstance& cat, const RunConfig& cfg) {
    Json section;
    section["name"] = "fg-torsion";
    section["verifies"] = "one-step image saturation per degree; step-kernel submodule and its vanishing";
    section["category"] = cat.descriptor();

    const int i = cfg.i_values.front();
    const BuiltinModule mod = resolve_module(cat, cfg, i);
    section["module"] = mod.name;
    std::vector<size_t> dims;
    for (int j = 0; j <= mod.sub->truncation(); ++j) dims.push_back(mod.sub->dim(j));
    section["dims"] = dims;
    section["fg"] = fg_json(fg_verdict(*mod.sub));
    const TorsionReport t = torsion(*mod.sub);
    Json jt;
    jt["degrees_computed"] = t.degrees_computed;
    jt["dims"] = t.dims();
    jt["is_zero"] = t.is_zero();
    section["torsion"] = jt;
    if (cfg.audit) {
        // Cross-check the generator-word route against direct basis
        // bookkeeping, element by element, where the group is small enough.
        Json audit;
        std::vector<int> audited, skipped;
        bool pass = true;
        const GradedModule& parent = mod.sub->parent();
        for (int j = 0; j <= parent.truncation(); ++j) {
            if (cat.aut(j).size() > kAuditGroupBound || parent.summands().empty()) {
                skipped.push_back(j);
                continue;
            }
            audited.push_back(j);
            for (uint32_t g = 0; g < cat.aut(j).size(); ++g) {
                QMat via_word = QMat::identity(RationalField{}, parent.dim(j));
                for (uint32_t k : cat.aut_word(j, g)) via_word = parent.generator_action(j, k) * via_word;
                if (!(via_word == parent.aut_action(j, g))) pass = false;
            }
        }
        audit["mode"] = "full-group action expansion";
        audit["audited_degrees"] = audited;
        audit["skipped_degrees"] = skipped;
        audit["pass"] = pass;
        if (!pass) throw InvariantViolation("audit: generator-word expansion disagrees with the stored action");
        section["audit"] = audit;
    }
    return section;
}

Json full_report(const RunConfig& cfg, const std::vector<std::string>& sections) {
    cfg.validate();
    Json report;
    report["schema_version"] = 1;
    report["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    Json echo;
    echo["category"] = cfg.category;
    if (cfg.category == "fi_gamma")
        echo["gamma"] = cfg.gamma;
    else
        echo["q"] = cfg.q;
    echo["i"] = cfg.i_values;
    echo["max_object"] = cfg.max_object;
    echo["guard"] = cfg.guard;
    echo["guard_aut"] = cfg.guard_aut;
    echo["audit"] = cfg.audit;
    if (std::find(sections.begin(), sections.end(), "stabilize") != sections.end() ||
        std::find(sections.begin(), sections.end(), "fg-torsion") != sections.end()) {
        echo["module"] = cfg.generators_path.empty() ? cfg.module : "file:" + cfg.generators_path;
    }
    report["config"] = echo;

    const CategoryInstance cat = make_category(cfg);
    Json out_sections = Json::array();
    for (const auto& name : sections) {
        const auto start = std::chrono::steady_clock::now();
        if (name == "check-conditions") {
            out_sections.push_back(run_check_conditions(cat, cfg));
        } else if (name == "orbits") {
            out_sections.push_back(run_orbits(cat, cfg));
        } else if (name == "stabilize") {
            out_sections.push_back(run_stabilize(cat, cfg));
        } else if (name == "fg-torsion") {
            out_sections.push_back(run_fg_torsion(cat, cfg));
        } else {
            throw UsageError("unknown section '" + name + "'");
        }
        const auto elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        // Timing goes to stderr so reports stay byte-identical across runs.
        std::cerr << "[einl] section " << name << ": " << elapsed << " ms\n";
    }
    report["sections"] = out_sections;
    return report;
}

namespace {

std::string bool_mark(const Json& v) {
    return v.get<bool>() ? "yes" : "no";
}

void render_section(std::ostringstream& out, const Json& s) {
    out << "== " << s.at("name").get<std::string>() << " ==\n";
    out << "verifies: " << s.at("verifies").get<std::string>() << "\n";
    if (s.contains("category")) out << "category: " << s.at("category").get<std::string>() << "\n";
    const std::string name = s.at("name").get<std::string>();
    if (name == "check-conditions") {
        const auto& tr = s.at("transitivity");
        out << "transitivity: single-step " << bool_mark(tr.at("all_single_step")) << ", full "
            << bool_mark(tr.at("all_full")) << ", implication " << bool_mark(tr.at("implication_holds")) << "\n";
        for (const auto& entry : s.at("bijectivity")) {
            out << "i=" << entry.at("i").get<int>() << " onset=";
            if (entry.at("onset").is_null())
                out << "none";
            else
                out << entry.at("onset").get<int>();
            out << " (" << entry.at("qualifier").get<std::string>() << ")\n";
            out << "  j | orb_src orb_tgt | mu inj sur bij | m inj | mu' sur bij | routes lemma\n";
            for (const auto& c : entry.at("cells")) {
                out << "  " << c.at("j").get<int>() << " | " << c.at("orbits_source").get<size_t>() << " "
                    << c.at("orbits_target").get<size_t>() << " | " << bool_mark(c.at("mu_injective")) << " "
                    << bool_mark(c.at("mu_surjective")) << " " << bool_mark(c.at("mu_bijective")) << " | "
                    << bool_mark(c.at("m_injective")) << " | " << bool_mark(c.at("mu_prime_surjective")) << " "
                    << bool_mark(c.at("mu_prime_bijective")) << " | " << bool_mark(c.at("routes_agree")) << " "
                    << bool_mark(c.at("mu_injective_implies_m_injective")) << "\n";
            }
        }
    } else if (name == "orbits") {
        out << "  i j | hom | |H| | orbits sizes | theta(classes/census match sur)\n";
        for (const auto& c : s.at("cells")) {
            out << "  " << c.at("i").get<int>() << " " << c.at("j").get<int>() << " | "
                << c.at("hom_size").get<size_t>() << " | " << c.at("stabilizer_order").get<size_t>() << " | "
                << c.at("orbit_count").get<size_t>() << " [";
            bool first = true;
            for (const auto& sz : c.at("orbit_sizes")) {
                if (!first) out << ",";
                out << sz.get<size_t>();
                first = false;
            }
            out << "] | ";
            if (c.at("theta").is_null()) {
                out << "-\n";
            } else {
                const auto& t = c.at("theta");
                out << t.at("classes").get<size_t>() << "/" << t.at("census_size").get<size_t>() << " "
                    << bool_mark(t.at("classes_match_orbits")) << " " << bool_mark(t.at("surjective_onto_census"))
                    << "\n";
            }
        }
    } else if (name == "stabilize") {
        out << "module: " << s.at("module").get<std::string>() << ", i=" << s.at("i").get<int>() << "\n";
        if (s.at("chain").is_null()) {
            out << "chain: not constructed (" << s.at("note").get<std::string>() << ")\n";
        } else {
            const auto& ch = s.at("chain");
            out << "chain [" << ch.at("j_start").get<int>() << "," << ch.at("j_end").get<int>()
                << "] bound=" << ch.at("bound_dim_end_at_start").get<size_t>() << " all_pass="
                << bool_mark(ch.at("all_pass")) << "\n";
            out << "  j | dim_hom_x dim_end | nu_bij nu_inj square strict\n";
            for (const auto& d : ch.at("degrees")) {
                out << "  " << d.at("j").get<int>() << " | " << d.at("dim_hom_x").get<size_t>() << " "
                    << d.at("dim_end").get<size_t>() << " | " << bool_mark(d.at("nu_bijective_on_end")) << " "
                    << bool_mark(d.at("nu_injective_on_hom")) << " " << bool_mark(d.at("square_commutes")) << " "
                    << bool_mark(d.at("strict_growth_for_proper_targets")) << "\n";
            }
        }
        out << "fg: generators at ";
        out << s.at("fg").at("generator_degrees").dump() << ", window_start=";
        if (s.at("fg").at("window_start").is_null())
            out << "none";
        else
            out << s.at("fg").at("window_start").get<int>();
        out << "\n";
    } else if (name == "fg-torsion") {
        out << "module: " << s.at("module").get<std::string>() << ", dims=" << s.at("dims").dump() << "\n";
        const auto& fg = s.at("fg");
        out << "fg: rho_full=" << fg.at("rho_full_per_degree").dump()
            << " generators=" << fg.at("generator_degrees").dump() << " fg_up_to_truncation="
            << bool_mark(fg.at("finitely_generated_up_to_truncation")) << "\n";
        out << "    " << fg.at("caveat").get<std::string>() << "\n";
        const auto& t = s.at("torsion");
        out << "torsion: dims=" << t.at("dims").dump() << " zero=" << bool_mark(t.at("is_zero")) << "\n";
    }
    if (s.contains("audit")) {
        const auto& a = s.at("audit");
        out << "audit (" << a.at("mode").get<std::string>() << "): pass=" << bool_mark(a.at("pass"))
            << " degrees=" << a.at("audited_degrees").dump() << " skipped=" << a.at("skipped_degrees").dump()
            << "\n";
    }
}

} // namespace

std::string render_table(const Json& report) {
    std::ostringstream out;
    out << kToolName << " " << report.at("tool").at("version").get<std::string>() << " report (schema "
        << report.at("schema_version").get<int>() << ")\n";
    out << "config: " << report.at("config").dump() << "\n\n";
    for (const auto& s : report.at("sections")) {
        render_section(out, s);
        out << "\n";
    }
    return out.str();
}

std::string report_to_string(const Json& report, const std::string& format) {
    if (format == "table") return render_table(report);
    return report.dump(2) + "\n";
}

} // namespace einl
