#include "knstat/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "knstat/asymptotics.hpp"
#include "knstat/census.hpp"
#include "knstat/report_io.hpp"
#include "knstat/tate.hpp"

namespace knstat::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    // classify
    std::string model;
    std::string short_model;
    std::vector<std::int64_t> primes;
    // census / compare
    std::string family;
    std::string height;
    std::string grouping;
    std::string torsion;
    std::string graph;
    std::string signs;
    bool exceptional = true;
    unsigned threads = 0;
    double tolerance = kDefaultToleranceConstant;
    // shared
    std::string format = "table";
    std::string output;
    bool unicode = false;
};

unsigned default_threads() {
    if (const char* env = std::getenv(kThreadsEnv)) {
        try {
            const long v = std::stol(env);
            if (v >= 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception&) {
        }
        throw UsageError(std::string(kThreadsEnv) + " must be a non-negative integer");
    }
    return 0;
}

WeierstrassModel model_from(const Options& o) {
    if (!o.model.empty()) {
        return WeierstrassModel::parse(o.model);
    }
    return ShortModel::parse(o.short_model).embed();
}

void classify(const Options& o, std::ostream& out) {
    const WeierstrassModel m = model_from(o);
    const Invariants inv = invariants(m);
    const RenderOptions render{parse_output_format(o.format), o.unicode};
    if (render.format == OutputFormat::Csv) {
        throw UsageError("classify supports --format table or json");
    }

    std::vector<LocalData> local;
    std::optional<i128> conductor;
    if (o.primes.empty()) {
        auto g = global_reduction(m);
        local = std::move(g.local);
        conductor = g.conductor;
    } else {
        for (auto p : o.primes) {
            local.push_back(tate(m, p));
        }
    }

    auto kodaira = [&](KodairaType k) { return render.unicode ? k.to_unicode() : k.to_string(); };

    if (render.format == OutputFormat::Json) {
        nlohmann::json j;
        j["model"] = m.to_string();
        j["discriminant"] = to_string(inv.discriminant);
        j["j_invariant"] = inv.j.to_string();
        if (conductor) {
            j["conductor"] = to_string(*conductor);
        }
        j["local"] = nlohmann::json::array();
        for (const auto& d : local) {
            j["local"].push_back({{"p", d.p},
                                  {"reduction", to_string(d.reduction)},
                                  {"kodaira", kodaira(d.kodaira)},
                                  {"conductor_exponent", d.conductor_exponent},
                                  {"tamagawa", d.tamagawa},
                                  {"was_minimal", d.was_minimal},
                                  {"scaling_exponent", d.scaling_exponent},
                                  {"minimal_model", d.minimal_model.to_string()},
                                  {"discriminant_valuation", d.discriminant_valuation}});
        }
        out << j.dump(2) << '\n';
        return;
    }

    out << "model         " << m.to_string() << '\n'
        << "discriminant  " << to_string(inv.discriminant) << '\n'
        << "j-invariant   " << inv.j.to_string() << '\n';
    if (conductor) {
        out << "conductor     " << to_string(*conductor) << '\n';
    }
    for (const auto& d : local) {
        out << "\np = " << d.p << '\n'
            << "  reduction     " << to_string(d.reduction);
        if (d.reduction == ReductionClass::Multiplicative) {
            out << (d.split ? " (split)" : " (non-split)");
        }
        out << '\n'
            << "  kodaira       " << kodaira(d.kodaira) << '\n'
            << "  f_p           " << d.conductor_exponent << '\n'
            << "  c_p           " << d.tamagawa << '\n'
            << "  v_p(disc_min) " << d.discriminant_valuation << '\n'
            << "  minimal       " << (d.was_minimal ? "yes" : "no") << '\n';
        if (!d.was_minimal) {
            out << "  rescalings    " << d.scaling_exponent << '\n'
                << "  minimal model " << d.minimal_model.to_string() << '\n';
        }
    }
}

CensusRequest request_from(const Options& o) {
    const Family family = parse_family(o.family);
    i128 height = 0;
    try {
        height = parse_exact_bound(o.height);
    } catch (const OverflowError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError("--height: " + std::string(e.what()));
    }
    if (height < 1) {
        throw UsageError("--height must be positive");
    }
    CensusRequest req = default_request(family, height);
    if (!o.torsion.empty() && !o.graph.empty()) {
        throw UsageError("--torsion and --graph are mutually exclusive");
    }
    if (!o.torsion.empty()) {
        req.grouping = Grouping::ByTorsion;
    } else if (!o.graph.empty()) {
        req.grouping = Grouping::ByGraph;
    }
    if (!o.grouping.empty()) {
        const Grouping g = parse_grouping(o.grouping);
        if ((!o.torsion.empty() || !o.graph.empty()) && g != req.grouping) {
            throw UsageError("--grouping conflicts with --torsion/--graph");
        }
        req.grouping = g;
    }
    if (req.grouping == Grouping::ByGraph && family == Family::J0) {
        throw UsageError("grouping by graph applies to j1728 only");
    }
    if (!o.signs.empty()) {
        req.signs = parse_signs(o.signs);
    }
    req.include_exceptional = o.exceptional;
    return req;
}

// Label the --torsion/--graph filter selects, if any.
std::optional<std::string> row_filter(const Options& o) {
    if (!o.torsion.empty()) {
        return to_string(parse_torsion(o.torsion));
    }
    if (!o.graph.empty()) {
        return to_string(parse_graph(o.graph));
    }
    return std::nullopt;
}

CensusReport filtered(CensusReport report, const std::optional<std::string>& group) {
    if (!group) {
        return report;
    }
    std::erase_if(report.rows, [&](const CensusRow& r) { return r.group != *group; });
    report.total = 0;
    for (const auto& r : report.rows) {
        report.total += r.count;
    }
    return report;
}

int census_cmd(const Options& o, std::ostream& out) {
    const CensusRequest req = request_from(o);
    const RenderOptions render{parse_output_format(o.format), o.unicode};
    const auto report = filtered(census(req, o.threads), row_filter(o));
    write_census(out, report, render);
    return kOk;
}

int compare_cmd(const Options& o, std::ostream& out) {
    const CensusRequest req = request_from(o);
    const RenderOptions render{parse_output_format(o.format), o.unicode};
    if (!(o.tolerance > 0.0)) {
        throw UsageError("--tolerance must be positive");
    }
    const auto group = row_filter(o);
    const auto report = census(req, o.threads);
    auto rows = compare(report, o.tolerance);
    if (group) {
        std::erase_if(rows, [&](const ComparisonRow& r) { return r.group != *group; });
    }
    write_comparison(out, filtered(report, group), rows, render);
    for (const auto& r : rows) {
        if (!r.within_tolerance) {
            return kToleranceExceeded;
        }
    }
    return kOk;
}

void add_census_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--family", o.family, "j0 or j1728")->required();
    cmd->add_option("--height", o.height, "height bound X, integer or exact scientific (1e18)")
        ->required();
    cmd->add_option("--grouping", o.grouping, "overall, by_torsion or by_graph");
    cmd->add_option("--torsion", o.torsion, "group by torsion and keep only this group");
    cmd->add_option("--graph", o.graph, "group by isogeny-torsion graph and keep only this graph");
    cmd->add_option("--signs", o.signs, "both or positive (default: both for j1728, positive for j0)");
    cmd->add_flag("--exceptional,!--no-exceptional", o.exceptional,
                  "count the 27.a/36.a or 32.a/64.a curves (default on)");
    cmd->add_option("--threads", o.threads,
                    std::string("worker threads, 0 = all cores (default from ") + kThreadsEnv + ")");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Reduction types and height census for j = 0 and j = 1728 elliptic curves",
                 "knstat"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");

    auto* classify_cmd = app.add_subcommand("classify", "local reduction data of one model");
    auto* model_opt = classify_cmd->add_option("--model", o.model, "a1,a2,a3,a4,a6");
    auto* short_opt = classify_cmd->add_option("--short", o.short_model, "A,B");
    model_opt->excludes(short_opt);
    classify_cmd->add_option("--prime", o.primes, "prime(s) to examine (default: all bad primes)");

    auto* census_sub = app.add_subcommand("census", "exact counts by Kodaira type");
    add_census_options(census_sub, o);
    auto* compare_sub = app.add_subcommand("compare", "census against the asymptotic counts");
    add_census_options(compare_sub, o);
    compare_sub->add_option("--tolerance", o.tolerance,
                            "C in the allowed deviation C * X^(error exponent)");

    for (auto* cmd : {classify_cmd, census_sub, compare_sub}) {
        cmd->add_option("--format", o.format, "table, csv or json");
        cmd->add_option("--output", o.output, "write to this file instead of stdout");
        cmd->add_flag("--unicode", o.unicode, "Unicode Kodaira symbols");
    }

    try {
        o.threads = default_threads();
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "knstat: " << e.what() << '\n';
        return kUsageError;
    } catch (const UsageError& e) {
        err << "knstat: " << e.what() << '\n';
        return kUsageError;
    }

    if (classify_cmd->parsed() && o.model.empty() && o.short_model.empty()) {
        err << "knstat: classify needs --model or --short\n";
        return kUsageError;
    }

    std::ofstream file;
    std::ostringstream buffer;
    try {
        int code = kOk;
        if (classify_cmd->parsed()) {
            classify(o, buffer);
        } else if (census_sub->parsed()) {
            code = census_cmd(o, buffer);
        } else {
            code = compare_cmd(o, buffer);
        }
        if (o.output.empty()) {
            out << buffer.str();
        } else {
            file.open(o.output, std::ios::binary);
            if (!file) {
                err << "knstat: cannot open " << o.output << '\n';
                return kUsageError;
            }
            file << buffer.str();
        }
        return code;
    } catch (const OverflowError& e) {
        err << "knstat: arithmetic overflow: " << e.what() << '\n';
        return kOverflow;
    } catch (const std::exception& e) {
        err << "knstat: " << e.what() << '\n';
        return kUsageError;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

} // namespace knstat::cli
