#ifndef SYNMIX_CLI_HPP
#define SYNMIX_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 invalid input,
// 2 I/O failure, 64 usage error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "synmix/annotations.hpp"
#include "synmix/error.hpp"
#include "synmix/metrics.hpp"
#include "synmix/mixing.hpp"
#include "synmix/scaling.hpp"
#include "synmix/simulate.hpp"
#include "synmix/version.hpp"

namespace synmix::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kInvalid = 1, kIo = 2, kUsage = 64 };

class UsageError : public Error {
public:
    using Error::Error;
};

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    return ss.str();
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory '" + path.parent_path().string() +
                          "': " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("error while writing '" + path.string() + "'");
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        const auto v = detail::trim(item);
        if (!v.empty()) out.emplace_back(v);
    }
    return out;
}

inline std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
        out.push_back(detail::parse_number<double>(item, 0, 0, what));
    }
    return out;
}

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    std::string output_dir = ".";
    std::string format = "csv";
    double iou_threshold = 0.5;
};

struct Context {
    GlobalOptions global;
    std::ostream& out;
    std::ostream& err;
    std::vector<fs::path> inputs;

    fs::path output_path(const std::string& explicit_path, const std::string& default_name) const {
        return explicit_path.empty() ? fs::path(global.output_dir) / default_name
                                     : fs::path(explicit_path);
    }

    std::string table_ext() const { return global.format == "markdown" ? ".md" : ".csv"; }

    std::string read_input(const fs::path& p) {
        inputs.push_back(p);
        return read_file(p);
    }

    /// Refuses to overwrite any file that was read as input.
    void write(const fs::path& p, const std::string& content) const {
        for (const auto& in : inputs) {
            std::error_code ec;
            if (fs::exists(p, ec) && fs::equivalent(p, in, ec)) {
                throw IoError("refusing to overwrite input file '" + p.string() + "'");
            }
        }
        write_file(p, content);
        err << "wrote " << p.string() << "\n";
    }

    std::uint64_t require_seed(const char* command) const {
        if (!global.seed) {
            throw UsageError(std::string(command) +
                             " draws random numbers and requires an explicit --seed");
        }
        return *global.seed;
    }
};

inline std::vector<fs::path> find_cityscapes_files(const std::vector<std::string>& paths) {
    std::vector<fs::path> files;
    for (const auto& p : paths) {
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            std::vector<fs::path> found;
            for (fs::recursive_directory_iterator it(p, ec), end; it != end && !ec;
                 it.increment(ec)) {
                const std::string name = it->path().filename().string();
                if (it->is_regular_file() && name.ends_with("_polygons.json")) {
                    found.push_back(it->path());
                }
            }
            if (ec) throw IoError("cannot scan directory '" + p + "': " + ec.message());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::exists(p, ec)) {
            files.emplace_back(p);
        } else {
            throw IoError("no such file or directory '" + p + "'");
        }
    }
    return files;
}

inline std::string class_stats_csv(const std::string& manifest, const ClassDistribution& d) {
    std::string out;
    for (const auto& c : d.categories) {
        out += fmt::format("{},{},{},{},{:.6f}\n", manifest, d.n_images, c.category, c.total,
                           c.average);
    }
    return out;
}

inline std::string class_stats_markdown(const std::string& manifest, const ClassDistribution& d) {
    std::string out = fmt::format("**{}** ({} images)\n\n", manifest, d.n_images);
    out += "| Category | Instances | Average per image |\n|:---|---:|---:|\n";
    for (const auto& c : d.categories) {
        out += fmt::format("| {} | {} | {:.4f} |\n", c.category, c.total, c.average);
    }
    return out + "\n";
}

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    Context ctx{{}, out, err, {}};
    GlobalOptions& g = ctx.global;

    CLI::App app{"Synthetic/real data mixing toolkit for detection experiments", "synmix"};
    app.set_version_flag("--version", std::string(version_string()));
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", g.seed, "Seed for every random draw (required when sampling)");
    app.add_option("--output-dir", g.output_dir, "Directory for output files")
        ->capture_default_str();
    app.add_option("--format", g.format, "Table output format")
        ->check(CLI::IsMember({"csv", "markdown"}))
        ->capture_default_str();
    app.add_option("--iou-threshold", g.iou_threshold, "IoU match threshold")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Build a manifest from Cityscapes polygon files");
    std::vector<std::string> ingest_paths;
    std::string ingest_manifest, ingest_categories, ingest_name = "cityscapes",
                                                    ingest_domain = "real", ingest_output;
    auto* cs_opt = ingest->add_option("--cityscapes", ingest_paths,
                                      "Polygon annotation files or directories");
    auto* mf_opt = ingest->add_option("--manifest", ingest_manifest,
                                      "Existing manifest to normalise (polygons to boxes)");
    cs_opt->excludes(mf_opt);
    ingest->add_option("--categories", ingest_categories, "Comma-separated category set");
    ingest->add_option("--name", ingest_name)->capture_default_str();
    ingest->add_option("--domain", ingest_domain)
        ->check(CLI::IsMember({"real", "synthetic"}))
        ->capture_default_str();
    ingest->add_option("--output", ingest_output, "Output manifest (default <output-dir>/manifest.json)");

    // merge-riders
    auto* merge = app.add_subcommand("merge-riders", "Fuse riders with their closest rideable");
    std::string merge_manifest, merge_output, merge_fallback = "drop";
    RiderMergeOptions merge_opts;
    std::string merge_rideables = "bicycle,motorcycle";
    merge->add_option("--manifest", merge_manifest)->required();
    merge->add_option("--rider", merge_opts.rider_category)->capture_default_str();
    merge->add_option("--rideables", merge_rideables)->capture_default_str();
    merge->add_option("--fallback", merge_fallback, "Riders without a rideable")
        ->check(CLI::IsMember({"drop", "keep-as-person"}))
        ->capture_default_str();
    merge->add_option("--person-category", merge_opts.person_category)->capture_default_str();
    merge->add_option("--output", merge_output,
                      "Output manifest (default <output-dir>/manifest_merged.json)");

    // class-stats
    auto* cstats = app.add_subcommand("class-stats", "Average instances per image per category");
    std::vector<std::string> cstats_manifests;
    cstats->add_option("--manifest", cstats_manifests)->required();

    // plan-mix
    auto* plan = app.add_subcommand("plan-mix", "Plan log-spaced mixed real/synthetic subsets");
    std::string plan_real, plan_synth;
    PlanOptions plan_opts;
    std::optional<std::int64_t> plan_n_max;
    plan->add_option("--real", plan_real)->required();
    plan->add_option("--synthetic", plan_synth)->required();
    plan->add_option("--ratio", plan_opts.ratio, "Fraction of real images")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    plan->add_option("--points", plan_opts.points)->capture_default_str();
    plan->add_option("--decades", plan_opts.decades)->capture_default_str();
    plan->add_option("--n-max", plan_n_max, "Largest subset size (default: real pool size)");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "AP/mAP of predictions against a manifest");
    std::string eval_manifest, eval_predictions, eval_interp = "all-point";
    bool eval_pr = false;
    eval->add_option("--manifest", eval_manifest)->required();
    eval->add_option("--predictions", eval_predictions)->required();
    eval->add_option("--interpolation", eval_interp)
        ->check(CLI::IsMember({"all-point", "11-point"}))
        ->capture_default_str();
    eval->add_flag("--pr-curves", eval_pr, "Also write pr_curves.csv");

    // fit / savings share their options
    struct RunsOptions {
        std::string runs;
        std::vector<std::string> metrics;
        AnalysisOptions analysis;
        bool all_repeats = false;
    };
    RunsOptions fit_o, sav_o;
    const auto add_runs_options = [](CLI::App* sub, RunsOptions& o) {
        sub->add_option("--runs", o.runs, "Run-records CSV")->required();
        sub->add_option("--metric", o.metrics, "Metric(s) to analyse (default: all)");
        sub->add_option("--baseline-ratio", o.analysis.baseline_ratio)->capture_default_str();
        sub->add_option("--error-floor", o.analysis.error_floor)->capture_default_str();
        sub->add_flag("--fit-all-repeats", o.all_repeats,
                      "Fit through every repeat instead of per-size means");
    };
    auto* fit = app.add_subcommand("fit", "Fit error = 10^beta N^gamma per ratio");
    add_runs_options(fit, fit_o);
    auto* sav = app.add_subcommand("savings", "Images needed to reach the real-only baseline");
    add_runs_options(sav, sav_o);

    // compare
    auto* cmp = app.add_subcommand("compare", "Welch t-test between two training strategies");
    std::string cmp_input, cmp_a, cmp_b, cmp_metric = "map50";
    double cmp_alpha = 0.05;
    auto* cmp_in_opt = cmp->add_option("--input", cmp_input, "CSV strategy,metric,value");
    auto* cmp_a_opt = cmp->add_option("--a", cmp_a, "Comma-separated values, group A");
    auto* cmp_b_opt = cmp->add_option("--b", cmp_b, "Comma-separated values, group B");
    cmp_in_opt->excludes(cmp_a_opt)->excludes(cmp_b_opt);
    cmp_a_opt->needs(cmp_b_opt);
    cmp_b_opt->needs(cmp_a_opt);
    cmp->add_option("--metric", cmp_metric, "Metric label for --a/--b")->capture_default_str();
    cmp->add_option("--alpha", cmp_alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate run records from known power laws");
    std::string sim_config, sim_output, sim_sizes;
    std::vector<std::string> sim_curves;
    SimulationSpec sim_spec;
    std::int64_t sim_n_max = 2727;
    int sim_points = 10;
    double sim_decades = 1.0;
    auto* sim_cfg_opt = sim->add_option("--config", sim_config, "JSON simulation config");
    auto* sim_curve_opt =
        sim->add_option("--curve", sim_curves, "ratio:beta:gamma (repeatable)");
    sim_cfg_opt->excludes(sim_curve_opt);
    sim->add_option("--sizes", sim_sizes, "Comma-separated sizes (default: log-spaced plan)");
    sim->add_option("--n-max", sim_n_max)->capture_default_str();
    sim->add_option("--points", sim_points)->capture_default_str();
    sim->add_option("--decades", sim_decades)->capture_default_str();
    sim->add_option("--repeats", sim_spec.repeats)->capture_default_str();
    sim->add_option("--sigma", sim_spec.sigma, "Log10 noise std")->capture_default_str();
    sim->add_option("--metric", sim_spec.metric)->capture_default_str();
    sim->add_option("--output", sim_output, "Output CSV (default <output-dir>/runs.csv)");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("synmix");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << version_string() << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (ingest->parsed()) {
            DatasetManifest m;
            if (!ingest_manifest.empty()) {
                m = parse_manifest_text(ctx.read_input(ingest_manifest));
            } else {
                if (ingest_paths.empty()) {
                    throw UsageError("ingest needs --cityscapes <paths> or --manifest <file>");
                }
                if (ingest_categories.empty()) {
                    throw UsageError("ingest --cityscapes needs --categories");
                }
                m.name = ingest_name;
                m.domain = parse_domain(ingest_domain);
                m.categories = split_list(ingest_categories);
                CityscapesIngestStats st;
                for (const auto& f : find_cityscapes_files(ingest_paths)) {
                    m.images.push_back(image_from_cityscapes(ctx.read_input(f),
                                                             cityscapes_image_id(f.string()),
                                                             m.categories, m.domain, st));
                }
                validate(m);
                out << fmt::format("ingested {} images: {} instances kept, {} skipped (label "
                                   "not in category set), {} skipped (degenerate polygon)\n",
                                   m.images.size(), st.kept, st.skipped_label,
                                   st.skipped_degenerate);
            }
            ctx.write(ctx.output_path(ingest_output, "manifest.json"), serialize_manifest(m));
        } else if (merge->parsed()) {
            const DatasetManifest m = parse_manifest_text(ctx.read_input(merge_manifest));
            merge_opts.rideable_categories = split_list(merge_rideables);
            merge_opts.fallback = merge_fallback == "drop" ? RiderFallback::drop
                                                           : RiderFallback::keep_as_person;
            const RiderMergeResult r = merge_riders(m, merge_opts);
            out << fmt::format("riders merged: {}, dropped (no rideable): {}, relabeled: {}\n",
                               r.merged, r.dropped, r.relabeled);
            if (r.dropped > 0) {
                err << fmt::format("warning: dropped {} riders without a rideable in the image\n",
                                   r.dropped);
            }
            ctx.write(ctx.output_path(merge_output, "manifest_merged.json"),
                      serialize_manifest(r.manifest));
        } else if (cstats->parsed()) {
            std::string table = g.format == "markdown"
                                    ? std::string()
                                    : std::string("manifest,n_images,category,total,average\n");
            for (const auto& path : cstats_manifests) {
                const DatasetManifest m = parse_manifest_text(ctx.read_input(path));
                const ClassDistribution d = class_distribution(m);
                out << class_stats_markdown(m.name, d);
                table += g.format == "markdown" ? class_stats_markdown(m.name, d)
                                                : class_stats_csv(m.name, d);
            }
            ctx.write(ctx.output_path("", "class_distribution" + ctx.table_ext()), table);
        } else if (plan->parsed()) {
            plan_opts.seed = ctx.require_seed("plan-mix");
            plan_opts.n_max = plan_n_max;
            const DatasetManifest real = parse_manifest_text(ctx.read_input(plan_real));
            const DatasetManifest synth = parse_manifest_text(ctx.read_input(plan_synth));
            const PlanOutput p = build_plan(real, synth, plan_opts);
            out << plan_summary_markdown(p.plan);
            ctx.write(ctx.output_path("", "plan.json"), plan_json(p));
            ctx.write(ctx.output_path("", "plan_summary" + ctx.table_ext()),
                      g.format == "markdown" ? plan_summary_markdown(p.plan)
                                             : plan_summary_csv(p.plan));
        } else if (eval->parsed()) {
            const DatasetManifest m = parse_manifest_text(ctx.read_input(eval_manifest));
            const auto preds = parse_predictions_text(ctx.read_input(eval_predictions));
            if (!(g.iou_threshold > 0.0)) throw ValidationError("--iou-threshold must be > 0");
            const EvaluationResult r =
                evaluate(preds, m, {g.iou_threshold, parse_interpolation(eval_interp)});
            out << evaluation_table_markdown(r);
            ctx.write(ctx.output_path("", "evaluation.json"), evaluation_report_json(r));
            ctx.write(ctx.output_path("", "ap_table" + ctx.table_ext()),
                      g.format == "markdown" ? evaluation_table_markdown(r)
                                             : evaluation_table_csv(r));
            if (eval_pr) ctx.write(ctx.output_path("", "pr_curves.csv"), pr_curves_csv(r));
        } else if (fit->parsed() || sav->parsed()) {
            RunsOptions& o = fit->parsed() ? fit_o : sav_o;
            o.analysis.fit_input = o.all_repeats ? FitInput::all_repeats : FitInput::means;
            const auto records = parse_runs_csv(ctx.read_input(o.runs));
            if (records.empty()) throw ValidationError("run-records file has no rows");
            const auto metrics = o.metrics.empty() ? metrics_in(records) : o.metrics;
            std::vector<MetricAnalysis> analyses;
            for (const auto& metric : metrics) {
                analyses.push_back(analyze_metric(records, metric, o.analysis));
                for (const auto& w : analyses.back().warnings) err << w << "\n";
            }
            if (fit->parsed()) {
                std::string fits = std::string(kFitCsvHeader) + "\n";
                std::string plot = std::string(kPlotCsvHeader) + "\n";
                for (const auto& a : analyses) {
                    fits += fits_csv_rows(a.fits);
                    plot += plot_data_csv_rows(a);
                }
                out << fits;
                ctx.write(ctx.output_path("", "fits.csv"), fits);
                ctx.write(ctx.output_path("", "plot_data.csv"), plot);
            } else {
                std::string csv = std::string(kSavingsCsvHeader) + "\n";
                std::string md;
                for (const auto& a : analyses) {
                    csv += savings_csv_rows(a.metric, a.rows);
                    md += fmt::format("### {} (baseline error {:.4f} at {} images)\n\n", a.metric,
                                      a.baseline.error, a.baseline.n_total);
                    md += savings_markdown(a.rows) + "\n";
                }
                out << md;
                ctx.write(ctx.output_path("", "savings" + ctx.table_ext()),
                          g.format == "markdown" ? md : csv);
            }
        } else if (cmp->parsed()) {
            std::vector<StrategyComparison> cs;
            if (!cmp_input.empty()) {
                cs = compare_strategies_csv(ctx.read_input(cmp_input), cmp_alpha);
            } else if (!cmp_a.empty()) {
                const auto a = parse_double_list(cmp_a, "value");
                const auto b = parse_double_list(cmp_b, "value");
                StrategyComparison c = compare_strategies(a, b, cmp_alpha);
                c.metric = cmp_metric;
                c.strategy_a = "a";
                c.strategy_b = "b";
                cs.push_back(std::move(c));
            } else {
                throw UsageError("compare needs --input <csv> or --a/--b value lists");
            }
            out << comparison_markdown(cs);
            ctx.write(ctx.output_path("", "comparison" + ctx.table_ext()),
                      g.format == "markdown" ? comparison_markdown(cs) : comparison_csv(cs));
        } else if (sim->parsed()) {
            const std::uint64_t seed = ctx.require_seed("simulate");
            SimulationSpec spec;
            if (!sim_config.empty()) {
                spec = parse_simulation_config(ctx.read_input(sim_config));
            } else {
                if (sim_curves.empty()) {
                    throw UsageError("simulate needs --config <json> or at least one --curve");
                }
                spec = sim_spec;
                for (const auto& c : sim_curves) {
                    std::vector<std::string> parts;
                    std::string part;
                    std::istringstream in(c);
                    while (std::getline(in, part, ':')) parts.push_back(part);
                    if (parts.size() != 3) {
                        throw UsageError("--curve expects ratio:beta:gamma, got '" + c + "'");
                    }
                    spec.curves.push_back({detail::parse_number<double>(parts[0], 0, 0, "ratio"),
                                           detail::parse_number<double>(parts[1], 0, 0, "beta"),
                                           detail::parse_number<double>(parts[2], 0, 0, "gamma")});
                }
                if (!sim_sizes.empty()) {
                    for (const auto& s : split_list(sim_sizes)) {
                        spec.sizes.push_back(detail::parse_number<std::int64_t>(s, 0, 0, "size"));
                    }
                } else {
                    spec.sizes = plan_sizes(sim_n_max, sim_points, sim_decades);
                }
            }
            spec.seed = seed;
            const auto records = generate_runs(spec);
            out << fmt::format("generated {} run records\n", records.size());
            ctx.write(ctx.output_path(sim_output, "runs.csv"), runs_csv(records));
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}

}  // namespace synmix::cli

#endif  // SYNMIX_CLI_HPP
