#include "revcap/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "revcap/parallel.hpp"

namespace revcap::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

using ordered_json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One output table; cells keep both the numeric value and its rendering so
// CSV and JSON stay consistent.
struct Cell {
    bool numeric = true;
    double number = 0.0;
    std::string text;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

Cell num_cell(double v) { return Cell{true, v, {}}; }
Cell text_cell(std::string s) { return Cell{false, 0.0, std::move(s)}; }

void write_csv(const Table& table, std::ostream& out) {
    for (size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "");
            out << (row[i].numeric ? format_value(row[i].number) : row[i].text);
        }
        out << "\n";
    }
}

void write_json(const Table& table, std::ostream& out) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj;
        for (size_t i = 0; i < row.size(); ++i) {
            if (row[i].numeric)
                obj[table.columns[i]] = row[i].number;
            else
                obj[table.columns[i]] = row[i].text;
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << "\n";
}

void emit_table(const Table& table, const CommandRequest& request, std::ostream& out) {
    const bool json = request.format == "json";
    if (request.out_path.empty()) {
        json ? write_json(table, out) : write_csv(table, out);
        return;
    }
    std::ofstream file(request.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + request.out_path);
    json ? write_json(table, file) : write_csv(table, file);
}

Measure parse_measure(const std::string& s) { return s == "ci" ? Measure::ci : Measure::rci; }

std::vector<Measure> measures_from_flag(const std::string& s) {
    if (s == "both") return {Measure::ci, Measure::rci};
    return {parse_measure(s)};
}

KrausChannel build_channel(const ChannelSpec& spec) {
    switch (spec.family) {
        case Family::ad: return make_ad(spec.eta);
        case Family::gad: return make_gad(spec.eta, spec.alpha).channel;
        case Family::erasure: return make_erasure(spec.epsilon);
        case Family::identity: return make_identity(2);
        case Family::random: return random_channel(2, 2, 2, spec.seed);
    }
    throw UsageError("unknown channel family");
}

double closed_info_value(const ChannelSpec& spec, const InputParams& params, Measure measure) {
    switch (spec.family) {
        case Family::ad: return ad_closed_form(spec.eta, params, measure).value;
        case Family::gad: return gad_closed_form(spec.eta, spec.alpha, params, measure).value;
        case Family::erasure: {
            if (std::abs(params.theta - kPi / 2) > 1e-12)
                throw UsageError("closed method for erasure requires theta = pi/2");
            const auto [ci, rci] = erasure_reference(spec.epsilon, params.p);
            return measure == Measure::ci ? ci : rci;
        }
        default: throw UsageError("closed method requires --channel ad, gad or erasure");
    }
}

int run_info(const CommandRequest& request, std::ostream& out) {
    const KrausChannel ch = build_channel(request.channel);
    const DensityMatrix rho = general_input(request.input).first;
    Table table{{"measure", "method", "value"}, {}};
    for (Measure m : request.measures) {
        std::optional<double> generic, closed;
        for (Method method : request.methods) {
            if (method == Method::generic) {
                generic = (m == Measure::ci) ? coherent_information(ch, rho).value
                                             : reverse_coherent_information(ch, rho).value;
                table.rows.push_back({text_cell(measure_name(m)), text_cell("generic"),
                                      num_cell(*generic)});
            } else {
                closed = closed_info_value(request.channel, request.input, m);
                table.rows.push_back({text_cell(measure_name(m)), text_cell("closed"),
                                      num_cell(*closed)});
            }
        }
        if (generic && closed)
            table.rows.push_back({text_cell(measure_name(m)), text_cell("difference"),
                                  num_cell(std::abs(*generic - *closed))});
    }
    if (request.format == "json") {
        write_json(table, out);
    } else {
        for (const auto& row : table.rows)
            out << row[0].text << " " << row[1].text << " " << format_value(row[2].number) << "\n";
    }
    return 0;
}

int run_capacity(const CommandRequest& request, std::ostream& out) {
    Table table{{"measure", "value", "raw", "p_star", "evaluations"}, {}};
    for (Measure m : request.measures) {
        const OptimizationResult r = optimize_population(request.channel, m, request.tol);
        table.rows.push_back({text_cell(measure_name(m)), num_cell(r.value), num_cell(r.raw_value),
                              num_cell(r.argmax_p), num_cell(static_cast<double>(r.evaluations))});
    }
    if (request.format == "json") {
        write_json(table, out);
    } else {
        for (const auto& row : table.rows)
            out << row[0].text << " value " << format_value(row[1].number) << " raw "
                << format_value(row[2].number) << " p_star " << format_value(row[3].number)
                << " evaluations " << format_value(row[4].number) << "\n";
    }
    return 0;
}

int run_curve(const CommandRequest& request, std::ostream& out) {
    const bool gad = request.channel.family == Family::gad;
    const std::optional<double> alpha =
        gad ? std::optional<double>(request.channel.alpha) : std::nullopt;
    const auto rows =
        capacity_curve(request.channel.family, request.eta_from, request.eta_to, request.steps,
                       alpha, request.jobs);
    const bool want_ci =
        std::find(request.measures.begin(), request.measures.end(), Measure::ci) != request.measures.end();
    const bool want_rci =
        std::find(request.measures.begin(), request.measures.end(), Measure::rci) != request.measures.end();

    Table table;
    table.columns.push_back("eta");
    if (gad) table.columns.push_back("alpha");
    if (want_ci) {
        table.columns.push_back("value_ci");
        table.columns.push_back("p_ci");
    }
    if (want_rci) {
        table.columns.push_back("value_rci");
        table.columns.push_back("p_rci");
    }
    for (const auto& row : rows) {
        std::vector<Cell> cells{num_cell(row.eta)};
        if (gad) cells.push_back(num_cell(*row.alpha));
        if (want_ci) {
            cells.push_back(num_cell(row.value_ci));
            cells.push_back(num_cell(row.p_ci));
        }
        if (want_rci) {
            cells.push_back(num_cell(row.value_rci));
            cells.push_back(num_cell(row.p_rci));
        }
        table.rows.push_back(std::move(cells));
    }
    emit_table(table, request, out);
    return 0;
}

int run_noise_threshold(const CommandRequest& request, std::ostream& out) {
    Table table{{"measure", "eta", "alpha_star"}, {}};
    for (const ThresholdJob& job : request.threshold_jobs) {
        std::vector<double> stars(job.steps + 1);
        parallel_for_index(job.steps + 1, request.jobs, [&](int i) {
            const double eta = job.eta_from + (job.eta_to - job.eta_from) * i / job.steps;
            stars[i] = noise_threshold(job.measure, eta, request.tol);
        });
        for (int i = 0; i <= job.steps; ++i) {
            const double eta = job.eta_from + (job.eta_to - job.eta_from) * i / job.steps;
            table.rows.push_back(
                {text_cell(measure_name(job.measure)), num_cell(eta), num_cell(stars[i])});
        }
    }
    emit_table(table, request, out);
    return 0;
}

int run_scan_theta(const CommandRequest& request, std::ostream& out) {
    const ClosedFamily family =
        request.channel.family == Family::ad ? ClosedFamily::ad : ClosedFamily::gad;
    const Measure measure = request.measures.front();
    Table table{{"p", "theta", "value"}, {}};
    const int per_p = request.grid_n + 1;
    const int total = static_cast<int>(request.p_values.size()) * per_p;
    std::vector<double> values(total);
    parallel_for_index(total, request.jobs, [&](int idx) {
        const double p = request.p_values[idx / per_p];
        const double theta = kPi * (idx % per_p) / request.grid_n;
        values[idx] = closed_form_value(family, measure, request.channel.eta, request.channel.alpha,
                                        p, theta);
    });
    for (int idx = 0; idx < total; ++idx) {
        const double p = request.p_values[idx / per_p];
        const double theta = kPi * (idx % per_p) / request.grid_n;
        table.rows.push_back({num_cell(p), num_cell(theta), num_cell(values[idx])});
    }
    emit_table(table, request, out);

    if (request.print_extrema) {
        for (double p : request.p_values) {
            const ThetaScan scan = extremum_scan(family, measure, request.channel.eta,
                                                 request.channel.alpha, p, request.grid_n);
            for (const auto& e : scan.extrema) {
                const char* kind = e.kind == ExtremumKind::maximum   ? "max"
                                   : e.kind == ExtremumKind::minimum ? "min"
                                                                     : "degenerate";
                out << "extremum p=" << format_value(p) << " theta=" << format_value(e.theta)
                    << " kind=" << kind << "\n";
            }
            if (scan.skipped_points > 0)
                out << "extremum-scan p=" << format_value(p)
                    << " skipped_grid_points=" << scan.skipped_points << "\n";
        }
    }
    return 0;
}

ordered_json errata_json(const std::vector<verify::ErrataEntry>& entries) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json obj;
        obj["id"] = e.id;
        obj["location"] = e.location;
        obj["baseline"] = e.baseline;
        obj["reconciled"] = e.reconciled;
        obj["status"] = e.status;
        obj["max_abs_deviation_baseline"] = e.max_abs_deviation_baseline;
        obj["max_abs_deviation_reconciled"] = e.max_abs_deviation_reconciled;
        obj["points"] = e.points;
        arr.push_back(std::move(obj));
    }
    return arr;
}

int run_verify(const CommandRequest& request, std::ostream& out, std::ostream& err) {
    verify::VerifyOptions opts;
    opts.jobs = request.jobs;
    opts.seed = request.seed;
    opts.tolerance_scale = request.tolerance_scale;

    std::vector<std::string> names = request.suites;
    if (names.empty() || (names.size() == 1 && names.front() == "all"))
        names = verify::suite_names();
    const auto reports = verify::run_suites(names, opts);

    long cases = 0, failures = 0;
    std::vector<verify::ErrataEntry> all_errata;
    for (const auto& r : reports) {
        cases += r.cases;
        failures += r.failures;
        all_errata.insert(all_errata.end(), r.errata.begin(), r.errata.end());
        err << "# " << r.name << " " << format_value(r.wall_seconds) << "s\n";
    }

    if (request.format == "json") {
        ordered_json doc;
        doc["suites"] = ordered_json::array();
        for (const auto& r : reports) {
            ordered_json obj;
            obj["name"] = r.name;
            obj["cases"] = r.cases;
            obj["failures"] = r.failures;
            obj["details"] = r.details;
            doc["suites"].push_back(std::move(obj));
        }
        doc["errata"] = errata_json(all_errata);
        doc["total"] = {{"suites", reports.size()}, {"cases", cases}, {"failures", failures}};
        out << doc.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            out << "suite " << r.name << ": cases=" << r.cases << " failures=" << r.failures
                << " errata=" << r.errata.size() << "\n";
            for (const auto& d : r.details) out << "  detail: " << d << "\n";
        }
        for (const auto& e : all_errata)
            out << "errata [" << e.status << "] " << e.id
                << ": baseline_deviation=" << format_value(e.max_abs_deviation_baseline)
                << " reconciled_deviation=" << format_value(e.max_abs_deviation_reconciled)
                << " points=" << e.points << "\n";
        out << "total: suites=" << reports.size() << " cases=" << cases
            << " failures=" << failures << "\n";
    }

    if (!request.errata_out.empty()) {
        std::ofstream file(request.errata_out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open errata output file: " + request.errata_out);
        file << errata_json(all_errata).dump(2) << "\n";
    }
    return failures > 0 ? 1 : 0;
}

void validate_channel_params(const std::string& family, const std::optional<double>& eta,
                             const std::optional<double>& alpha, const std::optional<double>& epsilon,
                             const std::optional<std::uint64_t>& seed, ChannelSpec& spec) {
    if (family == "ad" || family == "gad") {
        if (!eta) throw UsageError("eta required for " + family);
        spec.eta = *eta;
        if (family == "gad") {
            if (!alpha) throw UsageError("alpha required for gad");
            spec.alpha = *alpha;
            spec.family = Family::gad;
        } else {
            if (alpha) throw UsageError("alpha not accepted for ad");
            spec.family = Family::ad;
        }
        if (epsilon) throw UsageError("epsilon not accepted for " + family);
    } else if (family == "erasure") {
        if (!epsilon) throw UsageError("epsilon required for erasure");
        if (eta || alpha) throw UsageError("eta/alpha not accepted for erasure");
        spec.epsilon = *epsilon;
        spec.family = Family::erasure;
    } else if (family == "identity") {
        if (eta || alpha || epsilon || seed) throw UsageError("identity takes no channel parameters");
        spec.family = Family::identity;
    } else if (family == "random") {
        if (!seed) throw UsageError("seed required for random");
        if (eta || alpha || epsilon) throw UsageError("eta/alpha/epsilon not accepted for random");
        spec.family = Family::random;
        spec.seed = *seed;
    } else {
        throw UsageError("unknown channel family: " + family);
    }
    if (family != "random" && seed) throw UsageError("seed only applies to the random family");
}

}  // namespace

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream fields(line);
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

CommandRequest figure_presets(const std::string& id) {
    CommandRequest request;
    if (id == "fig4") {
        request.subcommand = "curve";
        request.channel.family = Family::ad;
        request.eta_from = 0.0;
        request.eta_to = 1.0;
        request.steps = 100;
        request.format = "csv";
    } else if (id == "fig6") {
        request.subcommand = "noise-threshold";
        request.threshold_jobs = {ThresholdJob{Measure::ci, 0.5, 1.0, 25},
                                  ThresholdJob{Measure::rci, 0.0, 1.0, 50}};
        request.tol = 1e-7;
        request.format = "csv";
    } else if (id == "fig7") {
        request.subcommand = "scan-theta";
        request.channel.family = Family::gad;
        request.channel.eta = 0.62;
        request.channel.alpha = 0.5;
        request.measures = {Measure::ci};
        request.p_values = {0.25, 0.5};
        request.grid_n = 256;
        request.format = "csv";
    } else if (id == "fig8") {
        request.subcommand = "scan-theta";
        request.channel.family = Family::gad;
        request.channel.eta = 0.75;
        request.channel.alpha = 0.4;
        request.measures = {Measure::rci};
        request.p_values = {0.25, 0.5};
        request.grid_n = 256;
        request.format = "csv";
    } else {
        throw UsageError("unknown preset id: " + id + " (expected fig4, fig6, fig7 or fig8)");
    }
    return request;
}

int run_request(const CommandRequest& request, std::ostream& out, std::ostream& err) {
    if (request.subcommand == "info") return run_info(request, out);
    if (request.subcommand == "capacity") return run_capacity(request, out);
    if (request.subcommand == "curve") return run_curve(request, out);
    if (request.subcommand == "noise-threshold") return run_noise_threshold(request, out);
    if (request.subcommand == "scan-theta") return run_scan_theta(request, out);
    if (request.subcommand == "verify") return run_verify(request, out, err);
    throw UsageError("unknown subcommand: " + request.subcommand);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"coherent and reverse coherent information toolkit for small quantum channels"};
    app.require_subcommand(1);

    std::string family, measure_flag = "both", method_flag = "both", format_flag, preset_id;
    std::optional<double> eta, alpha, epsilon;
    std::optional<std::uint64_t> seed_flag;
    CommandRequest request;
    request.input = InputParams{0.5, kPi / 2, 0.0};

    const auto add_channel_flags = [&](CLI::App* cmd, bool all_families) {
        auto families = all_families
                            ? std::vector<std::string>{"ad", "gad", "erasure", "identity", "random"}
                            : std::vector<std::string>{"ad", "gad"};
        cmd->add_option("--channel", family, "channel family")
            ->required()
            ->check(CLI::IsMember(families));
        cmd->add_option("--eta", eta, "damping transmissivity")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--alpha", alpha, "thermal parameter")->check(CLI::Range(0.0, 1.0));
        if (all_families) {
            cmd->add_option("--epsilon", epsilon, "erasure probability")->check(CLI::Range(0.0, 1.0));
            cmd->add_option("--seed", seed_flag, "seed for the random family");
        }
    };
    const auto add_jobs = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", request.jobs, "worker pool size")
            ->envname("REVCAP_JOBS")
            ->check(CLI::Range(1, 1024));
    };

    auto* info = app.add_subcommand("info", "evaluate the information measures at one input");
    add_channel_flags(info, true);
    info->add_option("--p", request.input.p, "input population")->check(CLI::Range(0.0, 1.0));
    info->add_option("--theta", request.input.theta, "input angle theta")
        ->check(CLI::Range(0.0, kPi));
    info->add_option("--phi", request.input.phi, "input phase phi")
        ->check(CLI::Range(0.0, 6.283185307179586));
    info->add_option("--measure", measure_flag, "ci, rci or both")
        ->check(CLI::IsMember({"ci", "rci", "both"}));
    info->add_option("--method", method_flag, "generic, closed or both")
        ->check(CLI::IsMember({"generic", "closed", "both"}));
    info->add_option("--format", format_flag, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* capacity = app.add_subcommand("capacity", "optimize the input population");
    add_channel_flags(capacity, false);
    capacity->add_option("--measure", measure_flag, "ci, rci or both")
        ->check(CLI::IsMember({"ci", "rci", "both"}));
    capacity->add_option("--tol", request.tol, "population bracket width")
        ->check(CLI::Range(1e-10, 1e-2));
    capacity->add_option("--format", format_flag, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* curve = app.add_subcommand("curve", "capacity sweep over the damping parameter");
    add_channel_flags(curve, false);
    curve->add_option("--eta-from", request.eta_from, "sweep start")->check(CLI::Range(0.0, 1.0));
    curve->add_option("--eta-to", request.eta_to, "sweep end")->check(CLI::Range(0.0, 1.0));
    curve->add_option("--steps", request.steps, "number of sweep intervals")
        ->check(CLI::Range(2, 1000000));
    curve->add_option("--measure", measure_flag, "ci, rci or both")
        ->check(CLI::IsMember({"ci", "rci", "both"}));
    curve->add_option("--out", request.out_path, "output file (default stdout)");
    curve->add_option("--format", format_flag, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_jobs(curve);

    auto* threshold = app.add_subcommand("noise-threshold",
                                         "tolerable thermal noise sweep for the generalized family");
    threshold->add_option("--eta-from", request.eta_from, "sweep start")->check(CLI::Range(0.0, 1.0));
    threshold->add_option("--eta-to", request.eta_to, "sweep end")->check(CLI::Range(0.0, 1.0));
    threshold->add_option("--steps", request.steps, "number of sweep intervals")
        ->check(CLI::Range(2, 100000));
    threshold->add_option("--measure", measure_flag, "ci, rci or both")
        ->check(CLI::IsMember({"ci", "rci", "both"}));
    threshold->add_option("--tol", request.tol, "bisection width on alpha")
        ->check(CLI::Range(1e-10, 1e-2));
    threshold->add_option("--out", request.out_path, "output file (default stdout)");
    threshold->add_option("--format", format_flag, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_jobs(threshold);

    auto* scan = app.add_subcommand("scan-theta", "information value over the input angle theta");
    add_channel_flags(scan, false);
    scan->add_option("--measure", measure_flag, "ci or rci")->check(CLI::IsMember({"ci", "rci"}));
    scan->add_option("--p", request.p_values, "input populations (repeatable)")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    scan->add_option("--grid", request.grid_n, "theta grid intervals")->check(CLI::Range(64, 65536));
    scan->add_flag("--extrema", request.print_extrema, "also print detected extrema");
    scan->add_option("--out", request.out_path, "output file (default stdout)");
    scan->add_option("--format", format_flag, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_jobs(scan);

    auto* preset = app.add_subcommand("preset", "run a named figure preset");
    preset->add_option("id", preset_id, "fig4, fig6, fig7 or fig8")->required();
    preset->add_option("--out", request.out_path, "output file (default stdout)");
    preset->add_option("--format", format_flag, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_jobs(preset);

    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    verify_cmd->add_option("--suite", request.suites, "suite names or 'all' (repeatable)");
    verify_cmd->add_option("--seed", request.seed, "base seed for sampled suites");
    verify_cmd->add_option("--tolerance-scale", request.tolerance_scale,
                           "scales every pass tolerance (test hook)")
        ->check(CLI::Range(1e-12, 1e12));
    verify_cmd->add_option("--errata-out", request.errata_out, "write the errata report as JSON");
    verify_cmd->add_option("--format", format_flag, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    add_jobs(verify_cmd);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("revcap");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        err << app.help();
        return 2;
    }

    try {
        if (preset->parsed()) {
            CommandRequest preset_request = figure_presets(preset_id);
            preset_request.out_path = request.out_path;
            preset_request.jobs = request.jobs;
            if (!format_flag.empty()) preset_request.format = format_flag;
            return run_request(preset_request, out, err);
        }

        request.measures = measures_from_flag(measure_flag);
        request.methods.clear();
        if (method_flag == "generic" || method_flag == "both")
            request.methods.push_back(Method::generic);
        if (method_flag == "closed" || method_flag == "both")
            request.methods.push_back(Method::closed_form);

        if (info->parsed() || capacity->parsed() || scan->parsed())
            validate_channel_params(family, eta, alpha, epsilon, seed_flag, request.channel);

        if (info->parsed()) {
            request.subcommand = "info";
            request.format = format_flag.empty() ? "text" : format_flag;
        } else if (capacity->parsed()) {
            request.subcommand = "capacity";
            request.format = format_flag.empty() ? "text" : format_flag;
        } else if (curve->parsed()) {
            request.subcommand = "curve";
            if (eta) throw UsageError("eta is swept by curve; use --eta-from/--eta-to");
            if (family == "gad") {
                if (!alpha) throw UsageError("alpha required for gad");
                request.channel.family = Family::gad;
                request.channel.alpha = *alpha;
            } else {
                if (alpha) throw UsageError("alpha not accepted for ad");
                request.channel.family = Family::ad;
            }
            if (request.eta_from >= request.eta_to)
                throw UsageError("need eta-from < eta-to");
            request.format = format_flag.empty() ? "csv" : format_flag;
        } else if (threshold->parsed()) {
            request.subcommand = "noise-threshold";
            if (request.eta_from >= request.eta_to)
                throw UsageError("need eta-from < eta-to");
            for (Measure m : request.measures)
                request.threshold_jobs.push_back(
                    ThresholdJob{m, request.eta_from, request.eta_to, request.steps});
            if (threshold->count("--tol") == 0) request.tol = 1e-7;
            request.format = format_flag.empty() ? "csv" : format_flag;
        } else if (scan->parsed()) {
            request.subcommand = "scan-theta";
            if (measure_flag == "both") throw UsageError("scan-theta needs --measure ci or rci");
            request.format = format_flag.empty() ? "csv" : format_flag;
        } else if (verify_cmd->parsed()) {
            request.subcommand = "verify";
            request.format = format_flag.empty() ? "text" : format_flag;
            for (const auto& name : request.suites) {
                if (name == "all") continue;
                const auto& known = verify::suite_names();
                if (std::find(known.begin(), known.end(), name) == known.end())
                    throw UsageError("unknown verify suite: " + name);
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        return run_request(request, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace revcap::cli
