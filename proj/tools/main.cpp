// priorq command-line front end: designs prior-probability quantizers for
// binary Gaussian hypothesis testing and reports the standard experiment
// tables (design, sweep, highrate, populations, verify) as CSV or JSON.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "priorq/design.hpp"
#include "priorq/detection.hpp"
#include "priorq/highrate.hpp"
#include "priorq/mc.hpp"
#include "priorq/populations.hpp"
#include "priorq/prior.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNotConverged = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// column-oriented output table
// ---------------------------------------------------------------------------

class Table {
public:
    using Cell = std::variant<std::monostate, double, bool, std::string>;

    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns_.size()) throw std::logic_error("table row width mismatch");
        rows_.push_back(std::move(row));
    }

    std::string to_csv() const {
        std::string out;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c) out += ',';
            out += columns_[c];
        }
        out += '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += cell_text(row[c]);
            }
            out += '\n';
        }
        return out;
    }

    std::string to_json() const {
        json obj = json::object();
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            json arr = json::array();
            for (const auto& row : rows_) {
                const Cell& cell = row[c];
                if (std::holds_alternative<std::monostate>(cell))
                    arr.push_back(nullptr);
                else if (std::holds_alternative<double>(cell))
                    arr.push_back(std::get<double>(cell));
                else if (std::holds_alternative<bool>(cell))
                    arr.push_back(std::get<bool>(cell));
                else
                    arr.push_back(std::get<std::string>(cell));
            }
            obj[columns_[c]] = std::move(arr);
        }
        return obj.dump(2) + "\n";
    }

private:
    static std::string cell_text(const Cell& cell) {
        if (std::holds_alternative<std::monostate>(cell)) return "";
        if (std::holds_alternative<double>(cell)) return fmt(std::get<double>(cell));
        if (std::holds_alternative<bool>(cell)) return std::get<bool>(cell) ? "true" : "false";
        return std::get<std::string>(cell);
    }

    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

// ---------------------------------------------------------------------------
// run configuration: defaults <- preset <- config file <- explicit flags
// ---------------------------------------------------------------------------

struct RunConfig {
    double mu = 1.0;
    double sigma = 1.0;
    double c10 = 1.0;
    double c01 = 1.0;
    std::string prior = "uniform";
    int k = 2;
    int k_lo = 1, k_hi = 8;
    bool k_range_explicit = false;
    int restarts = 10;
    double tolerance = 1e-10;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    double w = 3.0, b = 1.0;
    int k_total = 5;
    std::vector<double> ratio_grid = {0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0};
    long long n = 1000000;
};

void parse_k_range(const std::string& text, RunConfig& cfg) {
    int& lo = cfg.k_lo;
    int& hi = cfg.k_hi;
    cfg.k_range_explicit = true;
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw ConfigError("config error: field 'k_range' must look like A..B");
    try {
        lo = std::stoi(text.substr(0, pos));
        hi = std::stoi(text.substr(pos + 2));
    } catch (const std::exception&) {
        throw ConfigError("config error: field 'k_range' must look like A..B");
    }
    if (lo < 1 || hi < lo) throw ConfigError("config error: field 'k_range' needs 1 <= A <= B");
}

std::vector<double> parse_ratio_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config error: field 'ratio_grid' must be a comma list of numbers");
        }
    }
    if (grid.size() < 2) throw ConfigError("config error: field 'ratio_grid' needs >= 2 values");
    return grid;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
    if (name == "uniform-equal") {
        cfg.prior = "uniform";
        cfg.c10 = cfg.c01 = 1.0;
    } else if (name == "uniform-c4") {
        cfg.prior = "uniform";
        cfg.c10 = 1.0;
        cfg.c01 = 4.0;
    } else if (name == "beta52-equal") {
        cfg.prior = "beta:5,2";
        cfg.c10 = cfg.c01 = 1.0;
    } else {
        throw ConfigError("config error: field 'preset' must be uniform-equal, uniform-c4, or "
                          "beta52-equal");
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config error: cannot open config file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config error: config must be a flat JSON object");
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "mu") cfg.mu = value.get<double>();
            else if (key == "sigma") cfg.sigma = value.get<double>();
            else if (key == "c10") cfg.c10 = value.get<double>();
            else if (key == "c01") cfg.c01 = value.get<double>();
            else if (key == "prior") cfg.prior = value.get<std::string>();
            else if (key == "k") cfg.k = value.get<int>();
            else if (key == "k_range") parse_k_range(value.get<std::string>(), cfg);
            else if (key == "restarts") cfg.restarts = value.get<int>();
            else if (key == "tolerance") cfg.tolerance = value.get<double>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "out") cfg.out = value.get<std::string>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else if (key == "w") cfg.w = value.get<double>();
            else if (key == "b") cfg.b = value.get<double>();
            else if (key == "k_total") cfg.k_total = value.get<int>();
            else if (key == "ratio_grid") cfg.ratio_grid = value.get<std::vector<double>>();
            else if (key == "n") cfg.n = value.get<long long>();
            else throw ConfigError("config error: unknown field '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config error: field '" + key + "' has the wrong type");
        }
    }
}

struct ModelBundle {
    priorq::GaussianMeasurementModel model;
    priorq::CostPair costs;
    priorq::Prior prior;
    priorq::DesignOptions opts;
};

ModelBundle make_bundle(const RunConfig& cfg) {
    try {
        priorq::GaussianMeasurementModel model(cfg.mu, cfg.sigma);
        priorq::CostPair costs(cfg.c10, cfg.c01);
        priorq::Prior prior = priorq::parse_prior(cfg.prior);
        priorq::DesignOptions opts;
        opts.tol = cfg.tolerance;
        opts.restarts = cfg.restarts;
        opts.seed = cfg.seed;
        return {model, costs, prior, opts};
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
}

void emit(const RunConfig& cfg, const Table& table) {
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("config error: field 'format' must be csv or json");
    const std::string text = cfg.format == "csv" ? table.to_csv() : table.to_json();
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw ConfigError("config error: cannot open output path " + cfg.out);
    out << text;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_design(const RunConfig& cfg, const std::string& save_quantizer) {
    if (cfg.k < 1) throw ConfigError("config error: field 'k' must be >= 1");
    const ModelBundle mb = make_bundle(cfg);
    const priorq::DesignResult res =
        priorq::design_lloyd_max(mb.model, mb.costs, mb.prior, cfg.k, mb.opts);
    const priorq::Quantizer mae_q = priorq::design_mae(mb.prior, cfg.k);
    const double mae_mbre = priorq::mbre(mb.model, mb.costs, mb.prior, mae_q);

    Table table({"k", "b_lower", "b_upper", "rep", "mbre", "mbre_mae", "iterations", "converged"});
    for (int i = 0; i < cfg.k; ++i) {
        table.add_row({static_cast<double>(i + 1), res.quantizer.boundaries[i],
                       res.quantizer.boundaries[i + 1], res.quantizer.reps[i], res.report.mbre,
                       mae_mbre, static_cast<double>(res.report.iterations),
                       res.report.converged});
    }
    emit(cfg, table);
    if (!save_quantizer.empty()) {
        std::ofstream out(save_quantizer, std::ios::binary);
        if (!out) throw ConfigError("config error: cannot open output path " + save_quantizer);
        out << priorq::serialize(res.quantizer);
    }
    if (!res.report.converged) {
        std::cerr << "warning: design did not converge within the iteration budget\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
    const ModelBundle mb = make_bundle(cfg);
    Table table({"k", "mbre_opt", "mbre_mae"});
    bool all_converged = true;
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) {
        const priorq::DesignResult res =
            priorq::design_lloyd_max(mb.model, mb.costs, mb.prior, k, mb.opts);
        const double mae_mbre =
            priorq::mbre(mb.model, mb.costs, mb.prior, priorq::design_mae(mb.prior, k));
        table.add_row({static_cast<double>(k), res.report.mbre, mae_mbre});
        all_converged = all_converged && res.report.converged;
    }
    emit(cfg, table);
    if (!all_converged) {
        std::cerr << "warning: at least one design did not converge\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_highrate(const RunConfig& cfg) {
    const ModelBundle mb = make_bundle(cfg);
    const priorq::PointDensity lambda(mb.model, mb.costs, mb.prior);
    const double norm_one_third = std::pow(lambda.normalizer(), 3.0);
    const double dl_mae_unit = priorq::dl_for_density(
        mb.model, mb.costs, mb.prior, 1,
        [&](double p) { return priorq::mae_point_density(mb.prior, p); });
    const double gap = priorq::rate_gap(mb.model, mb.costs, mb.prior);

    constexpr double edge = 1e-9;
    const double trimmed_mass =
        priorq::cdf(mb.prior, edge) + 1.0 - priorq::cdf(mb.prior, 1.0 - edge);
    if (trimmed_mass > 1e-6)
        std::cerr << "warning: " << fmt(trimmed_mass)
                  << " prior mass lies outside the trimmed integration domain\n";

    Table table({"p0", "lambda_mbre", "lambda_mae", "k", "rate_bits", "dl_mbre", "dl_mae",
                 "rate_gap_bits"});
    constexpr int kGridPoints = 512;
    for (int i = 0; i < kGridPoints; ++i) {
        const double p = edge + (1.0 - 2.0 * edge) * i / (kGridPoints - 1.0);
        table.add_row({p, lambda(p), priorq::mae_point_density(mb.prior, p), {}, {}, {}, {}, {}});
    }
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) {
        table.add_row({{}, {}, {}, static_cast<double>(k), std::log2(static_cast<double>(k)),
                       norm_one_third / (12.0 * k * k), dl_mae_unit / (k * k), gap});
    }
    emit(cfg, table);
    return kExitOk;
}

int cmd_populations(const RunConfig& cfg) {
    const ModelBundle mb = make_bundle(cfg);
    std::optional<priorq::PopulationScenario> scenario;
    try {
        scenario.emplace(cfg.w, cfg.b, cfg.k_total);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    const priorq::AllocationResult alloc =
        priorq::allocate(mb.model, mb.costs, mb.prior, *scenario, mb.opts);

    std::optional<double> crossing;
    try {
        crossing = priorq::dividing_line_scan(mb.model, mb.prior, alloc.k_w, alloc.k_b,
                                              cfg.ratio_grid, mb.opts);
    } catch (const std::runtime_error& e) {
        std::cerr << "note: " << e.what() << "\n";
    }

    Table table({"k_w", "k_b", "d2", "chosen", "ratio", "delta", "m"});
    for (int k_w = 1; k_w < cfg.k_total; ++k_w) {
        table.add_row({static_cast<double>(k_w), static_cast<double>(cfg.k_total - k_w),
                       alloc.per_allocation_d2[k_w - 1], k_w == alloc.k_w, {}, {}, {}});
    }
    for (double r : cfg.ratio_grid) {
        const double delta = priorq::discrimination_delta(mb.model, priorq::CostPair(1.0, r),
                                                          mb.prior, alloc.k_w, alloc.k_b, mb.opts);
        Table::Cell m_cell = crossing ? Table::Cell(*crossing) : Table::Cell(std::monostate{});
        table.add_row({{}, {}, {}, {}, r, delta, m_cell});
    }
    emit(cfg, table);
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& quantizer_path, double tamper) {
    if (cfg.n < 1) throw ConfigError("config error: field 'n' must be >= 1");
    const ModelBundle mb = make_bundle(cfg);
    priorq::Quantizer q;
    if (!quantizer_path.empty()) {
        std::ifstream in(quantizer_path);
        if (!in) throw ConfigError("config error: cannot open quantizer file " + quantizer_path);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            q = priorq::parse_quantizer(buf.str());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config error: ") + e.what());
        }
    } else {
        if (cfg.k < 1) throw ConfigError("config error: field 'k' must be >= 1");
        q = priorq::design_lloyd_max(mb.model, mb.costs, mb.prior, cfg.k, mb.opts).quantizer;
    }

    const std::size_t n = static_cast<std::size_t>(cfg.n);
    const auto ep = priorq::error_probabilities(mb.model, mb.costs, 0.5);
    const auto sim_ep = priorq::simulate_error_probabilities(mb.model, mb.costs, 0.5, n, cfg.seed);
    const double analytic_mbre = priorq::mbre(mb.model, mb.costs, mb.prior, q);
    const auto sim_mbre = priorq::simulate_mbre(mb.model, mb.costs, mb.prior, q, n, cfg.seed + 1);
    const double analytic_rate = priorq::decision_rate(mb.model, mb.costs, mb.prior, q);
    const auto sim_rate =
        priorq::simulate_decision_rate(mb.model, mb.costs, mb.prior, q, n, cfg.seed + 2);

    Table table({"quantity", "analytic", "empirical", "std_error", "pass"});
    bool all_pass = true;
    const auto add = [&](const std::string& name, double analytic,
                         const priorq::SimulationResult& sim) {
        const double shifted = analytic + tamper;
        const bool pass = std::abs(shifted - sim.estimate) <= 4.0 * sim.std_error;
        all_pass = all_pass && pass;
        table.add_row({name, shifted, sim.estimate, sim.std_error, pass});
    };
    add("p_false_alarm", ep.false_alarm, sim_ep.first);
    add("p_miss", ep.miss, sim_ep.second);
    add("mbre", analytic_mbre, sim_mbre);
    add("decision_rate", analytic_rate, sim_rate);
    emit(cfg, table);
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal quantization of prior probabilities for binary hypothesis testing"};
    app.require_subcommand(1);

    struct Flags {
        std::string config_path, preset;
        RunConfig raw;
        std::string k_range_text, ratio_grid_text;
        std::string save_quantizer, quantizer_path;
        double tamper = 0.0;
    };
    auto flags = std::make_shared<Flags>();

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", flags->config_path, "flat JSON config file");
        cmd->add_option("--preset", flags->preset,
                        "experiment preset: uniform-equal, uniform-c4, beta52-equal");
        cmd->add_option("--mu", flags->raw.mu, "signal separation");
        cmd->add_option("--sigma", flags->raw.sigma, "noise standard deviation");
        cmd->add_option("--c10", flags->raw.c10, "false-alarm cost");
        cmd->add_option("--c01", flags->raw.c01, "miss cost");
        cmd->add_option("--prior", flags->raw.prior, "prior: uniform or beta:ALPHA,BETA");
        cmd->add_option("--k", flags->raw.k, "quantizer levels");
        cmd->add_option("--k-range", flags->k_range_text, "level range A..B");
        cmd->add_option("--w", flags->raw.w, "majority interaction count");
        cmd->add_option("--b", flags->raw.b, "minority interaction count");
        cmd->add_option("--k-total", flags->raw.k_total, "total representation points");
        cmd->add_option("--seed", flags->raw.seed, "random seed");
        cmd->add_option("--out", flags->raw.out, "output path (default stdout)");
        cmd->add_option("--format", flags->raw.format, "output format: csv or json");
        cmd->add_option("--restarts", flags->raw.restarts, "extra jittered design starts");
        cmd->add_option("--tolerance", flags->raw.tolerance, "design convergence tolerance");
        cmd->add_option("--n", flags->raw.n, "Monte Carlo sample count");
        cmd->add_option("--ratio-grid", flags->ratio_grid_text,
                        "comma-separated c01/c10 ratios for the dividing-line scan");
    };

    CLI::App* design = app.add_subcommand("design", "design one quantizer and report it");
    add_common(design);
    design->add_option("--save-quantizer", flags->save_quantizer,
                       "also write the quantizer record to this path");

    CLI::App* sweep = app.add_subcommand("sweep", "MBRE versus K over a level range");
    add_common(sweep);

    CLI::App* highrate =
        app.add_subcommand("highrate", "point densities, distortion-rate table, rate gap");
    add_common(highrate);

    CLI::App* populations =
        app.add_subcommand("populations", "two-population allocation and discrimination scan");
    add_common(populations);

    CLI::App* verify = app.add_subcommand("verify", "Monte Carlo cross-checks of the analytics");
    add_common(verify);
    verify->add_option("--quantizer", flags->quantizer_path, "load quantizer record from path");
    verify->add_option("--tamper-analytic", flags->tamper, "test hook: offset analytic values")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        RunConfig cfg;  // defaults
        if (cmd->count("--preset")) apply_preset(cfg, flags->preset);
        if (cmd->count("--config")) apply_config_file(cfg, flags->config_path);
        const auto take = [&](const char* name, auto member) {
            if (cmd->count(name)) cfg.*member = flags->raw.*member;
        };
        take("--mu", &RunConfig::mu);
        take("--sigma", &RunConfig::sigma);
        take("--c10", &RunConfig::c10);
        take("--c01", &RunConfig::c01);
        take("--prior", &RunConfig::prior);
        take("--k", &RunConfig::k);
        take("--w", &RunConfig::w);
        take("--b", &RunConfig::b);
        take("--k-total", &RunConfig::k_total);
        take("--seed", &RunConfig::seed);
        take("--out", &RunConfig::out);
        take("--format", &RunConfig::format);
        take("--restarts", &RunConfig::restarts);
        take("--tolerance", &RunConfig::tolerance);
        take("--n", &RunConfig::n);
        if (cmd->count("--k-range")) parse_k_range(flags->k_range_text, cfg);
        if (cmd->count("--ratio-grid")) cfg.ratio_grid = parse_ratio_grid(flags->ratio_grid_text);

        if (cmd == design) return cmd_design(cfg, flags->save_quantizer);
        if (cmd == sweep) return cmd_sweep(cfg);
        if (cmd == highrate) {
            if (!cfg.k_range_explicit) cfg.k_hi = 64;
            return cmd_highrate(cfg);
        }
        if (cmd == populations) return cmd_populations(cfg);
        return cmd_verify(cfg, flags->quantizer_path, flags->tamper);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
