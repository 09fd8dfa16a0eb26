#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "afg/afg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int report_failure(const char* what, int code) {
    std::fprintf(stderr, "error: %s: %s\n", what, afg_last_error());
    return code;
}

int status_exit(afg_status status) { return status == AFG_ERR_IO ? kExitIo : kExitUsage; }

struct ConfigHandle {
    afg_config* ptr = nullptr;
    ~ConfigHandle() { afg_config_free(ptr); }
};

struct ReportHandle {
    afg_report* ptr = nullptr;
    ~ReportHandle() { afg_report_free(ptr); }
};

struct EnvHandle {
    afg_env* ptr = nullptr;
    ~EnvHandle() { afg_env_free(ptr); }
};

struct StringHandle {
    char* ptr = nullptr;
    ~StringHandle() { afg_string_free(ptr); }
};

struct RunOptions {
    std::string config_path;
    std::string out_path = "report.csv";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> target_result;
    std::optional<int> jobs;
    std::string backend;
};

int cmd_run(const RunOptions& opt) {
    ConfigHandle config;
    if (afg_config_load(opt.config_path.c_str(), &config.ptr) != AFG_OK)
        return report_failure("loading config", kExitUsage);

    const auto override_field = [&](const char* key, const std::string& value) {
        return afg_config_set(config.ptr, key, value.c_str()) == AFG_OK;
    };
    if (opt.seed && !override_field("master_seed", std::to_string(*opt.seed)))
        return report_failure("setting master_seed", kExitUsage);
    if (opt.trials && !override_field("num_trials", std::to_string(*opt.trials)))
        return report_failure("setting num_trials", kExitUsage);
    if (opt.target_result &&
        !override_field("target_result", std::to_string(*opt.target_result)))
        return report_failure("setting target_result", kExitUsage);
    if (opt.jobs && !override_field("jobs", std::to_string(*opt.jobs)))
        return report_failure("setting jobs", kExitUsage);
    if (!opt.backend.empty() && !override_field("backend", opt.backend))
        return report_failure("setting backend", kExitUsage);

    ReportHandle report;
    if (const auto status = afg_run_experiment(config.ptr, &report.ptr); status != AFG_OK)
        return report_failure("running experiment", status_exit(status));
    if (const auto status = afg_report_write_csv(report.ptr, opt.out_path.c_str());
        status != AFG_OK)
        return report_failure("writing report", status_exit(status));

    StringHandle summary;
    if (afg_report_summary(report.ptr, &summary.ptr) != AFG_OK)
        return report_failure("rendering summary", kExitUsage);
    std::printf("%s", summary.ptr);
    std::printf("report: %s\n", opt.out_path.c_str());
    return kExitOk;
}

bool load_column(const std::string& path, const std::string& column,
                 std::vector<double>& out, std::string& error) {
    std::ifstream in(path);
    if (!in) {
        error = "cannot read " + path;
        return false;
    }
    std::string header;
    if (!std::getline(in, header)) {
        error = path + " is empty";
        return false;
    }
    int column_index = -1;
    {
        std::istringstream fields(header);
        std::string name;
        for (int i = 0; std::getline(fields, name, ','); ++i)
            if (name == column)
                column_index = i;
    }
    if (column_index == -1) {
        try {
            column_index = std::stoi(column);
        } catch (const std::exception&) {
            error = "no column named " + column + " in " + path;
            return false;
        }
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        std::string cell;
        std::string wanted;
        for (int i = 0; std::getline(fields, cell, ','); ++i)
            if (i == column_index)
                wanted = cell;
        if (wanted.empty()) {
            error = "row without column " + column + " in " + path;
            return false;
        }
        try {
            std::size_t used = 0;
            out.push_back(std::stod(wanted, &used));
            if (used != wanted.size())
                throw std::invalid_argument(wanted);
        } catch (const std::exception&) {
            error = "non-numeric value '" + wanted + "' in " + path;
            return false;
        }
    }
    if (out.size() < 2) {
        error = path + " has fewer than two data rows";
        return false;
    }
    return true;
}

int cmd_ttest(const std::string& csv_a, const std::string& csv_b,
              const std::string& column) {
    std::vector<double> a, b;
    std::string error;
    if (!load_column(csv_a, column, a, error) || !load_column(csv_b, column, b, error)) {
        std::fprintf(stderr, "error: %s\n", error.c_str());
        return kExitUsage;
    }
    double t = 0.0, df = 0.0, p = 0.0;
    if (const auto status = afg_welch_t(a.data(), a.size(), b.data(), b.size(), &t, &df, &p);
        status != AFG_OK)
        return report_failure("welch test", status_exit(status));
    std::printf("t=%.6g df=%.6g p=%.6g\n", t, df, p);
    return kExitOk;
}

struct DemoOptions {
    std::string config_path;
    int steps = 5;
    std::uint64_t seed = 1;
    std::optional<int> enable;
    std::optional<int> disable;
};

int cmd_demo(const DemoOptions& opt) {
    ConfigHandle config;
    if (afg_config_load(opt.config_path.c_str(), &config.ptr) != AFG_OK)
        return report_failure("loading config", kExitUsage);
    EnvHandle env;
    if (afg_env_new(config.ptr, opt.seed, &env.ptr) != AFG_OK)
        return report_failure("creating environment", kExitUsage);

    const auto print_state = [&] {
        StringHandle line;
        if (afg_env_state(env.ptr, &line.ptr) != AFG_OK)
            return false;
        std::printf("%s\n", line.ptr);
        return true;
    };
    if (!print_state())
        return report_failure("reading state", kExitUsage);

    for (int step = 1; step <= opt.steps; ++step) {
        afg_status status;
        if (step == 1 && (opt.enable || opt.disable))
            status = opt.enable ? afg_env_apply(env.ptr, *opt.enable, 1)
                                : afg_env_apply(env.ptr, *opt.disable, 0);
        else
            status = afg_env_drift(env.ptr);
        if (status != AFG_OK)
            return report_failure("stepping environment", kExitUsage);
        if (!print_state())
            return report_failure("reading state", kExitUsage);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"difference-driven feedback acquisition experiments"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "run the active-vs-observer comparison");
    run->add_option("--config", run_opt.config_path, "experiment config file")->required();
    run->add_option("--out", run_opt.out_path, "CSV report path");
    run->add_option("--seed", run_opt.seed, "master seed override");
    run->add_option("--trials", run_opt.trials, "trial count override");
    run->add_option("--target-result", run_opt.target_result, "target result override");
    run->add_option("--jobs", run_opt.jobs, "concurrent trials (0 = all cores)");
    run->add_option("--backend", run_opt.backend, "oracle or remote");

    std::string csv_a, csv_b, column = "queries";
    auto* ttest = app.add_subcommand("ttest", "Welch's t-test between two CSV columns");
    ttest->add_option("csv_a", csv_a, "first CSV file")->required();
    ttest->add_option("csv_b", csv_b, "second CSV file")->required();
    ttest->add_option("--column", column, "column name or zero-based index");

    DemoOptions demo_opt;
    auto* demo = app.add_subcommand("demo", "print stepped environment states");
    demo->add_option("--config", demo_opt.config_path, "experiment config file")->required();
    demo->add_option("--steps", demo_opt.steps, "steps to run")
        ->check(CLI::NonNegativeNumber);
    demo->add_option("--seed", demo_opt.seed, "environment seed");
    auto* enable_opt = demo->add_option("--enable", demo_opt.enable,
                                        "enable this factor at step 1 instead of drifting");
    demo->add_option("--disable", demo_opt.disable,
                     "disable this factor at step 1 instead of drifting")
        ->excludes(enable_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed())
        return cmd_run(run_opt);
    if (ttest->parsed())
        return cmd_ttest(csv_a, csv_b, column);
    return cmd_demo(demo_opt);
}
