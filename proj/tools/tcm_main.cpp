#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcm/harness.hpp"

namespace {

std::vector<double> parse_eps_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D tropical climate model: pseudospectral runs, sweeps and self-checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string eps_csv;

    CLI::App* cmd_run = app.add_subcommand("run", "integrate one configuration");
    cmd_run->add_option("--config", config_path, "config file")->required();

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the configuration across an epsilon list");
    cmd_sweep->add_option("--config", config_path, "config file")->required();
    cmd_sweep->add_option("--epsilons", eps_csv, "comma-separated epsilon values")->required();

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the oracle suite on the configuration");
    cmd_verify->add_option("--config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const tcm::RunResult res = tcm::run(tcm::parse_config(config_path));
            std::printf("termination: %s\n", tcm::to_string(res.verdicts.termination));
            std::printf("decay_verdict: %s (early sup %.6g, late sup %.6g)\n",
                        res.verdicts.decay_verdict ? "true" : "false",
                        res.verdicts.decay_early_sup, res.verdicts.decay_late_sup);
            std::printf("gronwall_c_fit: %.6g\n", res.verdicts.gronwall_c_fit);
            std::printf("advisory_cfl: %.6g\n", res.verdicts.advisory_cfl);
            std::printf("wrote %s, %s, %s\n", res.csv_path.c_str(), res.snapshot_path.c_str(),
                        res.manifest_path.c_str());
            return res.exit_code;
        }
        if (cmd_sweep->parsed()) {
            const tcm::SweepSummary summary =
                tcm::sweep(tcm::parse_config(config_path), parse_eps_list(eps_csv));
            for (const auto& w : summary.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
            std::printf("epsilon  log_condition_lhs  sup_etE  decay  termination\n");
            for (const auto& r : summary.rows)
                std::printf("%-8g %-18.6g %-8.6g %-6s %s%s%s\n", r.epsilon, r.log_condition_lhs,
                            r.sup_etE, r.decay_verdict ? "true" : "false", r.termination.c_str(),
                            r.error.empty() ? "" : " error: ", r.error.c_str());
            std::printf("wrote %s\n", summary.summary_csv_path.c_str());
            for (const auto& r : summary.rows)
                if (!r.error.empty()) return 1;
            return 0;
        }
        // verify
        const auto checks = tcm::verify(tcm::parse_config(config_path));
        bool all = true;
        for (const auto& c : checks) {
            std::printf("[%s] %s: measured %.3e (tolerance %.0e)\n", c.pass ? "PASS" : "FAIL",
                        c.name.c_str(), c.measured, c.tolerance);
            all = all && c.pass;
        }
        return all ? 0 : 1;
    } catch (const tcm::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
