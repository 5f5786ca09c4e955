#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaywise/emit.hpp"
#include "relaywise/oracle.hpp"
#include "relaywise/scenario.hpp"

namespace {

using namespace relaywise;

constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

std::vector<Mode> parse_modes(const std::string& csv) {
    std::vector<Mode> modes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) modes.push_back(parse_mode(item));
    }
    if (modes.empty()) throw std::invalid_argument("no modes given");
    return modes;
}

struct AllocateArgs {
    std::string scenario, out, format = "json";
    double budget = -1.0;
    bool budget_set = false, db = false;
    std::string mode;
};

int run_allocate(const AllocateArgs& a) {
    Scenario sc = load_scenario(a.scenario);
    Mode mode = parse_mode(a.mode);
    std::optional<double> budget;
    if (a.budget_set) budget = a.db ? to_linear(a.budget) : a.budget;

    NetworkResult net = solve_network(sc, mode, budget);
    double shown_budget = budget ? *budget : sc.relays.front().total_power;

    std::string payload;
    if (a.format == "csv") {
        std::ostringstream os;
        write_network_csv(net, sc, mode, shown_budget, os);
        payload = os.str();
    } else if (a.format == "json") {
        payload = network_to_json(net, sc, mode, shown_budget);
    } else {
        throw ScenarioError("unknown format: " + a.format);
    }
    if (a.out.empty()) {
        std::cout << payload;
    } else {
        write_text_file(a.out, payload);
    }
    return 0;
}

struct SweepArgs {
    std::string scenario, modes, out, json_out, svg_out;
    double min = 0.0, max = 0.0;
    int points = 0;
    bool log = false, db = false;
};

int run_sweep(const SweepArgs& a) {
    Scenario sc = load_scenario(a.scenario);
    std::vector<Mode> modes = parse_modes(a.modes);
    double lo = a.db ? to_linear(a.min) : a.min;
    double hi = a.db ? to_linear(a.max) : a.max;

    SweepResult result = sweep(sc, modes, lo, hi, a.points, a.log);

    bool wrote = false;
    if (!a.out.empty()) {
        std::ostringstream os;
        write_sweep_csv(result, sc, os);
        write_text_file(a.out, os.str());
        wrote = true;
    }
    if (!a.json_out.empty()) {
        write_text_file(a.json_out, sweep_to_json(result, sc));
        wrote = true;
    }
    if (!a.svg_out.empty()) {
        std::ostringstream os;
        write_sweep_svg(result, os);
        write_text_file(a.svg_out, os.str());
        wrote = true;
    }
    if (!wrote) write_sweep_csv(result, sc, std::cout);
    return 0;
}

struct VerifyArgs {
    std::string scenario, mode;
    double budget = -1.0;
    bool budget_set = false, db = false;
    int resolution = 0;
    double perturb = 0.0;
};

int run_verify(const VerifyArgs& a) {
    Scenario sc = load_scenario(a.scenario);
    Mode mode = parse_mode(a.mode);
    std::optional<double> budget;
    if (a.budget_set) budget = a.db ? to_linear(a.budget) : a.budget;

    NetworkResult net = solve_network(sc, mode, budget);

    bool ok = true;
    for (size_t r = 0; r < sc.relays.size(); ++r) {
        RelayGroup group = sc.relays[r];
        if (budget) group.total_power = *budget;
        Allocation alloc = net.relays[r].alloc;

        if (a.perturb > 0.0) {
            // Self-test hook: move a fraction of the biggest power to another
            // user (or past the budget when alone) and re-evaluate.
            std::string big;
            double big_p = 0.0;
            for (const auto& [uid, p] : alloc.powers) {
                if (p > big_p) {
                    big_p = p;
                    big = uid;
                }
            }
            if (!big.empty()) {
                double moved = a.perturb * big_p;
                std::string other;
                for (const auto& [uid, p] : alloc.powers) {
                    if (uid != big && p > 0.0) other = uid;
                }
                alloc.powers[big] -= moved;
                if (!other.empty()) {
                    alloc.powers[other] += moved;
                } else {
                    alloc.powers[big] += 2.0 * moved;  // single user: bust the budget
                }
                finalize_allocation(group, alloc, sc.prefactor);
            }
        }

        OracleReport kkt = kkt_check(group, alloc);
        for (const auto& [uid, what] : kkt.kkt_violations) {
            std::cout << "VIOLATION relay=" << group.id << " user=" << uid << " " << what << "\n";
            ok = false;
        }

        if (group.users.size() <= 4) {
            OracleReport grid = grid_maximize(group, alloc.user_strategy, group.total_power,
                                              sc.prefactor, a.resolution);
            double gap = grid.best_sum_capacity - alloc.sum_capacity;
            std::cout << "relay=" << group.id << " mode=" << to_string(mode)
                      << " sum=" << fmt_g12(alloc.sum_capacity)
                      << " oracle=" << fmt_g12(grid.best_sum_capacity)
                      << " gap=" << fmt_g12(gap) << "\n";
            if (std::abs(gap) > 1e-4) {
                std::cout << "VIOLATION relay=" << group.id << " oracle gap exceeds 1e-4\n";
                ok = false;
            }
        } else {
            std::cout << "relay=" << group.id << " skipped grid oracle (more than 4 users)\n";
        }
    }
    std::cout << (ok ? "verify: OK" : "verify: FAILED") << "\n";
    return ok ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relay power allocation toolkit"};
    app.require_subcommand(1);

    AllocateArgs aa;
    auto* alloc_cmd = app.add_subcommand("allocate", "solve one network at a fixed budget");
    alloc_cmd->add_option("--scenario", aa.scenario, "scenario file")->required();
    alloc_cmd->add_option("--mode", aa.mode, "strategy mode")->required();
    auto* bopt = alloc_cmd->add_option("--budget", aa.budget, "relay budget override");
    alloc_cmd->add_flag("--db", aa.db, "budget given in dB");
    alloc_cmd->add_option("--out", aa.out, "output file");
    alloc_cmd->add_option("--format", aa.format, "csv or json");

    SweepArgs sa;
    auto* sweep_cmd = app.add_subcommand("sweep", "sweep relay budgets across modes");
    sweep_cmd->add_option("--scenario", sa.scenario, "scenario file")->required();
    sweep_cmd->add_option("--modes", sa.modes, "comma-separated modes")->required();
    sweep_cmd->add_option("--min", sa.min, "smallest budget")->required();
    sweep_cmd->add_option("--max", sa.max, "largest budget")->required();
    sweep_cmd->add_option("--points", sa.points, "number of budgets")->required();
    sweep_cmd->add_flag("--log", sa.log, "log-spaced budgets");
    sweep_cmd->add_flag("--db", sa.db, "budget range given in dB");
    sweep_cmd->add_option("--out", sa.out, "CSV output file");
    sweep_cmd->add_option("--json", sa.json_out, "JSON output file");
    sweep_cmd->add_option("--svg", sa.svg_out, "SVG plot file");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "check solver output against the oracles");
    verify_cmd->add_option("--scenario", va.scenario, "scenario file")->required();
    verify_cmd->add_option("--mode", va.mode, "strategy mode")->required();
    auto* vbopt = verify_cmd->add_option("--budget", va.budget, "relay budget override");
    verify_cmd->add_flag("--db", va.db, "budget given in dB");
    verify_cmd->add_option("--resolution", va.resolution, "grid oracle resolution");
    verify_cmd->add_option("--perturb", va.perturb, "perturb powers by this fraction (self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        aa.budget_set = bopt->count() > 0;
        va.budget_set = vbopt->count() > 0;
        if (alloc_cmd->parsed()) return run_allocate(aa);
        if (sweep_cmd->parsed()) return run_sweep(sa);
        if (verify_cmd->parsed()) return run_verify(va);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
