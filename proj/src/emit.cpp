#include "relaywise/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace relaywise {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string user_label(const RelaySolve& rs, const std::string& user_id, Mode mode) {
    if (mode == Mode::HybridNorss || mode == Mode::HybridExhaustive) {
        return rs.alloc.user_strategy.at(user_id) == Strategy::Ndf ? "NDF" : "CF";
    }
    return to_string(rs.alloc.classes.at(user_id));
}

ordered_json relay_to_json(const RelaySolve& rs, const Scenario& scenario, Mode mode) {
    ordered_json jr;
    jr["id"] = rs.relay_id;
    jr["water_level"] = rs.alloc.water_level;
    jr["slack"] = rs.alloc.slack;
    jr["sum_capacity_bits"] = rs.alloc.sum_capacity;
    jr["users"] = ordered_json::array();
    for (const auto& group : scenario.relays) {
        if (group.id != rs.relay_id) continue;
        for (const auto& u : group.users) {
            ordered_json ju;
            ju["id"] = u.id;
            ju["power"] = rs.alloc.powers.at(u.id);
            ju["capacity_bits"] = rs.alloc.user_capacity.at(u.id);
            ju["label"] = user_label(rs, u.id, mode);
            jr["users"].push_back(std::move(ju));
        }
    }
    return jr;
}

ordered_json network_point_json(const NetworkResult& net, const Scenario& scenario, Mode mode,
                                double budget) {
    ordered_json jp;
    jp["budget"] = budget;
    jp["mode"] = to_string(mode);
    jp["sum_capacity_bits"] = net.sum_capacity;
    jp["relays"] = ordered_json::array();
    for (const auto& rs : net.relays) {
        jp["relays"].push_back(relay_to_json(rs, scenario, mode));
    }
    return jp;
}

}  // namespace

std::string fmt_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_network_csv_rows(const NetworkResult& net, const Scenario& scenario, Mode mode,
                            double budget, std::ostream& out) {
    for (const auto& rs : net.relays) {
        for (const auto& group : scenario.relays) {
            if (group.id != rs.relay_id) continue;
            for (const auto& u : group.users) {
                out << fmt_g12(budget) << ',' << to_string(mode) << ',' << rs.relay_id << ','
                    << u.id << ',' << fmt_g12(rs.alloc.powers.at(u.id)) << ','
                    << fmt_g12(rs.alloc.user_capacity.at(u.id)) << ','
                    << user_label(rs, u.id, mode) << ',' << fmt_g12(net.sum_capacity) << '\n';
            }
        }
    }
}

static const char* kCsvHeader =
    "budget,mode,relay_id,user_id,power,user_capacity_bits,class_or_strategy,sum_capacity_bits\n";

void write_sweep_csv(const SweepResult& result, const Scenario& scenario, std::ostream& out) {
    out << kCsvHeader;
    for (size_t b = 0; b < result.budgets.size(); ++b) {
        for (size_t m = 0; m < result.modes.size(); ++m) {
            write_network_csv_rows(result.series[m][b], scenario, result.modes[m],
                                   result.budgets[b], out);
        }
    }
}

void write_network_csv(const NetworkResult& net, const Scenario& scenario, Mode mode,
                       double budget, std::ostream& out) {
    out << kCsvHeader;
    write_network_csv_rows(net, scenario, mode, budget, out);
}

std::string sweep_to_json(const SweepResult& result, const Scenario& scenario) {
    ordered_json doc;
    doc["fingerprint"] = result.fingerprint;
    doc["spacing"] = result.log_spacing ? "log" : "linear";
    doc["budgets"] = result.budgets;
    doc["series"] = ordered_json::object();
    for (size_t m = 0; m < result.modes.size(); ++m) {
        ordered_json pts = ordered_json::array();
        for (size_t b = 0; b < result.budgets.size(); ++b) {
            pts.push_back(network_point_json(result.series[m][b], scenario, result.modes[m],
                                             result.budgets[b]));
        }
        doc["series"][to_string(result.modes[m])] = std::move(pts);
    }
    return doc.dump(2) + "\n";
}

std::string network_to_json(const NetworkResult& net, const Scenario& scenario, Mode mode,
                            double budget) {
    ordered_json doc = network_point_json(net, scenario, mode, budget);
    doc["fingerprint"] = scenario.fingerprint;
    return doc.dump(2) + "\n";
}

void write_sweep_svg(const SweepResult& result, std::ostream& out) {
    const int width = 720, height = 480;
    const int ml = 70, mr = 160, mt = 30, mb = 55;
    const double x0 = ml, x1 = width - mr, y0 = height - mb, y1 = mt;

    double bmin = result.budgets.front(), bmax = result.budgets.back();
    double cmax = 1e-12;
    for (const auto& series : result.series) {
        for (const auto& net : series) cmax = std::max(cmax, net.sum_capacity);
    }

    auto xmap = [&](double b) {
        if (result.budgets.size() < 2 || bmax == bmin) return 0.5 * (x0 + x1);
        double t = result.log_spacing ? (std::log(b) - std::log(bmin)) / (std::log(bmax) - std::log(bmin))
                                      : (b - bmin) / (bmax - bmin);
        return x0 + t * (x1 - x0);
    };
    auto ymap = [&](double c) { return y0 + (c / cmax) * (y1 - y0); };

    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">relay power"
        << (result.log_spacing ? " (log scale)" : "") << "</text>\n";
    out << "<text x=\"18\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 18 "
        << (y0 + y1) / 2 << ")\">sum capacity (bits)</text>\n";
    out << "<text x=\"" << x0 << "\" y=\"" << y0 + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_g12(bmin)
        << "</text>\n";
    out << "<text x=\"" << x1 << "\" y=\"" << y0 + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_g12(bmax)
        << "</text>\n";
    out << "<text x=\"" << x0 - 8 << "\" y=\"" << y1 + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_g12(cmax)
        << "</text>\n";
    out << "<text x=\"" << x0 - 8 << "\" y=\"" << y0 + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";

    for (size_t m = 0; m < result.modes.size(); ++m) {
        const char* color = palette[m % 7];
        if (result.budgets.size() == 1) {
            out << "<circle cx=\"" << xmap(result.budgets[0]) << "\" cy=\""
                << ymap(result.series[m][0].sum_capacity) << "\" r=\"4\" fill=\"" << color
                << "\"/>\n";
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (size_t b = 0; b < result.budgets.size(); ++b) {
                out << xmap(result.budgets[b]) << ',' << ymap(result.series[m][b].sum_capacity)
                    << ' ';
            }
            out << "\"/>\n";
        }
        double ly = mt + 18.0 * (m + 1);
        out << "<line x1=\"" << x1 + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << x1 + 36
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << x1 + 42 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << to_string(result.modes[m])
            << "</text>\n";
    }
    out << "</svg>\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace relaywise
