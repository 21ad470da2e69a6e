#include "claimgate/grid_report.hpp"

#include <fmt/format.h>

namespace claimgate {

namespace {

constexpr std::array<Preset, 3> kEntryOrder{Preset::q1, Preset::median, Preset::q3};

double congruence_of(const GridCongruence& c, Preset p) {
    switch (p) {
        case Preset::q1: return c.q1;
        case Preset::median: return c.median;
        case Preset::q3: return c.q3;
    }
    return c.median;
}

std::string percent(double p) { return fmt::format("{:.1f}%", 100.0 * p); }

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

const char* fill_of(Band b) {
    switch (b) {
        case Band::green: return "#93c47d";
        case Band::orange: return "#f6b26b";
        case Band::red: return "#e06666";
    }
    return "#e06666";
}

}  // namespace

std::string grid_csv(const PlanningGrid& grid, const RunConfig& config) {
    std::string out;
    for (const auto& line : config.comment_lines()) out += line + "\n";
    out += fmt::format("# task: {}\n# base_performance: {}\n", to_string(grid.task),
                       grid.base_performance);
    out += "n,delta,preset,congruence,probability,std_err,band,status\n";
    for (const auto& cell : grid.cells) {
        for (std::size_t i = 0; i < kEntryOrder.size(); ++i) {
            const Preset p = kEntryOrder[i];
            const auto& est = cell.estimates[i];
            if (cell.infeasible || !est) {
                out += fmt::format("{},{},{},{},,,,infeasible\n", cell.n, cell.delta, to_string(p),
                                   congruence_of(grid.congruence, p));
                continue;
            }
            std::string status = "ok";
            if (est->congruence_used.clamped) status = "clamped";
            if (est->degenerate) status = "degenerate";
            out += fmt::format("{},{},{},{},{},{},{},{}\n", cell.n, cell.delta, to_string(p),
                               est->congruence_used.value, est->probability, est->std_err,
                               to_string(band_of(est->probability)), status);
        }
    }
    return out;
}

std::string grid_svg(const PlanningGrid& grid, const RunConfig& config) {
    constexpr int cell_w = 110;
    constexpr int cell_h = 48;
    constexpr int left = 90;
    constexpr int top = 40;
    constexpr int bottom = 50;
    const int cols = static_cast<int>(grid.n_values.size());
    const int rows = static_cast<int>(grid.delta_values.size());
    const int width = left + cols * cell_w + 20;
    const int height = top + rows * cell_h + bottom;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} "
        "{}\" font-family=\"sans-serif\">\n",
        width, height, width, height);
    out += "<desc>\n";
    for (const auto& line : config.comment_lines()) out += xml_escape(line) + "\n";
    out += "</desc>\n";
    out += "<style>\n"
           ".band-red { fill: #e06666; }\n"
           ".band-orange { fill: #f6b26b; }\n"
           ".band-green { fill: #93c47d; }\n"
           ".infeasible { fill: #cccccc; }\n"
           "rect { stroke: #ffffff; stroke-width: 2; }\n"
           "text { text-anchor: middle; }\n"
           "</style>\n";
    out += fmt::format(
        "<text x=\"{}\" y=\"22\" font-size=\"14\">Probability of false claims ({}, base {})</text>\n",
        width / 2, to_string(grid.task), grid.base_performance);

    // Largest delta on the top row.
    for (int r = 0; r < rows; ++r) {
        const std::size_t di = static_cast<std::size_t>(rows - 1 - r);
        const int y = top + r * cell_h;
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n", left / 2,
                           y + cell_h / 2 + 4, grid.delta_values[di]);
        for (int c = 0; c < cols; ++c) {
            const auto& cell = grid.cell(di, static_cast<std::size_t>(c));
            const int x = left + c * cell_w;
            const int cx = x + cell_w / 2;
            if (cell.infeasible) {
                out += fmt::format(
                    "<rect class=\"infeasible\" data-n=\"{}\" data-delta=\"{}\" x=\"{}\" y=\"{}\" "
                    "width=\"{}\" height=\"{}\" fill=\"#cccccc\"/>\n",
                    cell.n, cell.delta, x, y, cell_w, cell_h);
                out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">n/a</text>\n", cx,
                                   y + cell_h / 2 + 4);
                continue;
            }
            out += fmt::format(
                "<rect class=\"band-{}\" data-n=\"{}\" data-delta=\"{}\" x=\"{}\" y=\"{}\" "
                "width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                to_string(cell.band), cell.n, cell.delta, x, y, cell_w, cell_h, fill_of(cell.band));
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"13\">{}</text>\n", cx, y + 20,
                               percent(cell.estimates[1]->probability));
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\">({}, {})</text>\n", cx,
                               y + 37, percent(cell.estimates[0]->probability),
                               percent(cell.estimates[2]->probability));
        }
    }
    const int axis_y = top + rows * cell_h;
    for (int c = 0; c < cols; ++c) {
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
                           left + c * cell_w + cell_w / 2, axis_y + 18,
                           grid.n_values[static_cast<std::size_t>(c)]);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">test set size</text>\n",
                       left + cols * cell_w / 2, axis_y + 40);
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">delta</text>\n", left / 2,
                       top - 6);
    out += "</svg>\n";
    return out;
}

nlohmann::ordered_json grid_json(const PlanningGrid& grid, const RunConfig& config) {
    nlohmann::ordered_json j;
    j["run_config"] = config.to_json();
    j["task"] = to_string(grid.task);
    j["base_performance"] = grid.base_performance;
    j["congruence"] = {{"q1", grid.congruence.q1},
                       {"median", grid.congruence.median},
                       {"q3", grid.congruence.q3}};
    j["n_values"] = grid.n_values;
    j["delta_values"] = grid.delta_values;
    auto cells = nlohmann::ordered_json::array();
    for (const auto& cell : grid.cells) {
        nlohmann::ordered_json c;
        c["n"] = cell.n;
        c["delta"] = cell.delta;
        c["infeasible"] = cell.infeasible;
        if (cell.infeasible) {
            c["note"] = cell.note;
        } else {
            c["band"] = to_string(cell.band);
            for (std::size_t i = 0; i < kEntryOrder.size(); ++i) {
                const auto& est = *cell.estimates[i];
                c[std::string(to_string(kEntryOrder[i]))] = {
                    {"probability", est.probability},
                    {"std_err", est.std_err},
                    {"congruence_used", est.congruence_used.value},
                    {"clamped", est.congruence_used.clamped}};
            }
        }
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    return j;
}

}  // namespace claimgate
