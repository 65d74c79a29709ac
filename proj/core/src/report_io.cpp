#include "streamlens/report_io.hpp"

#include <charconv>
#include <cstdio>

namespace streamlens {

namespace {

std::string num(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

const char* color_for(const std::string& name) {
    if (name == "ensemble") return "#1f77b4";
    if (name == "forest") return "#2ca02c";
    if (name == "svm") return "#d62728";
    return "#9467bd";
}

}  // namespace

std::string curve_to_csv(const PrCurve& curve) {
    std::string out = "threshold,recall,precision\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out += num(curve.thresholds[i]) + "," + num(curve.recalls[i]) + "," + num(curve.precisions[i]) + "\n";
    }
    return out;
}

std::string trials_to_csv(const std::vector<std::pair<std::string, TrialResult>>& rows, int n_splits) {
    std::string out = "detector,trial,params";
    for (int s = 0; s < n_splits; ++s) out += ",split" + std::to_string(s);
    out += ",mean\n";
    for (const auto& [detector, trial] : rows) {
        out += detector + "," + std::to_string(trial.trial) + "," + params_to_string(trial.params);
        for (int s = 0; s < n_splits; ++s) {
            out += ",";
            if (s < static_cast<int>(trial.split_scores.size())) {
                out += num(trial.split_scores[static_cast<std::size_t>(s)]);
            }
        }
        out += "," + num(trial.mean_score) + "\n";
    }
    return out;
}

std::string summary_to_csv(const std::vector<NamedReport>& reports) {
    std::string out = "model,f1,pr_auc,ap,baseline,n_pos,n_total\n";
    for (const auto& entry : reports) {
        const auto& r = entry.report;
        out += entry.name + "," + num(r.f1) + ",";
        out += entry.has_curve ? num(r.pr_auc) : "";
        out += ",";
        out += entry.has_curve ? num(r.ap) : "";
        out += "," + num(r.baseline) + "," + std::to_string(r.n_pos) + "," + std::to_string(r.n_total) + "\n";
    }
    return out;
}

std::string summary_to_text(const std::vector<NamedReport>& reports) {
    std::string out;
    for (const auto& entry : reports) {
        const auto& r = entry.report;
        out += entry.name + ": F1 " + fixed3(r.f1);
        if (entry.has_curve) {
            out += ", AUC " + fixed3(r.pr_auc) + ", AP " + fixed3(r.ap);
        } else {
            out += ", AUC n/a, AP n/a (no positive labels)";
        }
        out += "\n";
    }
    if (!reports.empty()) {
        const auto& r = reports.front().report;
        out += "baseline (prevalence): " + fixed3(r.baseline) + "  [" + std::to_string(r.n_pos) + "/" +
               std::to_string(r.n_total) + " positive]\n";
    }
    return out;
}

std::string pr_curves_svg(const std::vector<NamedReport>& reports, double baseline) {
    constexpr double width = 640.0;
    constexpr double height = 480.0;
    constexpr double left = 70.0;
    constexpr double right = 620.0;
    constexpr double top = 40.0;
    constexpr double bottom = 420.0;
    const auto px = [&](double recall) { return left + recall * (right - left); };
    const auto py = [&](double precision) { return bottom - precision * (bottom - top); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num((left + right) / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">Precision-Recall curves</text>\n";

    // axes with 0.2 ticks
    for (int tick = 0; tick <= 5; ++tick) {
        const double f = tick / 5.0;
        svg += "<line x1=\"" + num(px(f)) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(px(f)) +
               "\" y2=\"" + num(top) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(f)) + "\" x2=\"" + num(right) +
               "\" y2=\"" + num(py(f)) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(px(f)) + "\" y=\"" + num(bottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + fixed3(f).substr(0, 3) +
               "</text>\n";
        svg += "<text x=\"" + num(left - 10) + "\" y=\"" + num(py(f) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + fixed3(f).substr(0, 3) +
               "</text>\n";
    }
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(right) + "\" y2=\"" +
           num(bottom) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(left) + "\" y2=\"" +
           num(top) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(bottom + 40) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">Recall</text>\n";
    svg += "<text x=\"20\" y=\"" + num((top + bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 20 " +
           num((top + bottom) / 2) + ")\">Precision</text>\n";

    // prevalence baseline
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(baseline)) + "\" x2=\"" + num(right) +
           "\" y2=\"" + num(py(baseline)) +
           "\" stroke=\"#7f7f7f\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";

    for (const auto& entry : reports) {
        if (!entry.has_curve || entry.report.curve.size() == 0) continue;
        const auto& curve = entry.report.curve;
        std::string points = num(px(0.0)) + "," + num(py(curve.precisions.front()));
        for (std::size_t i = 0; i < curve.size(); ++i) {
            points += " " + num(px(curve.recalls[i])) + "," + num(py(curve.precisions[i]));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color_for(entry.name)) +
               "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    }

    // legend, bottom-left like the sparse corner of a PR plot
    double legend_y = bottom - 16.0 - 18.0 * static_cast<double>(reports.size());
    for (const auto& entry : reports) {
        svg += "<line x1=\"" + num(left + 12) + "\" y1=\"" + num(legend_y - 4) + "\" x2=\"" +
               num(left + 36) + "\" y2=\"" + num(legend_y - 4) + "\" stroke=\"" + color_for(entry.name) +
               "\" stroke-width=\"2\"/>\n";
        std::string label = entry.name;
        if (entry.has_curve) {
            label += " (F1=" + fixed3(entry.report.f1) + ", AUC=" + fixed3(entry.report.pr_auc) +
                     ", AP=" + fixed3(entry.report.ap) + ")";
        } else {
            label += " (F1=" + fixed3(entry.report.f1) + ")";
        }
        svg += "<text x=\"" + num(left + 42) + "\" y=\"" + num(legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + label + "</text>\n";
        legend_y += 18.0;
    }
    svg += "<line x1=\"" + num(left + 12) + "\" y1=\"" + num(legend_y - 4) + "\" x2=\"" + num(left + 36) +
           "\" y2=\"" + num(legend_y - 4) +
           "\" stroke=\"#7f7f7f\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    svg += "<text x=\"" + num(left + 42) + "\" y=\"" + num(legend_y) +
           "\" font-family=\"sans-serif\" font-size=\"12\">baseline p=" + fixed3(baseline) + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace streamlens
