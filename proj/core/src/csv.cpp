#include "rcons/csv.hpp"

#include <cstdio>

#include "rcons/errors.hpp"

namespace rcons {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw ConfigError("cannot open output file: " + path);
    file_ = f;
    std::string line;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) line += ',';
        line += header[i];
    }
    line += '\n';
    std::fwrite(line.data(), 1, line.size(), f);
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(static_cast<std::FILE*>(file_));
}

std::string format_csv_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_csv_value(values[i]);
    }
    line += '\n';
    if (std::fwrite(line.data(), 1, line.size(), static_cast<std::FILE*>(file_)) != line.size())
        throw ConfigError("write failure on " + path_);
}

void write_moment_series_csv(const std::string& path, const MomentSeries& series) {
    const int d = series.mean.empty() ? 0 : series.mean[0].dim;
    std::vector<std::string> header{"t"};
    for (int k = 1; k <= d; ++k) header.push_back("mean_" + std::to_string(k));
    for (int k = 1; k <= d; ++k) header.push_back("band_lo_" + std::to_string(k));
    for (int k = 1; k <= d; ++k) header.push_back("band_hi_" + std::to_string(k));
    CsvWriter out(path, header);
    std::vector<double> row;
    for (std::size_t t = 0; t < series.times.size(); ++t) {
        row.clear();
        row.push_back(series.times[t]);
        for (int k = 0; k < d; ++k) row.push_back(series.agent_mean(static_cast<int>(t), k));
        for (int k = 0; k < d; ++k) row.push_back(series.band_low[t][k]);
        for (int k = 0; k < d; ++k) row.push_back(series.band_high[t][k]);
        out.row(row);
    }
}

void write_density_csv(const std::string& path, const DensityMoments& density) {
    CsvWriter out(path, {"t", "bin_center", "mean_density", "std_density"});
    const std::size_t bins = density.edges.size() - 1;
    for (std::size_t t = 0; t < density.times.size(); ++t)
        for (std::size_t b = 0; b < bins; ++b)
            out.row({density.times[t], 0.5 * (density.edges[b] + density.edges[b + 1]),
                     density.mean_density[t][b], density.std_density[t][b]});
}

void write_agent_means_csv(const std::string& path, const MomentSeries& series) {
    const int d = series.mean.empty() ? 0 : series.mean[0].dim;
    std::vector<std::string> header{"t", "agent"};
    for (int k = 1; k <= d; ++k) header.push_back("mean_" + std::to_string(k));
    CsvWriter out(path, header);
    std::vector<double> row;
    for (std::size_t t = 0; t < series.times.size(); ++t) {
        for (int i = 0; i < series.mean[t].n_agents; ++i) {
            row.clear();
            row.push_back(series.times[t]);
            row.push_back(static_cast<double>(i));
            for (int k = 0; k < d; ++k) row.push_back(series.mean[t].at(i, k));
            out.row(row);
        }
    }
}

} // namespace rcons
