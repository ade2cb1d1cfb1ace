#pragma once

#include <string>
#include <vector>

#include "rcons/meanfield.hpp"
#include "rcons/sim.hpp"

namespace rcons {

/// Plain CSV with a mandatory header, LF line endings and 12 significant
/// digits, so identical runs produce identical bytes.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    void* file_;
};

std::string format_csv_value(double v);

/// Columns: t, mean_1..mean_d, band_lo_1..band_lo_d, band_hi_1..band_hi_d.
void write_moment_series_csv(const std::string& path, const MomentSeries& series);

/// Long format: t, bin_center, mean_density, std_density.
void write_density_csv(const std::string& path, const DensityMoments& density);

/// Long format: t, agent, mean_1..mean_d.
void write_agent_means_csv(const std::string& path, const MomentSeries& series);

} // namespace rcons
