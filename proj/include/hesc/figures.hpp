#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hesc {

// Deterministic CSV data sets behind the library's reference plots.  Output
// is byte-stable: fixed grids, fixed row order, every double printed with
// "%.16e".
struct FigureRequest {
    std::string id;
    double alpha = 0.045;
    double m = 0.093;
    double theta = 1.25;  // ignored by figures that sweep theta themselves
    double L = 0.1;
};

// Known figure ids, in registry order.
const std::vector<std::string>& figure_ids();

// Writes the CSV for the requested figure.  Throws DomainError for an
// unknown id.
void write_figure_csv(std::ostream& os, const FigureRequest& req);

}  // namespace hesc
