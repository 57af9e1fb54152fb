#ifndef QNETLIM_FIGURES_H
#define QNETLIM_FIGURES_H

#include <iosfwd>
#include <string>
#include <vector>

namespace qnetlim {

struct FigureInfo {
    std::string id;
    std::string title;
};

std::vector<FigureInfo> figure_list();

// Writes the CSV series for a figure: '#' parameter comments, a header row,
// then one row per x value. Throws std::invalid_argument for unknown ids.
void write_figure(const std::string &id, std::ostream &out);

}  // namespace qnetlim

#endif
