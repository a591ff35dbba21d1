#ifndef FOCKOPA_SVG_PLOT_HPP
#define FOCKOPA_SVG_PLOT_HPP

#include <string>

#include "fockopa/opa.hpp"

namespace fockopa {

/// Static log-log plot of a decay table with the fitted slope annotated.
/// Base-10 decade ticks on both axes.
std::string decay_svg(const DecayTable& t);

/// Writes content atomically: temp file in the same directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace fockopa

#endif
