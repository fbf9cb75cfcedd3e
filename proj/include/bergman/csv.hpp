#pragma once

#include <complex>
#include <ostream>
#include <string>

namespace bergman::csv {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_real(double x);

/// Writes "re,im".
void write_complex(std::ostream& out, std::complex<double> z);

}  // namespace bergman::csv
