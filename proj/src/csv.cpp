#include "bergman/csv.hpp"

#include <cstdio>

namespace bergman::csv {

std::string format_real(double x) {
    char buf[40];
    // %g honours LC_NUMERIC; the library never calls setlocale, so this is "C".
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_complex(std::ostream& out, std::complex<double> z) {
    out << format_real(z.real()) << ',' << format_real(z.imag());
}

}  // namespace bergman::csv
