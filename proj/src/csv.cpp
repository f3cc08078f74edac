#include "slret/csv.hpp"

#include <cstdio>

namespace slret {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace slret
