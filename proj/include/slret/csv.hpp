#pragma once

#include <string>

namespace slret {

/// 17-significant-digit text form; round-trips doubles exactly and keeps
/// CSV output byte-stable across runs.
std::string fmt_double(double v);

}  // namespace slret
