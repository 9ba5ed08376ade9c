#pragma once

#include <string>

namespace fockctx {

// Locale-independent decimal rendering with 15 significant digits, used for
// every CSV/JSON/stdout number so identical runs are byte-identical.
std::string format_double(double value);

}  // namespace fockctx
