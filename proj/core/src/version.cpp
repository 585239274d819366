#include "mfhj/version.hpp"

namespace mfhj {

const char* version() { return MFHJ_VERSION_STRING; }

} // namespace mfhj
