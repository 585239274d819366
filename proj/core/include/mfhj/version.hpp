#pragma once

namespace mfhj {

const char* version();

} // namespace mfhj
