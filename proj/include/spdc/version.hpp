#ifndef SPDC_VERSION_HPP
#define SPDC_VERSION_HPP

namespace spdc {
inline constexpr const char* tool_version = "0.1.0";
}

#endif
