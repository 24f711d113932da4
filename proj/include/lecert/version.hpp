#ifndef LECERT_VERSION_HPP
#define LECERT_VERSION_HPP

namespace lecert {

inline constexpr const char* kVersion = "0.1.0";

}   // namespace lecert

#endif
