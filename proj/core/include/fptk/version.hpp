#ifndef FPTK_VERSION_HPP
#define FPTK_VERSION_HPP

namespace fptk {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace fptk

#endif  // FPTK_VERSION_HPP
