#ifndef SYNSQ_VERSION_HPP
#define SYNSQ_VERSION_HPP

namespace synsq {

inline constexpr const char* kVersionTag = "synsq 0.1.0";

}  // namespace synsq

#endif  // SYNSQ_VERSION_HPP
