#ifndef RES2D_VERSION_HPP
#define RES2D_VERSION_HPP

namespace res2d
{

inline constexpr const char *kVersion = "0.1.0";

} // namespace res2d

#endif
