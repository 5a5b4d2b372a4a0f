#pragma once

namespace villab::version {

inline constexpr const char* kEngine = "0.1.0";
inline constexpr const char* kCohomology = "0.1.0";
inline constexpr const char* kBundles = "0.1.0";
inline constexpr const char* kConstruction = "0.1.0";
inline constexpr const char* kRankCalculus = "0.1.0";
inline constexpr const char* kEmbeddings = "0.1.0";

}  // namespace villab::version
