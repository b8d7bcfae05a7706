#ifndef TEMPO_VERSION_HPP_
#define TEMPO_VERSION_HPP_

namespace tempo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tempo

#endif /* TEMPO_VERSION_HPP_ */
