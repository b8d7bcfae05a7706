#ifndef TEMPO_ERRORS_HPP_
#define TEMPO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tempo {

/* malformed configs, specifications or artifact files; maps to exit code 2 */
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/* non-finite state encountered during numerical integration */
class IntegrationOverflowError : public std::runtime_error {
 public:
  explicit IntegrationOverflowError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tempo

#endif /* TEMPO_ERRORS_HPP_ */
