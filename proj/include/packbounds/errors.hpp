#pragma once

#include <stdexcept>
#include <string>

namespace packbounds {

/// A numeric procedure (quadrature, root search, k-search, LP) failed to
/// reach its tolerance. `where` names the operation, `detail` the reason.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(std::string where, std::string detail)
      : std::runtime_error(where + ": " + detail),
        where_(std::move(where)),
        detail_(std::move(detail)) {}

  const std::string& where() const noexcept { return where_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string where_;
  std::string detail_;
};

}  // namespace packbounds
