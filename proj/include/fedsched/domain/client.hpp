#pragma once

#include <string>

#include "fedsched/domain/attributes.hpp"
#include "fedsched/util/time.hpp"

namespace fedsched {

// An edge client as the control plane sees it. Private attributes never leave
// the client side; they ride along here only because the simulator plays both
// roles.
struct ClientInfo {
  std::string client_id;
  AttributeMap public_attrs;
  AttributeMap private_attrs;
  TimeMs avail_start = 0;
  TimeMs avail_end = 0;
  double speed = 1.0;      // compute units per second
  double bandwidth = 1.0;  // transfer units per second

  bool valid() const { return avail_start < avail_end && speed > 0 && bandwidth > 0; }
};

}  // namespace fedsched
