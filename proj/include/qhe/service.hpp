#pragma once

#include <string>

namespace qhe {

// Handle to the remote addition service. Implementations take a canonical
// request document and return the canonical response document, throwing
// ProtocolError when the exchange fails.
class AdditionService {
 public:
  virtual ~AdditionService() = default;
  virtual std::string process(const std::string& request_document) = 0;
};

}  // namespace qhe
